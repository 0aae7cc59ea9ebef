"""Command-line entry points.

    kecss run   --mode {ecss,ecss15,ecsm,md-ecss,md-ecsm,oracle,certify} ...
    kecss gen   --kind {random,complete,cycle,prism-k3,prism-hub-k6} ...
    kecss bench --dir DIR --out CSV

Exit codes: 0 success, 1 infeasible instance, 2 parse error,
3 certification/verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bench as benchmod
from . import certify as certmod
from . import rounding
from .graphs import edge_connectivity
from .instances import GENERATOR_KINDS, Instance, ParseError, emit_instance, gen, parse_instance
from .lp import LpInfeasible

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_CERTIFY = 3

RUN_MODES = ("ecss", "ecss15", "ecsm", "md-ecss", "md-ecsm", "oracle", "certify")


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def solution_json(sol: rounding.Solution) -> str:
    payload = {
        "mode": sol.mode,
        "k": sol.k,
        "cost": frac_str(sol.cost),
        "lp": frac_str(sol.lp_value),
        "connectivity": sol.connectivity,
        "edges": [{"id": e, "mult": m} for e, m in sorted(sol.multiplicity.items())],
    }
    return json.dumps(payload) + "\n"


def trace_jsonl(trace: rounding.RoundingTrace) -> str:
    lines = []
    for rec in trace.iterations:
        lines.append(json.dumps({
            "iter": rec.index,
            "lp": frac_str(rec.lp_value),
            "picked": rec.picked,
            "frac_support": rec.frac_support,
            "dropped_witnesses": [sorted(s) for s in rec.dropped_witnesses],
        }))
    return "\n".join(lines) + ("\n" if lines else "")


def run_solver(mode: str, inst: Instance, *, certify_flag: bool | None,
               seed: int, exact_sep: bool, max_iters: int | None
               ) -> tuple[rounding.Solution, rounding.RoundingTrace]:
    kwargs = dict(certify=certify_flag, seed=seed, exact_separation=exact_sep,
                  max_iterations=max_iters)
    if mode == "ecss":
        return rounding.kecss(inst.graph, inst.k, **kwargs)
    if mode == "ecss15":
        return rounding.bicriteria(inst.graph, inst.k, **kwargs)
    if mode == "ecsm":
        return rounding.kecsm(inst.graph, inst.k, **kwargs)
    lower, upper = inst.degree_arrays()
    if mode == "md-ecss":
        return rounding.md_kecss(inst.graph, inst.k, lower, upper, **kwargs)
    if mode == "md-ecsm":
        return rounding.md_kecsm(inst.graph, inst.k, lower, upper, **kwargs)
    raise ValueError(f"unknown solver mode {mode}")


def guarantee(mode: str, k: int) -> tuple[int, Fraction]:
    """(connectivity target, cost factor vs the recorded LP value)."""
    if mode == "ecss":
        return (k - 2 if k % 2 == 0 else k - 3), Fraction(1)
    if mode == "ecss15":
        return k - 1, Fraction(3, 2)
    if mode == "ecsm":
        return k, rounding.approximation_factor(k)
    if mode == "md-ecss":
        return (k - 2 if k % 2 == 0 else k - 3), Fraction(1)
    if mode == "md-ecsm":
        return k, rounding.approximation_factor(k)
    raise ValueError(mode)


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        inst = parse_instance(Path(args.input).read_text())
    except (ParseError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.k is not None:
        inst = Instance(inst.graph, args.k, inst.bounds)

    if args.mode == "oracle":
        return _cmd_oracle(inst)
    if args.mode == "certify":
        return _cmd_certify(inst, args)

    try:
        sol, trace = run_solver(args.mode, inst,
                                certify_flag=True if args.certify else None,
                                seed=args.seed, exact_sep=args.exact_sep,
                                max_iters=args.max_iters)
    except (rounding.InfeasibleInstance, LpInfeasible) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except certmod.CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFY
    except RuntimeError as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.solution:
        Path(args.solution).write_text(solution_json(sol))
    else:
        sys.stdout.write(solution_json(sol))
    if args.trace:
        Path(args.trace).write_text(trace_jsonl(trace))
    return EXIT_OK


def _cmd_oracle(inst: Instance) -> int:
    """Print the brute-force integer optimum and the materialized LP value."""
    gr = inst.graph
    out = {}
    try:
        lp_opt = certmod.full_cut_lp(gr, inst.k, "ecss")
        out["lp"] = frac_str(lp_opt.value)
    except LpInfeasible:
        out["lp"] = "infeasible"
    except certmod.CapacityError as exc:
        out["lp"] = f"skipped ({exc})"
    try:
        value, _ = certmod.brute_force_opt(gr, inst.k, "ecss")
        out["opt"] = frac_str(value)
    except LpInfeasible:
        out["opt"] = "infeasible"
    except certmod.CapacityError as exc:
        out["opt"] = f"skipped ({exc})"
    print(json.dumps(out))
    return EXIT_OK


def _cmd_certify(inst: Instance, args: argparse.Namespace) -> int:
    """Re-verify a solution file against its own claims and mode bound."""
    if not args.solution:
        print("certify mode needs --solution", file=sys.stderr)
        return EXIT_PARSE
    try:
        payload = json.loads(Path(args.solution).read_text())
        mode = payload["mode"]
        k = int(payload["k"])
        cost = parse_frac(payload["cost"])
        lp_value = parse_frac(payload["lp"])
        claimed_conn = int(payload["connectivity"])
        mult = {int(rec["id"]): int(rec["mult"]) for rec in payload["edges"]}
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"parse error in solution file: {exc}", file=sys.stderr)
        return EXIT_PARSE
    failures = []
    real_cost = inst.graph.cost_of(mult)
    if real_cost != cost:
        failures.append(f"recomputed cost {real_cost} != claimed {cost}")
    conn = edge_connectivity(inst.graph, mult) if mult else 0
    if conn != claimed_conn:
        failures.append(f"recomputed connectivity {conn} != claimed {claimed_conn}")
    if mode == "ecss" and any(rec > 1 for rec in mult.values()):
        failures.append("subgraph solution uses an edge more than once")
    # the solution file does not record which solver produced it, so hold
    # it to the weakest guarantee of its mode family
    if mode == "ecss":
        target = k - 2 if k % 2 == 0 else k - 3
        factor = Fraction(3, 2)
    else:
        target, factor = k, rounding.approximation_factor(k)
    if conn < target:
        failures.append(f"connectivity {conn} below the mode target {target}")
    if real_cost > factor * lp_value:
        failures.append(f"cost {real_cost} above {factor} * lp {lp_value}")
    if failures:
        for f in failures:
            print(f"certify: {f}", file=sys.stderr)
        return EXIT_CERTIFY
    print("certified ok")
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        inst = gen(args.kind, seed=args.seed, n=args.n, p=args.p,
                   cost_min=args.cost_min, cost_max=args.cost_max, k=args.k,
                   cost=args.cost,
                   ensure_connectivity=args.ensure_connectivity)
    except ValueError as exc:
        print(f"invalid generator parameters: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = emit_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    modes = args.modes.split(",") if args.modes else ["ecss"]
    for m in modes:
        if m not in ("ecss", "ecss15", "ecsm", "md-ecss", "md-ecsm"):
            print(f"unknown bench mode {m}", file=sys.stderr)
            return EXIT_PARSE
    csv_text = benchmod.bench_directory(Path(args.dir), modes, seed=args.seed)
    Path(args.out).write_text(csv_text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kecss")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="solve an instance")
    p_run.add_argument("--mode", choices=RUN_MODES, required=True)
    p_run.add_argument("--input", required=True)
    p_run.add_argument("--k", type=int, default=None,
                       help="override the instance header k")
    p_run.add_argument("--solution", default=None, help="solution JSON path")
    p_run.add_argument("--trace", default=None, help="trace JSON-lines path")
    p_run.add_argument("--certify", action="store_true",
                       help="force inline structural certification")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--exact-sep", dest="exact_sep", action="store_true",
                       help="use the exhaustive separation oracle")
    p_run.add_argument("--max-iters", dest="max_iters", type=int, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_gen = sub.add_parser("gen", help="generate an instance")
    p_gen.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--n", type=int, default=8)
    p_gen.add_argument("--p", type=float, default=0.6)
    p_gen.add_argument("--k", type=int, default=4)
    p_gen.add_argument("--cost", type=int, default=1)
    p_gen.add_argument("--cost-min", dest="cost_min", type=int, default=1)
    p_gen.add_argument("--cost-max", dest="cost_max", type=int, default=10)
    p_gen.add_argument("--ensure-connectivity", dest="ensure_connectivity",
                       type=int, default=None)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="run a directory of instances")
    p_bench.add_argument("--dir", required=True)
    p_bench.add_argument("--out", required=True)
    p_bench.add_argument("--modes", default="ecss")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
