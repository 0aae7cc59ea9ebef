"""Benchmark harness: cost-vs-connectivity tradeoff data over a corpus.

One CSV row per (instance, mode).  The cost/LP ratio is compared against
the mode's guarantee exactly (rationals) before decimal rendering;
per-instance failures are recorded and the harness keeps going.
"""

from __future__ import annotations

import time
from fractions import Fraction
from pathlib import Path

from . import rounding
from .certify import CertificationError
from .instances import ParseError, parse_instance
from .lp import LpInfeasible

CSV_HEADER = ("instance,mode,n,m,k,lp,cost,ratio,bound,within_bound,"
              "connectivity,iterations,seconds,status")


def _ratio_decimal(num: Fraction, digits: int = 6) -> str:
    scaled = num * 10 ** digits
    return f"{scaled.numerator / scaled.denominator / 10 ** digits:.{digits}f}"


def bench_row(path: Path, mode: str, seed: int) -> str:
    from .cli import frac_str, guarantee, run_solver  # local to avoid a cycle
    name = path.name
    try:
        inst = parse_instance(path.read_text())
    except ParseError as exc:
        return f"{name},{mode},,,,,,,,,,,,parse-error: {exc}"
    n, m, k = inst.graph.n, inst.graph.m, inst.k
    start = time.perf_counter()
    try:
        sol, trace = run_solver(mode, inst, certify_flag=None, seed=seed,
                                exact_sep=False, max_iters=None)
    except (rounding.InfeasibleInstance, LpInfeasible):
        return f"{name},{mode},{n},{m},{k},,,,,,,,,infeasible"
    except CertificationError as exc:
        first = str(exc).splitlines()[0]
        return f"{name},{mode},{n},{m},{k},,,,,,,,,certification-failure: {first}"
    seconds = time.perf_counter() - start
    target, factor = guarantee(mode, k)
    ratio = sol.cost / sol.lp_value if sol.lp_value else Fraction(0)
    within = ratio <= factor  # exact rational comparison
    return ",".join([
        name, mode, str(n), str(m), str(k),
        frac_str(sol.lp_value), frac_str(sol.cost),
        _ratio_decimal(ratio), frac_str(factor), str(within).lower(),
        str(sol.connectivity), str(len(trace.iterations)),
        f"{seconds:.3f}", "ok",
    ])


def bench_directory(directory: Path, modes: list[str], seed: int = 0) -> str:
    lines = [CSV_HEADER]
    for path in sorted(directory.glob("*")):
        if not path.is_file():
            continue
        for mode in modes:
            lines.append(bench_row(path, mode, seed))
    return "\n".join(lines) + "\n"
