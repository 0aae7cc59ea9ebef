"""Certification layer: solution verification and structural checks.

Everything here is an independent check on the rounding pipeline.  The
laminar-basis extraction, the uncrossing witnesses, and the
small-boundary member are existence statements that hold for every
extreme point the solvers produce; a failure is treated as an
implementation bug and raised as CertificationError with enough state to
reproduce it.  The brute-force integer optimum and the fully
materialized cut LP are reference oracles for the solver outputs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import lp as lpmod
from .graphs import (CapacityError, Multigraph, mask_vertices, min_cut,
                     vertex_mask)
from .lp import LpInfeasible
from .requirements import DegreeState, Requirement

TIGHT_SET_VERTEX_LIMIT = 16
FULL_LP_VERTEX_LIMIT = 12
BRUTE_ECSS_EDGE_LIMIT = 18
BRUTE_ECSM_EDGE_LIMIT = 10


class CertificationError(AssertionError):
    """A structural guarantee failed; carries a reproducer dump."""

    def __init__(self, message: str, dump: str | None = None):
        super().__init__(message if dump is None else f"{message}\n{dump}")
        self.dump = dump


def reproducer_dump(graph: Multigraph, req: Requirement | None,
                    x: Mapping[int, Fraction] | None) -> str:
    """Instance text plus a JSON block of the LP point, rationals as p/q."""
    lines = [f"p kecss {graph.n} {graph.m} {req.k if req else 0}"]
    for e in graph.edges:
        lines.append(f"e {e.u} {e.v} {e.cost}")
    payload = {}
    if x is not None:
        payload["point"] = {str(e): f"{v.numerator}/{v.denominator}"
                            for e, v in sorted(x.items())}
    if req is not None:
        payload["picked"] = {str(e): m for e, m in sorted(req.picked.items())}
        payload["threshold"] = req.threshold
    return "\n".join(lines) + "\n" + json.dumps(payload, sort_keys=True)


# -- solution verification -------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    connectivity: int
    cost: Fraction
    failures: list[str]
    witness_cut: frozenset[int] | None = None
    degree_violations: list[tuple[int, int, Fraction, Fraction]] | None = None


def verify(graph: Multigraph, multiplicity: Mapping[int, int],
           connectivity_target: int, cost_bound: Fraction | None,
           degree_window: Mapping[int, tuple[Fraction, Fraction]] | None = None,
           ecss_mode: bool = False) -> VerifyReport:
    """Check connectivity, exact cost bound, and optional degree windows."""
    failures: list[str] = []
    witness = None
    mult = {e: m for e, m in multiplicity.items() if m}
    for e, m in mult.items():
        if m < 0 or not 0 <= e < graph.m:
            failures.append(f"bad multiplicity {m} on edge {e}")
        if ecss_mode and m > 1:
            failures.append(f"edge {e} has multiplicity {m} in subgraph mode")
    value, side = min_cut(graph, {e: Fraction(mult.get(e, 0))
                                  for e in range(graph.m)})
    conn = int(value)
    if conn < connectivity_target:
        witness = side
        failures.append(f"connectivity {conn} below target {connectivity_target} "
                        f"(cut side {sorted(side)})")
    cost = graph.cost_of(mult)
    if cost_bound is not None and cost > cost_bound:
        failures.append(f"cost {cost} exceeds bound {cost_bound}")
    degree_violations = []
    if degree_window is not None:
        for v, (lo, hi) in sorted(degree_window.items()):
            deg = sum(m for e, m in mult.items()
                      if v in (graph.edges[e].u, graph.edges[e].v))
            if not lo <= deg <= hi:
                degree_violations.append((v, deg, lo, hi))
                failures.append(f"degree {deg} of vertex {v} outside [{lo}, {hi}]")
    return VerifyReport(not failures, conn, cost, failures, witness,
                        degree_violations or None)


# -- tight sets and the laminar basis ---------------------------------------

def _scaled_point(x: Mapping[int, Fraction]) -> tuple[dict[int, int], int]:
    denom = 1
    for v in x.values():
        denom = math.lcm(denom, Fraction(v).denominator)
    return {e: int(Fraction(v) * denom) for e, v in x.items()}, denom


def _mask_x_sum(graph: Multigraph, scaled: Mapping[int, int], mask: int) -> int:
    total = 0
    for e, w in scaled.items():
        edge = graph.edges[e]
        if (mask >> (edge.u - 1) & 1) != (mask >> (edge.v - 1) & 1):
            total += w
    return total


def tight_sets(x: Mapping[int, Fraction], req: Requirement) -> list[frozenset[int]]:
    """All active canonical cut sides with x(boundary) equal to the residual."""
    n = req.graph.n
    if n > TIGHT_SET_VERTEX_LIMIT:
        raise CapacityError(f"n={n} too large for tight-set enumeration")
    scaled, denom = _scaled_point(x)
    out = []
    for mask_rest in range(1, 1 << (n - 1)):
        mask = mask_rest << 1
        fres = req.residual_mask(mask)
        if fres < req.threshold:
            continue
        if _mask_x_sum(req.graph, scaled, mask) == fres * denom:
            out.append(mask_vertices(mask, n))
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


class _IntRankTracker:
    """Incremental rank of integer row vectors over the rationals."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def _reduce(self, vec: dict[int, int]) -> dict[int, int]:
        v = {c: val for c, val in vec.items() if val}
        while v:
            col = min(v)
            if col not in self.pivots:
                break
            piv = self.pivots[col]
            a, b = piv[col], v[col]
            for c2 in set(v) | set(piv):
                nv = v.get(c2, 0) * a - piv.get(c2, 0) * b
                if nv:
                    v[c2] = nv
                else:
                    v.pop(c2, None)
        if v:
            g = math.gcd(*v.values())
            if g > 1:
                v = {c: val // g for c, val in v.items()}
        return v

    def independent(self, vec: dict[int, int]) -> bool:
        return bool(self._reduce(vec))

    def add(self, vec: dict[int, int]) -> bool:
        v = self._reduce(vec)
        if not v:
            return False
        self.pivots[min(v)] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _laminar_compatible(a: frozenset, b: frozenset) -> bool:
    return a <= b or b <= a or not (a & b)


def _incidence(graph: Multigraph, side: frozenset[int],
               edge_ids: Sequence[int]) -> dict[int, int]:
    mask = vertex_mask(side)
    vec = {}
    for pos, e in enumerate(edge_ids):
        edge = graph.edges[e]
        if (mask >> (edge.u - 1) & 1) != (mask >> (edge.v - 1) & 1):
            vec[pos] = 1
    return vec


@dataclass(frozen=True)
class LaminarBasis:
    """Laminar tight family plus degree-tight vertices spanning the
    fractional support: one member per fractional edge, with linearly
    independent boundary rows over the fractional edges."""
    sets: tuple[frozenset[int], ...]
    degree_vertices: tuple[int, ...]
    frac_edges: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]  # incidence over frac_edges, sets then vertices

    def members(self) -> list[frozenset[int]]:
        return list(self.sets) + [frozenset({v}) for v in self.degree_vertices]

    def size(self) -> int:
        return len(self.sets) + len(self.degree_vertices)


def extract_laminar(x: Mapping[int, Fraction], req: Requirement,
                    degree_state: DegreeState | None = None) -> LaminarBasis:
    """Greedy laminar basis for an extreme point of the residual system.

    Grows a maximal laminar family of active tight sets with independent
    boundary rows over the support, appends degree-tight vertices keeping
    independence, then selects exactly |F| members whose rows over the
    fractional edges F are independent.  Existence is guaranteed for
    vertices of the residual system; failure raises CertificationError.
    """
    graph = req.graph
    n = graph.n
    if degree_state is None:
        degree_state = req.degree
    support = sorted(e for e, v in x.items() if v > 0)
    frac = tuple(sorted(e for e, v in x.items() if 0 < v < 1))
    scaled, denom = _scaled_point(x)

    canonical = tight_sets(x, req)
    full = frozenset(range(1, n + 1))
    candidates: set[frozenset[int]] = set()
    for s in canonical:
        candidates.add(s)
        candidates.add(full - s)
    ordered = sorted(candidates, key=lambda s: (len(s), tuple(sorted(s))))

    tracker = _IntRankTracker()
    family: list[frozenset[int]] = []
    for s in ordered:
        if all(_laminar_compatible(s, t) for t in family):
            if tracker.add(_incidence(graph, s, support)):
                family.append(s)

    degree_vertices: list[int] = []
    if degree_state is not None:
        for v in sorted(degree_state.active):
            deg_mass = sum((Fraction(x[e]) for e in x
                            if v in (graph.edges[e].u, graph.edges[e].v)),
                           Fraction(0))
            lo = degree_state.lower[v - 1]
            hi = degree_state.upper[v - 1]
            if deg_mass < 1 or deg_mass not in (lo, hi):
                continue
            if tracker.add(_incidence(graph, frozenset({v}), support)):
                degree_vertices.append(v)

    # select |F| members with independent rows over the fractional columns
    ftracker = _IntRankTracker()
    chosen_sets: list[frozenset[int]] = []
    chosen_vertices: list[int] = []
    rows: list[tuple[int, ...]] = []

    def frow(side: frozenset[int]) -> dict[int, int]:
        return _incidence(graph, side, frac)

    for s in family:
        if ftracker.rank == len(frac):
            break
        vec = frow(s)
        if vec and ftracker.add(vec):
            chosen_sets.append(s)
            rows.append(tuple(1 if i in vec else 0 for i in range(len(frac))))
    for v in degree_vertices:
        if ftracker.rank == len(frac):
            break
        vec = frow(frozenset({v}))
        if vec and ftracker.add(vec):
            chosen_vertices.append(v)
            rows.append(tuple(1 if i in vec else 0 for i in range(len(frac))))

    if ftracker.rank != len(frac):
        raise CertificationError(
            f"no laminar basis of size |F|={len(frac)} found (got {ftracker.rank}); "
            "this falsifies the laminar-basis guarantee",
            reproducer_dump(graph, req, x))
    basis = LaminarBasis(tuple(chosen_sets), tuple(chosen_vertices), frac,
                         tuple(rows))
    _validate_basis(basis, x, req, degree_state, scaled, denom)
    return basis


def _validate_basis(basis: LaminarBasis, x: Mapping[int, Fraction],
                    req: Requirement, degree_state: DegreeState | None,
                    scaled: Mapping[int, int], denom: int) -> None:
    graph = req.graph
    for a, b in itertools.combinations(basis.sets, 2):
        if not _laminar_compatible(a, b):
            raise CertificationError(f"family not laminar: {sorted(a)} / {sorted(b)}",
                                     reproducer_dump(graph, req, x))
    if basis.size() != len(basis.frac_edges):
        raise CertificationError("|family| + |degree vertices| != |F|",
                                 reproducer_dump(graph, req, x))
    tracker = _IntRankTracker()
    for r in basis.rows:
        if not tracker.add({i: c for i, c in enumerate(r) if c}):
            raise CertificationError("basis rows not linearly independent",
                                     reproducer_dump(graph, req, x))
    for s in basis.sets:
        mask = vertex_mask(s)
        fres = req.residual_mask(mask)
        if fres < req.threshold or \
           _mask_x_sum(graph, scaled, mask) != fres * denom:
            raise CertificationError(f"member {sorted(s)} not an active tight set",
                                     reproducer_dump(graph, req, x))
    for v in basis.degree_vertices:
        if degree_state is None or v not in degree_state.active:
            raise CertificationError(f"vertex {v} not degree-constrained",
                                     reproducer_dump(graph, req, x))
        deg_mass = sum((Fraction(x[e]) for e in x
                        if v in (graph.edges[e].u, graph.edges[e].v)), Fraction(0))
        lo = degree_state.lower[v - 1]
        hi = degree_state.upper[v - 1]
        if deg_mass < 1 or deg_mass not in (lo, hi):
            raise CertificationError(f"vertex {v} not tight with mass >= 1",
                                     reproducer_dump(graph, req, x))


# -- uncrossing witnesses ----------------------------------------------------

@dataclass(frozen=True)
class UncrossWitness:
    a: frozenset[int]
    b: frozenset[int]
    case: str
    family: tuple[frozenset[int], ...]
    theta: Fraction
    gamma: Fraction
    alpha: Fraction | None
    identity: str


def _class_mass(x: Mapping[int, Fraction], graph: Multigraph,
                left: frozenset[int], right: frozenset[int]) -> Fraction:
    total = Fraction(0)
    for e, val in x.items():
        u, v = graph.edges[e].u, graph.edges[e].v
        if (u in left and v in right) or (v in left and u in right):
            total += Fraction(val)
    return total


def uncross_witness(a: frozenset[int], b: frozenset[int],
                    x: Mapping[int, Fraction], req: Requirement) -> UncrossWitness:
    """Verified replacement family for two weakly-crossing active tight sets.

    Checks the incidence identity coordinatewise over the support and the
    vanishing of the cross-class masses the identity requires: theta for
    the intersection/union case, gamma for the difference case, and all
    of theta, gamma, alpha when only a mixed pair of corner sets is
    active.  The replacement family is laminar, active, tight, and spans
    the boundary row of b together with a.
    """
    graph = req.graph
    a, b = frozenset(a), frozenset(b)
    full = frozenset(range(1, graph.n + 1))
    inter, union = a & b, a | b
    amb, bma = a - b, b - a
    if not inter or not amb or not bma:
        raise ValueError("sets must weakly cross")
    scaled, denom = _scaled_point(x)

    def xsum(side: frozenset[int]) -> Fraction:
        return Fraction(_mask_x_sum(graph, scaled, vertex_mask(side)), denom)

    def fres(side: frozenset[int]) -> int:
        return req.residual_mask(vertex_mask(side))

    def require_tight(side: frozenset[int], label: str) -> None:
        if xsum(side) != fres(side):
            raise CertificationError(
                f"{label} {sorted(side)} expected tight but x(delta)={xsum(side)}"
                f" != {fres(side)}", reproducer_dump(graph, req, x))

    for s, name in ((a, "input A"), (b, "input B")):
        if fres(s) < req.threshold:
            raise ValueError(f"{name} is not active")
        require_tight(s, name)

    theta = _class_mass(x, graph, amb, bma)
    gamma = _class_mass(x, graph, inter, full - union) if union != full else Fraction(0)

    support = sorted(e for e, v in x.items() if v > 0)

    def verify_identity(combo: list[tuple[int, frozenset[int]]],
                        target: tuple[int, frozenset[int]], text: str) -> None:
        for e in support:
            edge = graph.edges[e]
            def crosses(side: frozenset[int]) -> int:
                return 1 if (edge.u in side) != (edge.v in side) else 0
            lhs = target[0] * crosses(target[1])
            rhs = sum(c * crosses(s) for c, s in combo)
            if lhs != rhs:
                raise CertificationError(
                    f"incidence identity {text} fails on edge {e}",
                    reproducer_dump(graph, req, x))

    if union == full:
        # weakly crossing but not crossing: A-B is the complement of B
        require_tight(amb, "complement A-B")
        verify_identity([(1, amb)], (1, b), "chi(B) = chi(A-B)")
        return UncrossWitness(a, b, "complement", (a, amb), theta, gamma, None,
                              "chi(B) = chi(A-B)")

    active = {"inter": fres(inter) >= req.threshold,
              "union": fres(union) >= req.threshold,
              "amb": fres(amb) >= req.threshold,
              "bma": fres(bma) >= req.threshold}
    if not (active["inter"] or active["union"]) or not (active["amb"] or active["bma"]):
        raise CertificationError(
            "corner activity pattern contradicts two-way uncrossability",
            reproducer_dump(graph, req, x))

    def vanish(value: Fraction, label: str) -> None:
        if value != 0:
            raise CertificationError(f"{label} = {value} expected 0",
                                     reproducer_dump(graph, req, x))

    if active["inter"] and active["union"]:
        require_tight(inter, "A&B")
        require_tight(union, "A|B")
        vanish(theta, "theta")
        verify_identity([(1, inter), (1, union), (-1, a)], (1, b),
                        "chi(A)+chi(B) = chi(A&B)+chi(A|B)")
        return UncrossWitness(a, b, "intersection_union", (a, inter, union),
                              theta, gamma, None,
                              "chi(A)+chi(B) = chi(A&B)+chi(A|B)")
    if active["amb"] and active["bma"]:
        require_tight(amb, "A-B")
        require_tight(bma, "B-A")
        vanish(gamma, "gamma")
        verify_identity([(1, amb), (1, bma), (-1, a)], (1, b),
                        "chi(A)+chi(B) = chi(A-B)+chi(B-A)")
        return UncrossWitness(a, b, "difference", (a, amb, bma),
                              theta, gamma, None,
                              "chi(A)+chi(B) = chi(A-B)+chi(B-A)")

    # mixed cases: all four corners tight and theta = gamma = alpha = 0
    for side, label in ((inter, "A&B"), (union, "A|B"), (amb, "A-B"), (bma, "B-A")):
        require_tight(side, label)
    vanish(theta, "theta")
    vanish(gamma, "gamma")
    outside = full - union
    if active["union"] and active["amb"]:
        alpha = _class_mass(x, graph, inter, bma)
        vanish(alpha, "alpha")
        text = "chi(B) = chi(A-B)+chi(A|B)-2chi(A)"
        verify_identity([(1, amb), (1, union), (-2, a)], (1, b), text)
        return UncrossWitness(a, b, "mixed_union_diff", (a, amb, union),
                              theta, gamma, alpha, text)
    if active["union"] and active["bma"]:
        alpha = _class_mass(x, graph, inter, amb)
        vanish(alpha, "alpha")
        text = "chi(A) = chi(B-A)+chi(A|B)-2chi(B)"
        verify_identity([(1, bma), (1, union), (-2, b)], (1, a), text)
        return UncrossWitness(a, b, "mixed_union_codiff", (a, bma, union),
                              theta, gamma, alpha, text)
    if active["inter"] and active["bma"]:
        alpha = _class_mass(x, graph, amb, outside)
        vanish(alpha, "alpha")
        text = "chi(B) = chi(A&B)+chi(B-A)-2chi(A)"
        verify_identity([(1, inter), (1, bma), (-2, a)], (1, b), text)
        return UncrossWitness(a, b, "mixed_inter_codiff", (a, inter, bma),
                              theta, gamma, alpha, text)
    alpha = _class_mass(x, graph, bma, outside)
    vanish(alpha, "alpha")
    text = "chi(A) = chi(A&B)+chi(A-B)-2chi(B)"
    verify_identity([(1, inter), (1, amb), (-2, b)], (1, a), text)
    return UncrossWitness(a, b, "mixed_inter_diff", (a, inter, amb),
                          theta, gamma, alpha, text)


def small_boundary_set(basis: LaminarBasis,
                       z: Mapping[int, Fraction]) -> frozenset[int]:
    """A basis member with at most 3 fractional boundary edges.

    Requires z strictly fractional on F with integral boundary mass on
    every member; the returned member then has z-mass at most 2.  Absence
    of such a member would falsify the token-counting bound, so it raises
    CertificationError.
    """
    fset = set(basis.frac_edges)
    if set(z.keys()) != fset:
        raise ValueError("z must be defined exactly on the fractional edges")
    for e, v in z.items():
        if not 0 < Fraction(v) < 1:
            raise ValueError(f"z[{e}]={v} not strictly fractional")
    members = list(basis.sets) + [frozenset({v}) for v in basis.degree_vertices]
    for row, member in zip(basis.rows, members):
        mass = sum((Fraction(z[basis.frac_edges[i]]) for i, c in enumerate(row) if c),
                   Fraction(0))
        if mass.denominator != 1:
            raise ValueError(f"member {sorted(member)} has non-integral z-mass {mass}")
    for row, member in zip(basis.rows, members):
        count = sum(row)
        if count <= 3:
            mass = sum((Fraction(z[basis.frac_edges[i]])
                        for i, c in enumerate(row) if c), Fraction(0))
            if mass > 2:
                raise CertificationError(
                    f"member {sorted(member)} has {count} fractional edges but "
                    f"mass {mass} > 2")
            return member
    raise CertificationError(
        "no member with at most 3 fractional boundary edges; this falsifies "
        "the token-counting bound")


# -- reference oracles -------------------------------------------------------

def brute_force_opt(graph: Multigraph, k: int,
                    mode: str) -> tuple[Fraction, dict[int, int]]:
    """Exact integer optimum by enumeration; the independent cost oracle."""
    if mode not in ("ecss", "ecsm"):
        raise ValueError("mode must be 'ecss' or 'ecsm'")
    if k < 1:
        raise ValueError("k must be at least 1")
    if mode == "ecss":
        return _brute_ecss(graph, k)
    return _brute_ecsm(graph, k)


def _feasible_mult(graph: Multigraph, mult: Mapping[int, int], k: int) -> bool:
    n = graph.n
    for mask_rest in range(1, 1 << (n - 1)):
        mask = mask_rest << 1
        total = 0
        for e, m in mult.items():
            edge = graph.edges[e]
            if (mask >> (edge.u - 1) & 1) != (mask >> (edge.v - 1) & 1):
                total += m
        if total < k:
            return False
    return True


def _brute_ecss(graph: Multigraph, k: int) -> tuple[Fraction, dict[int, int]]:
    m = graph.m
    if m > BRUTE_ECSS_EDGE_LIMIT:
        raise CapacityError(f"|E|={m} exceeds subgraph enumeration limit")
    n = graph.n
    min_edges = math.ceil(k * n / 2)
    best: tuple[Fraction, int] | None = None
    for mask in range(1 << m):
        if mask.bit_count() < min_edges:
            continue
        deg = [0] * (n + 1)
        cost = Fraction(0)
        rest = mask
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            deg[graph.edges[e].u] += 1
            deg[graph.edges[e].v] += 1
            cost += graph.edges[e].cost
        if best is not None and cost >= best[0]:
            continue
        if min(deg[1:]) < k:
            continue
        mult = {e: 1 for e in range(m) if mask >> e & 1}
        if _feasible_mult(graph, mult, k):
            best = (cost, mask)
    if best is None:
        raise LpInfeasible(f"no {k}-edge-connected subgraph exists")
    return best[0], {e: 1 for e in range(m) if best[1] >> e & 1}


def _brute_ecsm(graph: Multigraph, k: int) -> tuple[Fraction, dict[int, int]]:
    m = graph.m
    if m > BRUTE_ECSM_EDGE_LIMIT:
        raise CapacityError(f"|E|={m} exceeds multigraph enumeration limit")
    n = graph.n
    masks = [(mask_rest << 1) for mask_rest in range(1, 1 << (n - 1))]
    crossing = [[e.id for e in graph.edges
                 if (mask >> (e.u - 1) & 1) != (mask >> (e.v - 1) & 1)]
                for mask in masks]
    order = sorted(range(m), key=lambda e: -graph.edges[e].cost)
    best_cost: list[Fraction | None] = [None]
    best_mult: list[dict[int, int] | None] = [None]
    mult = [0] * m
    undecided_set = [set(order[i:]) for i in range(m + 1)]

    def dfs(idx: int, cost: Fraction) -> None:
        if best_cost[0] is not None and cost >= best_cost[0]:
            return
        for ci, cut_edges in enumerate(crossing):
            have = sum(mult[e] for e in cut_edges)
            possible = have + k * sum(1 for e in cut_edges
                                      if e in undecided_set[idx])
            if possible < k:
                return
        if idx == m:
            best_cost[0] = cost
            best_mult[0] = {e: mult[e] for e in range(m) if mult[e]}
            return
        e = order[idx]
        for copies in range(0, k + 1):
            mult[e] = copies
            dfs(idx + 1, cost + copies * graph.edges[e].cost)
        mult[e] = 0

    dfs(0, Fraction(0))
    if best_cost[0] is None:
        raise LpInfeasible(f"no {k}-edge-connected multigraph exists")
    assert best_mult[0] is not None
    return best_cost[0], best_mult[0]


def full_cut_lp(graph: Multigraph, k: int, mode: str,
                degree_bounds: tuple[Sequence[int], Sequence[int]] | None = None
                ) -> lpmod.BasicOptimum:
    """Materialized cut LP: one row per partition, solved directly.

    Independent of the lazy loop; used as the LP-value oracle.  Subgraph
    mode bounds variables by 1, multigraph mode leaves them unbounded.
    Degree rows are added for every vertex when bounds are given.
    """
    n = graph.n
    if n > FULL_LP_VERTEX_LIMIT:
        raise CapacityError(f"n={n} too large for the materialized cut LP")
    if mode not in ("ecss", "ecsm"):
        raise ValueError("mode must be 'ecss' or 'ecsm'")
    rows = []
    for mask_rest in range(1, 1 << (n - 1)):
        mask = mask_rest << 1
        coeffs = {e.id: 1 for e in graph.edges
                  if (mask >> (e.u - 1) & 1) != (mask >> (e.v - 1) & 1)}
        rows.append(lpmod.row(coeffs, lpmod.GE, k))
    if degree_bounds is not None:
        lower, upper = degree_bounds
        for v in range(1, n + 1):
            coeffs = {e.id: 1 for e in graph.edges if v in (e.u, e.v)}
            if lower[v - 1] > 0:
                rows.append(lpmod.row(coeffs, lpmod.GE, lower[v - 1]))
            rows.append(lpmod.row(coeffs, lpmod.LE, upper[v - 1]))
    upper_bound: list = [1] * graph.m if mode == "ecss" else [None] * graph.m
    inst = lpmod.instance([e.cost for e in graph.edges], [0] * graph.m,
                          upper_bound, rows)
    return lpmod.solve(inst)


def recheck_vertex(inst: lpmod.LpInstance, opt: lpmod.BasicOptimum) -> None:
    """Independent full-rank check of the tight constraints at the point."""
    nv = inst.num_vars
    vectors: list[list[Fraction]] = []
    for j, side in opt.tight_bounds:
        vec = [Fraction(0)] * nv
        vec[j] = Fraction(1)
        vectors.append(vec)
    for i in opt.tight_rows:
        vec = [Fraction(0)] * nv
        for j, c in inst.rows[i].coeffs.items():
            vec[j] = c
        vectors.append(vec)
    rank = 0
    pivot_cols: list[int] = []
    reduced: list[list[Fraction]] = []
    for vec in vectors:
        v = list(vec)
        for col, rowv in zip(pivot_cols, reduced):
            if v[col] != 0:
                f = v[col] / rowv[col]
                v = [a - f * b for a, b in zip(v, rowv)]
        lead = next((j for j in range(nv) if v[j] != 0), None)
        if lead is not None:
            pivot_cols.append(lead)
            reduced.append(v)
            rank += 1
            if rank == nv:
                break
    if rank != nv:
        raise CertificationError(
            f"tight constraints have rank {rank} < {nv}: not a vertex")
