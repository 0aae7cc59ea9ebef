"""Separation oracles for the residual cut LPs.

Feasibility of a point x over the working edge set E' is equivalent to
every active cut having mixed capacity at least k, where the mixed
capacity charges x_e on working edges and the picked multiplicity on
picked edges.  Inactive (dropped) sets always have mixed capacity at
least k - (threshold - 1), so a global min cut below that window is
automatically an active violated cut; otherwise every violated cut lies
among the cuts of capacity below k, which are enumerated and filtered by
activity.

`separate_fast` is the production oracle; `separate_exact` scans every
partition and is the reference it is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graphs import (CapacityError, cuts_below, mask_vertices, min_cut,
                     scale_capacities, vertex_mask)
from .requirements import Requirement

EXACT_VERTEX_LIMIT = 20


@dataclass(frozen=True)
class Feasible:
    pass


@dataclass(frozen=True)
class Violated:
    side: frozenset[int]
    capacity: Fraction  # mixed capacity of the cut
    requirement: int    # residual requirement of the side
    lhs: Fraction       # x-mass of working edges across the cut

    def __post_init__(self):
        # mixed capacity below k exactly when the x-mass is below the residual
        assert self.lhs < self.requirement


SeparationVerdict = Feasible | Violated


def mixed_capacities(x: Mapping[int, Fraction], req: Requirement) -> dict[int, Fraction]:
    """x_e on working edges, picked multiplicity on picked edges, 0 elsewhere."""
    caps = {e: Fraction(0) for e in range(req.graph.m)}
    for e, val in x.items():
        if not 0 <= e < req.graph.m:
            raise ValueError(f"edge id {e} out of range")
        val = Fraction(val)
        if not 0 <= val <= 1:
            raise ValueError(f"x[{e}]={val} outside [0, 1]")
        if e in req.picked:
            raise ValueError(f"edge {e} is both picked and in the working set")
        caps[e] = val
    for e, mult in req.picked.items():
        caps[e] = Fraction(mult)
    return caps


def _check_fast_preconditions(req: Requirement) -> None:
    if req.threshold == 3:
        if req.k != 2 and req.k < 4:
            raise ValueError("threshold 3 needs k >= 4 (or k = 2, vacuous)")
    else:
        if req.k < 2:
            raise ValueError("threshold 2 needs k >= 2")


def _violated(req: Requirement, side: frozenset[int], capacity: Fraction) -> Violated:
    fres = req.residual(side)
    picked_across = sum(req.picked[e] for e in req.picked
                        if (req.graph.edges[e].u in side) != (req.graph.edges[e].v in side))
    x_mass = Fraction(capacity) - picked_across
    return Violated(side, Fraction(capacity), fres, x_mass)


def separate_fast(x: Mapping[int, Fraction], req: Requirement) -> SeparationVerdict:
    """Min-cut probe plus near-minimum-cut enumeration.

    Returns Feasible, or the violated active cut with the smallest mixed
    capacity (ties broken lexicographically by canonical side).
    """
    _check_fast_preconditions(req)
    if req.threshold == 3 and req.k == 2:
        return Feasible()  # no set can reach the threshold
    caps = mixed_capacities(x, req)
    k = Fraction(req.k)
    window = req.k - (req.threshold - 1)
    value, side = min_cut(req.graph, caps)
    if value < window:
        # a dropped set has capacity >= window, so this side is active
        assert req.in_active_family(side)
        return _violated(req, side, value)
    if value >= k:
        return Feasible()
    candidates = cuts_below(req.graph, caps, k)
    best: tuple[Fraction, tuple[int, ...], frozenset[int]] | None = None
    weights, denom = scale_capacities(req.graph, caps)
    for s in candidates:
        if not req.in_active_family(s):
            continue
        mask = vertex_mask(s)
        w = sum(weights[e.id] for e in req.graph.edges
                if (mask >> (e.u - 1) & 1) != (mask >> (e.v - 1) & 1))
        key = (Fraction(w, denom), tuple(sorted(s)), s)
        if best is None or key[:2] < best[:2]:
            best = key
    if best is None:
        return Feasible()
    return _violated(req, best[2], best[0])


def separate_exact(x: Mapping[int, Fraction], req: Requirement) -> SeparationVerdict:
    """Exhaustive reference oracle: scan all partitions, most violated first."""
    n = req.graph.n
    if n > EXACT_VERTEX_LIMIT:
        raise CapacityError(f"n={n} too large for the exhaustive oracle")
    caps = mixed_capacities(x, req)
    weights, denom = scale_capacities(req.graph, caps)
    k_scaled = req.k * denom
    best: tuple[int, tuple[int, ...], int] | None = None
    for mask_rest in range(1, 1 << (n - 1)):
        mask = mask_rest << 1
        if req.residual_mask(mask) < req.threshold:
            continue
        w = 0
        for e in req.graph.edges:
            if (mask >> (e.u - 1) & 1) != (mask >> (e.v - 1) & 1):
                w += weights[e.id]
        if w < k_scaled:
            side = mask_vertices(mask, n)
            key = (w, tuple(sorted(side)), mask)
            if best is None or key[:2] < best[:2]:
                best = key
    if best is None:
        return Feasible()
    side = mask_vertices(best[2], n)
    return _violated(req, side, Fraction(best[0], denom))
