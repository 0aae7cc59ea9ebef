"""Multigraph representation and exact cut machinery.

Vertices are 1..n.  Edge ids are dense 0..m-1 and parallel edges are kept
as distinct ids; self-loops are rejected.  All cut values are exact
rationals: capacity vectors are scaled to a common integer denominator
internally, so every comparison is integer arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

EXHAUSTIVE_CUT_LIMIT = 20  # above this, cut enumeration needs probabilistic mode


class CapacityError(ValueError):
    """Input too large for an exhaustive routine."""


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    cost: Fraction


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("vertex count must be at least 1")
        for idx, e in enumerate(self.edges):
            if e.id != idx:
                raise ValueError(f"edge ids must be dense 0..m-1, got {e.id} at {idx}")
            if not (1 <= e.u <= self.n and 1 <= e.v <= self.n):
                raise ValueError(f"edge {e.id} endpoint out of range")
            if e.u == e.v:
                raise ValueError(f"edge {e.id} is a self-loop")
            if e.cost < 0:
                raise ValueError(f"edge {e.id} has negative cost")

    @property
    def m(self) -> int:
        return len(self.edges)

    def cost_of(self, multiplicity: Mapping[int, int]) -> Fraction:
        return sum((self.edges[e].cost * m for e, m in multiplicity.items()),
                   Fraction(0))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in (e.u, e.v))


def make_graph(n: int, edges: Iterable[tuple[int, int, int | Fraction]]) -> Multigraph:
    """Build a Multigraph from (u, v, cost) triples; ids assigned in order."""
    built = tuple(Edge(i, u, v, Fraction(c)) for i, (u, v, c) in enumerate(edges))
    return Multigraph(n, built)


def complete_graph(n: int, cost: int | Fraction = 1) -> Multigraph:
    return make_graph(n, [(u, v, cost) for u in range(1, n + 1)
                          for v in range(u + 1, n + 1)])


def cycle_graph(n: int, cost: int | Fraction = 1) -> Multigraph:
    return make_graph(n, [(v, v % n + 1, cost) for v in range(1, n + 1)])


def vertex_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def mask_vertices(mask: int, n: int) -> frozenset[int]:
    return frozenset(v for v in range(1, n + 1) if mask >> (v - 1) & 1)


def canonical_side(side: frozenset[int], n: int) -> frozenset[int]:
    """One representative per cut partition: the side not containing vertex 1."""
    if 1 in side:
        return frozenset(range(1, n + 1)) - side
    return side


def _check_cut_side(graph: Multigraph, side: frozenset[int]) -> None:
    if not side or len(side) >= graph.n:
        raise ValueError("cut side must be a nonempty proper vertex subset")
    for v in side:
        if not 1 <= v <= graph.n:
            raise ValueError(f"vertex {v} out of range")


def boundary(graph: Multigraph, side: Iterable[int],
             restrict: Iterable[int] | None = None) -> frozenset[int]:
    """Edge ids with exactly one endpoint in `side`, restricted to `restrict`."""
    side = frozenset(side)
    _check_cut_side(graph, side)
    if restrict is None:
        pool: Iterable[Edge] = graph.edges
    else:
        ids = set(restrict)
        for e in ids:
            if not 0 <= e < graph.m:
                raise ValueError(f"edge id {e} out of range")
        pool = (graph.edges[e] for e in sorted(ids))
    return frozenset(e.id for e in pool if (e.u in side) != (e.v in side))


def scale_capacities(graph: Multigraph,
                     caps: Mapping[int, Fraction | int]) -> tuple[list[int], int]:
    """Return (integer weights per edge id, common denominator)."""
    if set(caps.keys()) != set(range(graph.m)):
        raise ValueError("capacity vector must be defined on exactly the edge ids")
    fracs = [Fraction(caps[e]) for e in range(graph.m)]
    for e, f in enumerate(fracs):
        if f < 0:
            raise ValueError(f"capacity of edge {e} is negative")
    denom = 1
    for f in fracs:
        denom = math.lcm(denom, f.denominator)
    return [int(f * denom) for f in fracs], denom


def _cut_weight(graph: Multigraph, weights: Sequence[int], mask: int) -> int:
    total = 0
    for e in graph.edges:
        if (mask >> (e.u - 1) & 1) != (mask >> (e.v - 1) & 1):
            total += weights[e.id]
    return total


def min_cut(graph: Multigraph,
            caps: Mapping[int, Fraction | int]) -> tuple[Fraction, frozenset[int]]:
    """Exact global minimum cut (value, canonical side) for rational capacities.

    Deterministic maximum-adjacency (Stoer-Wagner style) contraction over
    integer-scaled weights.
    """
    if graph.n < 2:
        raise ValueError("min cut needs at least 2 vertices")
    weights, denom = scale_capacities(graph, caps)

    # weight matrix over supernodes, each supernode remembers its members
    nodes = list(range(1, graph.n + 1))
    members: dict[int, set[int]] = {v: {v} for v in nodes}
    w: dict[int, dict[int, int]] = {v: {} for v in nodes}
    for e in graph.edges:
        if weights[e.id] == 0:
            continue
        w[e.u][e.v] = w[e.u].get(e.v, 0) + weights[e.id]
        w[e.v][e.u] = w[e.v].get(e.u, 0) + weights[e.id]

    best_value: int | None = None
    best_side: set[int] | None = None
    while len(nodes) > 1:
        # maximum-adjacency ordering; ties broken by node id for determinism
        start = nodes[0]
        in_a = {start}
        key = {v: w[start].get(v, 0) for v in nodes if v != start}
        order = [start]
        while len(in_a) < len(nodes):
            nxt = min(key, key=lambda v: (-key[v], v))
            order.append(nxt)
            in_a.add(nxt)
            del key[nxt]
            for v, wt in w[nxt].items():
                if v not in in_a:
                    key[v] += wt
        t = order[-1]
        s = order[-2]
        phase = sum(w[t].values())
        if best_value is None or phase < best_value:
            best_value = phase
            best_side = set(members[t])
        # merge t into s
        members[s] |= members[t]
        for v, wt in list(w[t].items()):
            if v == s:
                continue
            w[s][v] = w[s].get(v, 0) + wt
            w[v][s] = w[v].get(s, 0) + wt
        for v in w[t]:
            del w[v][t]
        del w[t]
        nodes.remove(t)

    assert best_value is not None and best_side is not None
    side = canonical_side(frozenset(best_side), graph.n)
    return Fraction(best_value, denom), side


def cuts_below(graph: Multigraph, caps: Mapping[int, Fraction | int],
               bound: Fraction | int, probabilistic: bool = False,
               rng: random.Random | None = None,
               trials: int | None = None) -> list[frozenset[int]]:
    """All canonical cut sides with capacity strictly below `bound`.

    Exhaustive over the 2^(n-1)-1 partitions for n <= 20.  Larger graphs
    require probabilistic=True: repeated randomized edge contraction with
    ceil(2 n^4 ln n) trials by default, which may miss cuts with small
    probability.  Output is sorted lexicographically by canonical side.
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    if graph.n < 2:
        raise ValueError("cut enumeration needs at least 2 vertices")
    weights, denom = scale_capacities(graph, caps)
    scaled_bound = bound * denom

    if graph.n <= EXHAUSTIVE_CUT_LIMIT:
        found = []
        for mask_rest in range(1, 1 << (graph.n - 1)):
            mask = mask_rest << 1  # vertex 1 always excluded: canonical side
            if _cut_weight(graph, weights, mask) < scaled_bound:
                found.append(mask_vertices(mask, graph.n))
        return sorted(found, key=lambda s: tuple(sorted(s)))

    if not probabilistic:
        raise CapacityError(
            f"n={graph.n} exceeds exhaustive limit {EXHAUSTIVE_CUT_LIMIT}; "
            "pass probabilistic=True to enable randomized contraction")
    return _cuts_below_contraction(graph, weights, scaled_bound, rng, trials)


def _cuts_below_contraction(graph: Multigraph, weights: Sequence[int],
                            scaled_bound: Fraction, rng: random.Random | None,
                            trials: int | None) -> list[frozenset[int]]:
    rng = rng if rng is not None else random.Random(0)
    n = graph.n
    if trials is None:
        trials = math.ceil(2 * n ** 4 * math.log(n))
    seen: set[int] = set()
    for _ in range(trials):
        parent = list(range(n + 1))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        alive = [(e.u, e.v, weights[e.id]) for e in graph.edges]
        components = n
        while components > 2:
            live = [(u, v, wt) for (u, v, wt) in alive if find(u) != find(v)]
            if not live:
                break  # disconnected remainder; any merge order gives a 0-cut
            total = sum(wt for (_, _, wt) in live)
            if total == 0:
                u, v, _ = live[rng.randrange(len(live))]
            else:
                pick = rng.randrange(total)
                acc = 0
                u = v = 0
                for (a, b, wt) in live:
                    acc += wt
                    if pick < acc:
                        u, v = a, b
                        break
            parent[find(u)] = find(v)
            components -= 1
            alive = live
        root1 = find(1)
        mask = 0
        for v in range(2, n + 1):
            if find(v) != root1:
                mask |= 1 << (v - 1)
        if mask and mask not in seen and _cut_weight(graph, weights, mask) < scaled_bound:
            seen.add(mask)
    return sorted((mask_vertices(m, n) for m in seen), key=lambda s: tuple(sorted(s)))


def edge_connectivity(graph: Multigraph,
                      multiplicity: Mapping[int, int] | None = None) -> int:
    """Global edge connectivity under integer edge multiplicities."""
    if graph.n < 2:
        raise ValueError("edge connectivity needs at least 2 vertices")
    mult = dict.fromkeys(range(graph.m), 1) if multiplicity is None else multiplicity
    caps = {e: Fraction(mult.get(e, 0)) for e in range(graph.m)}
    for e, c in caps.items():
        if c < 0 or c.denominator != 1:
            raise ValueError(f"multiplicity of edge {e} must be a nonnegative integer")
    value, _ = min_cut(graph, caps)
    assert value.denominator == 1
    return int(value)
