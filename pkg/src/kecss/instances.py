"""Instance file format, generators, and fixtures.

Format (DIMACS-adjacent, diff-friendly):

    # comment lines start with '#'
    p kecss <n> <m> <k>
    e <u> <v> <cost>          (m lines; repeated pairs make parallel edges)
    d <v> <lo> <hi>           (optional degree bounds, at most one per vertex)

Vertices are 1-indexed, costs are nonnegative integers.  Canonical
re-emission round-trips byte-identically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import Multigraph, make_graph, min_cut


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Instance:
    graph: Multigraph
    k: int
    bounds: dict[int, tuple[int, int]] | None = None  # explicit d-lines only

    def degree_arrays(self) -> tuple[list[int], list[int]]:
        """Bounds for all vertices; missing ones default to the vacuous
        window [0, k * deg(v)]."""
        lower = [0] * self.graph.n
        upper = [0] * self.graph.n
        for v in range(1, self.graph.n + 1):
            lo, hi = (self.bounds or {}).get(v, (0, self.k * max(1, self.graph.degree(v))))
            lower[v - 1] = lo
            upper[v - 1] = hi
        return lower, upper


def parse_instance(text: str) -> Instance:
    header = None
    edges: list[tuple[int, int, int]] = []
    bounds: dict[int, tuple[int, int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise ParseError(line_no, "duplicate problem line")
            if len(parts) != 5 or parts[1] != "kecss":
                raise ParseError(line_no, "expected 'p kecss <n> <m> <k>'")
            try:
                header = tuple(int(p) for p in parts[2:])
            except ValueError:
                raise ParseError(line_no, "non-integer field in problem line")
            if header[0] < 1 or header[1] < 0 or header[2] < 1:
                raise ParseError(line_no, "n, m, k out of range")
        elif parts[0] == "e":
            if header is None:
                raise ParseError(line_no, "edge before problem line")
            if len(parts) != 4:
                raise ParseError(line_no, "expected 'e <u> <v> <cost>'")
            try:
                u, v, cost = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(line_no, "non-integer edge field")
            if u == v:
                raise ParseError(line_no, f"self-loop at vertex {u}")
            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise ParseError(line_no, "edge endpoint out of range")
            if cost < 0:
                raise ParseError(line_no, "negative cost")
            edges.append((u, v, cost))
        elif parts[0] == "d":
            if header is None:
                raise ParseError(line_no, "degree bound before problem line")
            if len(parts) != 4:
                raise ParseError(line_no, "expected 'd <v> <lo> <hi>'")
            try:
                v, lo, hi = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(line_no, "non-integer degree field")
            if not 1 <= v <= header[0]:
                raise ParseError(line_no, "vertex out of range")
            if v in bounds:
                raise ParseError(line_no, f"duplicate degree bounds for vertex {v}")
            if lo > hi:
                raise ParseError(line_no, f"lower bound {lo} above upper bound {hi}")
            if lo < 0:
                raise ParseError(line_no, "negative degree bound")
            bounds[v] = (lo, hi)
        else:
            raise ParseError(line_no, f"unknown line type {parts[0]!r}")
    if header is None:
        raise ParseError(0, "missing problem line")
    n, m, k = header
    if len(edges) != m:
        raise ParseError(0, f"problem line declares {m} edges, found {len(edges)}")
    graph = make_graph(n, edges)
    return Instance(graph, k, bounds or None)


def emit_instance(inst: Instance) -> str:
    lines = [f"p kecss {inst.graph.n} {inst.graph.m} {inst.k}"]
    for e in inst.graph.edges:
        cost = e.cost
        assert cost.denominator == 1
        lines.append(f"e {e.u} {e.v} {cost.numerator}")
    for v in sorted(inst.bounds or {}):
        lo, hi = inst.bounds[v]
        lines.append(f"d {v} {lo} {hi}")
    return "\n".join(lines) + "\n"


def _prism_k3() -> Instance:
    """Triangular prism with doubled matching rungs, k=3.

    Matching pairs (u_i, v_i) carry one zero-cost edge and one cost-1
    edge; the two triangles cost 2 per edge.  The unique LP optimum puts
    1 on the zero-cost edges, 1/2 on the cost-1 rungs, and 3/4 on the
    triangle edges, for a value of 21/2, and its nine fractional edges
    are spanned by a laminar family of nine tight sets.
    """
    # u_i = 1,3,5; v_i = 2,4,6
    edges = []
    for i in range(3):
        edges.append((2 * i + 1, 2 * i + 2, 0))  # zero-cost rung
    for i in range(3):
        edges.append((2 * i + 1, 2 * i + 2, 1))  # parallel unit-cost rung
    for a, b in ((1, 3), (3, 5), (1, 5)):
        edges.append((a, b, 2))  # u-triangle
    for a, b in ((2, 4), (4, 6), (2, 6)):
        edges.append((a, b, 2))  # v-triangle
    return Instance(make_graph(6, edges), 3)


def _prism_hub_k6() -> Instance:
    """Prism gadgets hanging off a hub, k=6.

    Vertices: hub s=1 and triples (u_i, v_i, t_i).  Zero-cost edges: one
    hub ray to each of u_i, v_i, t_i and triple rungs u_i-t_i, v_i-t_i.
    Cost-1 edges u_i-v_i and two cost-2 triangles through the u_i and the
    v_i.  The unique LP optimum sets every zero-cost edge to 1, the
    cost-1 edges to 1/2, and the triangle edges to 3/4; picking the
    integral edges leaves residual requirement 2 on each {u_i}, {v_i} and
    3 on each {u_i, v_i, t_i}.
    """
    # s=1; u_i = 2,5,8; v_i = 3,6,9; t_i = 4,7,10
    u = [2, 5, 8]
    v = [3, 6, 9]
    t = [4, 7, 10]
    edges = []
    for i in range(3):
        edges.append((1, u[i], 0))
        edges.append((1, v[i], 0))
        edges.append((1, t[i], 0))
        for _ in range(3):
            edges.append((u[i], t[i], 0))
        for _ in range(3):
            edges.append((v[i], t[i], 0))
    for i in range(3):
        edges.append((u[i], v[i], 1))
    for a, b in ((0, 1), (1, 2), (0, 2)):
        edges.append((u[a], u[b], 2))
    for a, b in ((0, 1), (1, 2), (0, 2)):
        edges.append((v[a], v[b], 2))
    return Instance(make_graph(10, edges), 6)


GENERATOR_KINDS = ("random", "complete", "cycle", "prism-k3", "prism-hub-k6")


def gen(kind: str, seed: int = 0, n: int = 8, p: float = 0.6,
        cost_min: int = 1, cost_max: int = 10, k: int = 4,
        cost: int = 1, ensure_connectivity: int | None = None) -> Instance:
    """Deterministic instance generator.

    random: Erdos-Renyi with integer costs; ensure_connectivity repairs
    the graph by adding random edges across deficient cuts until the
    unit-capacity connectivity reaches the given value.
    """
    if kind in ("complete", "cycle", "random") and n < 2:
        raise ValueError("generators need at least 2 vertices")
    if k < 1:
        raise ValueError("k must be at least 1")
    if kind == "complete":
        g = make_graph(n, [(a, b, cost) for a in range(1, n + 1)
                           for b in range(a + 1, n + 1)])
        return Instance(g, k)
    if kind == "cycle":
        g = make_graph(n, [(a, a % n + 1, cost) for a in range(1, n + 1)])
        return Instance(g, k)
    if kind == "prism-k3":
        return _prism_k3()
    if kind == "prism-hub-k6":
        return _prism_hub_k6()
    if kind != "random":
        raise ValueError(f"unknown generator kind {kind!r}")
    rng = random.Random(seed)
    edges = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < p:
                edges.append((a, b, rng.randint(cost_min, cost_max)))
    if not edges:
        edges.append((1, 2, rng.randint(cost_min, cost_max)))
    if ensure_connectivity:
        while True:
            g = make_graph(n, edges)
            value, side = min_cut(g, {e: 1 for e in range(g.m)})
            if value >= ensure_connectivity:
                break
            a = rng.choice(sorted(side))
            b = rng.choice(sorted(set(range(1, n + 1)) - side))
            edges.append((a, b, rng.randint(cost_min, cost_max)))
    return Instance(make_graph(n, edges), k)
