import random
from fractions import Fraction

import pytest

from kecss.graphs import (CapacityError, Multigraph, boundary, canonical_side,
                          complete_graph, cuts_below, cycle_graph,
                          edge_connectivity, make_graph, min_cut)
from kecss.instances import gen


def exhaustive_min_cut(graph, caps):
    best = None
    for mask_rest in range(1, 1 << (graph.n - 1)):
        mask = mask_rest << 1
        w = sum((Fraction(caps[e.id]) for e in graph.edges
                 if (mask >> (e.u - 1) & 1) != (mask >> (e.v - 1) & 1)),
                Fraction(0))
        if best is None or w < best:
            best = w
    return best


def random_graph(rng, n, p=0.6, parallel=0.1):
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.append((u, v, 1))
                if rng.random() < parallel:
                    edges.append((u, v, 1))
    if not edges:
        edges.append((1, 2, 1))
    return make_graph(n, edges)


def test_multigraph_validation():
    with pytest.raises(ValueError):
        make_graph(3, [(1, 1, 1)])  # self-loop
    with pytest.raises(ValueError):
        make_graph(2, [(1, 3, 1)])  # endpoint out of range
    with pytest.raises(ValueError):
        make_graph(2, [(1, 2, -1)])  # negative cost
    g = make_graph(2, [(1, 2, 1), (1, 2, 1)])  # parallel edges are distinct ids
    assert g.m == 2


def test_boundary_cycle():
    c4 = cycle_graph(4)
    cut = boundary(c4, {1, 2})
    assert cut == {1, 3}  # edges v2v3 and v4v1
    assert len(cut) == 2


def test_boundary_star():
    k4 = complete_graph(4)
    assert len(boundary(k4, {1})) == 3


def test_boundary_restricted_and_symmetry():
    g = gen("prism-hub-k6").graph
    frac = [e.id for e in g.edges if e.cost > 0]
    assert len(boundary(g, {2}, frac)) == 3  # one rung + two triangle edges
    rng = random.Random(0)
    for _ in range(30):
        gr = random_graph(rng, rng.randint(2, 8))
        side = frozenset(rng.sample(range(1, gr.n + 1),
                                    rng.randint(1, gr.n - 1)))
        other = frozenset(range(1, gr.n + 1)) - side
        assert boundary(gr, side) == boundary(gr, other)


def test_boundary_domain_errors():
    c4 = cycle_graph(4)
    with pytest.raises(ValueError):
        boundary(c4, set())
    with pytest.raises(ValueError):
        boundary(c4, {1, 2, 3, 4})


def test_min_cut_examples():
    assert min_cut(cycle_graph(5), {e: 1 for e in range(5)})[0] == 2
    assert min_cut(complete_graph(5), {e: 1 for e in range(10)})[0] == 4
    path = make_graph(3, [(1, 2, 1), (2, 3, 1)])
    value, side = min_cut(path, {0: 1, 1: 1})
    assert value == 1
    assert side in (frozenset({3}), frozenset({2, 3}))


def test_min_cut_needs_two_vertices():
    g = Multigraph(1, ())
    with pytest.raises(ValueError):
        min_cut(g, {})


def test_min_cut_matches_exhaustive():
    rng = random.Random(3)
    sizes = [rng.randint(2, 9) for _ in range(60)] + [12]
    for n in sizes:
        g = random_graph(rng, n)
        caps = {e: Fraction(rng.randint(0, 9), rng.randint(1, 4))
                for e in range(g.m)}
        value, side = min_cut(g, caps)
        assert value == exhaustive_min_cut(g, caps)
        attained = sum((caps[e] for e in boundary(g, side)), Fraction(0))
        assert attained == value
        assert 1 not in side  # canonical representative


def test_cuts_below_c4():
    c4 = cycle_graph(4)
    cuts = cuts_below(c4, {e: 1 for e in range(4)}, 3)
    # all 6 weight-2 partitions; the diagonal pair has weight 4
    expected = []
    for mask_rest in range(1, 8):
        mask = mask_rest << 1
        side = frozenset(v for v in range(1, 5) if mask >> (v - 1) & 1)
        if len(boundary(c4, side)) < 3:
            expected.append(side)
    assert sorted(cuts, key=sorted) == sorted(expected, key=sorted)
    assert len(cuts) == 6


def test_cuts_below_k5_and_empty():
    k5 = complete_graph(5)
    unit = {e: 1 for e in range(10)}
    cuts = cuts_below(k5, unit, 5)
    assert len(cuts) == 5 and all(len(s) in (1, 4) for s in cuts)
    assert cuts_below(k5, unit, 4) == []
    with pytest.raises(ValueError):
        cuts_below(k5, unit, 0)


def test_cuts_below_matches_exhaustive_filter():
    rng = random.Random(11)
    sizes = [rng.randint(2, 8) for _ in range(25)] + [12]
    for n in sizes:
        g = random_graph(rng, n)
        caps = {e: Fraction(rng.randint(0, 5), rng.randint(1, 3))
                for e in range(g.m)}
        bound = Fraction(rng.randint(1, 8), rng.randint(1, 2))
        got = cuts_below(g, caps, bound)
        expected = []
        for mask_rest in range(1, 1 << (g.n - 1)):
            mask = mask_rest << 1
            side = frozenset(v for v in range(1, g.n + 1) if mask >> (v - 1) & 1)
            w = sum((caps[e] for e in boundary(g, side)), Fraction(0))
            if w < bound:
                expected.append(side)
        assert got == sorted(expected, key=lambda s: tuple(sorted(s)))


def test_cuts_below_large_needs_probabilistic_flag():
    big = make_graph(21, [(v, v % 21 + 1, 1) for v in range(1, 22)])
    caps = {e: 1 for e in range(big.m)}
    with pytest.raises(CapacityError):
        cuts_below(big, caps, 3)
    found = cuts_below(big, caps, 3, probabilistic=True,
                       rng=random.Random(5), trials=500)
    assert found
    for side in found:
        assert len(boundary(big, side)) == 2


def test_cut_submodularity_spot_check():
    rng = random.Random(21)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 8))
        caps = {e: Fraction(rng.randint(0, 6)) for e in range(g.m)}

        def w(side):
            if not side or len(side) == g.n:
                return Fraction(0)
            return sum((caps[e] for e in boundary(g, side)), Fraction(0))

        verts = list(range(1, g.n + 1))
        s = frozenset(rng.sample(verts, rng.randint(1, g.n - 1)))
        t = frozenset(rng.sample(verts, rng.randint(1, g.n - 1)))
        assert w(s) + w(t) >= w(s & t) + w(s | t)
        assert w(s) + w(t) >= w(s - t) + w(t - s)


def test_edge_connectivity_examples():
    assert edge_connectivity(cycle_graph(6)) == 2
    tree = make_graph(4, [(1, 2, 1), (2, 3, 1), (2, 4, 1)])
    assert edge_connectivity(tree) == 1
    two = make_graph(2, [(1, 2, 1)])
    assert edge_connectivity(two, {0: 6}) == 6
    assert edge_connectivity(two, {0: 0}) == 0


def test_canonical_side():
    assert canonical_side(frozenset({1, 2}), 4) == frozenset({3, 4})
    assert canonical_side(frozenset({3}), 4) == frozenset({3})
