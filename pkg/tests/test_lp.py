import random
from fractions import Fraction

import pytest

from kecss import lp
from kecss.certify import full_cut_lp, recheck_vertex
from kecss.graphs import boundary, complete_graph, cycle_graph
from kecss.instances import gen
from kecss.requirements import Requirement
from kecss.separation import Feasible, separate_fast


def test_simplex_face_vertex():
    inst = lp.instance([1, 1], [0, 0], [1, 1], [lp.row({0: 1, 1: 1}, lp.GE, 1)])
    opt = lp.solve(inst)
    assert opt.value == 1
    assert sorted(opt.point) == [Fraction(0), Fraction(1)]


def test_infeasible_and_unbounded_signaled_distinctly():
    with pytest.raises(lp.LpInfeasible):
        lp.solve(lp.instance([0], [0], [5],
                             [lp.row({0: 1}, lp.GE, 1), lp.row({0: 1}, lp.LE, 0)]))
    with pytest.raises(lp.LpUnbounded):
        lp.solve(lp.instance([-1], [0], [None], []))


def test_equality_system_unique_point():
    opt = lp.solve(lp.instance([0, 0], [0, 0], [None, None],
                               [lp.row({0: 1, 1: 1}, lp.EQ, 3),
                                lp.row({0: 1, 1: -1}, lp.EQ, 1)]))
    assert opt.point == [Fraction(2), Fraction(1)]


def test_prism_equality_system_halves_and_quarters():
    # the nine tight constraints of the prism fixture over its nine
    # fractional edges admit exactly one solution: rungs 1/2, triangles 3/4
    g = gen("prism-k3").graph
    frac = [e.id for e in g.edges if e.cost > 0]
    var_of = {e: i for i, e in enumerate(frac)}
    members = [frozenset({v}) for v in range(1, 7)]
    members += [frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 6})]
    rows = []
    for s in members:
        rhs = 2 if len(s) == 1 else 3
        rows.append(lp.row({var_of[e]: 1 for e in boundary(g, s, frac)},
                           lp.EQ, rhs))
    opt = lp.solve(lp.instance([0] * 9, [0] * 9, [None] * 9, rows))
    values = {e: opt.point[var_of[e]] for e in frac}
    for e in frac:
        expected = Fraction(1, 2) if g.edges[e].cost == 1 else Fraction(3, 4)
        assert values[e] == expected
    # (2 + 2 - 3) / 2 = 1/2 is forced for each rung
    assert (2 + 2 - 3) / Fraction(2) == Fraction(1, 2)


def test_vertex_certificate_full_rank():
    rng = random.Random(5)
    for _ in range(25):
        nv = rng.randint(1, 5)
        rows = []
        for _ in range(rng.randint(0, 6)):
            coeffs = {j: rng.randint(-3, 3) for j in range(nv)}
            coeffs = {j: c for j, c in coeffs.items() if c}
            if not coeffs:
                continue
            rows.append(lp.row(coeffs, rng.choice([lp.GE, lp.LE]),
                               rng.randint(-4, 4)))
        inst = lp.instance([rng.randint(0, 5) for _ in range(nv)],
                           [0] * nv, [rng.randint(1, 4) for _ in range(nv)], rows)
        try:
            opt = lp.solve(inst)
        except lp.LpInfeasible:
            continue
        assert len(opt.certificate) == nv
        recheck_vertex(inst, opt)  # independent rank computation
        for r in inst.rows:
            assert r.satisfied(opt.point)


def test_lazy_trivial_oracle_matches_direct_solve():
    rows = [lp.row({0: 1, 1: 2}, lp.GE, 3)]
    inst = lp.instance([2, 1], [0, 0], [4, 4], rows)
    direct = lp.solve(inst)
    lazy = lp.solve_lazy(inst, lambda point: [])
    assert lazy.optimum.value == direct.value
    assert lazy.separation_calls == 1


def test_lazy_kecss_lp_on_k5():
    g = complete_graph(5)
    req = Requirement(g, 4, {}, 3)

    def oracle(point):
        x = {e: point[e] for e in range(g.m)}
        verdict = separate_fast(x, req)
        if isinstance(verdict, Feasible):
            return []
        coeffs = {e: 1 for e in boundary(g, verdict.side)}
        return [lp.row(coeffs, lp.GE, verdict.requirement)]

    inst = lp.instance([1] * g.m, [0] * g.m, [1] * g.m, [])
    result = lp.solve_lazy(inst, oracle)
    assert result.optimum.value == 10
    assert all(v == 1 for v in result.optimum.point)
    # matches the fully materialized system
    assert full_cut_lp(g, 4, "ecss").value == 10


def test_lazy_infeasible_propagates():
    g = cycle_graph(5)
    req = Requirement(g, 4, {}, 3)

    def oracle(point):
        x = {e: point[e] for e in range(g.m)}
        verdict = separate_fast(x, req)
        if isinstance(verdict, Feasible):
            return []
        return [lp.row({e: 1 for e in boundary(g, verdict.side)}, lp.GE,
                       verdict.requirement)]

    inst = lp.instance([1] * 5, [0] * 5, [1] * 5, [])
    with pytest.raises(lp.LpInfeasible):
        lp.solve_lazy(inst, oracle)


def test_lazy_equals_materialized_on_random_instances():
    rng = random.Random(17)
    for trial in range(10):
        n = rng.randint(4, 7)
        edges = []
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                if rng.random() < 0.8:
                    edges.append((u, v, rng.randint(1, 9)))
        from kecss.graphs import make_graph, edge_connectivity
        g = make_graph(n, edges) if edges else None
        if g is None or edge_connectivity(g) < 4:
            continue
        req = Requirement(g, 4, {}, 3)

        def oracle(point):
            x = {e: point[e] for e in range(g.m)}
            verdict = separate_fast(x, req)
            if isinstance(verdict, Feasible):
                return []
            return [lp.row({e: 1 for e in boundary(g, verdict.side)}, lp.GE,
                           verdict.requirement)]

        inst = lp.instance([e.cost for e in g.edges], [0] * g.m, [1] * g.m, [])
        lazy = lp.solve_lazy(inst, oracle)
        assert lazy.optimum.value == full_cut_lp(g, 4, "ecss").value


def test_lazy_row_cap():
    calls = []

    def oracle(point):
        calls.append(1)
        return [lp.row({0: 1}, lp.GE, len(calls))]

    with pytest.raises(RuntimeError):
        lp.solve_lazy(lp.instance([1], [0], [None], []), oracle, max_added=5)


def test_degenerate_instances_terminate():
    # many redundant rows through one vertex
    rows = [lp.row({0: 1, 1: 1}, lp.GE, 2)] * 6
    rows += [lp.row({0: 1}, lp.LE, 1), lp.row({1: 1}, lp.LE, 1)]
    opt = lp.solve(lp.instance([1, 1], [0, 0], [1, 1], rows))
    assert opt.value == 2 and opt.point == [Fraction(1), Fraction(1)]


def _enumerate_vertex_optimum(inst):
    """Exact reference: try every square subsystem of tight constraints,
    keep feasible solutions, return the best objective value.  Sound for
    boxed instances, where the region is a polytope."""
    import itertools

    nv = inst.num_vars
    constraints = []  # (row vector, rhs) for candidate tight constraints
    for j in range(nv):
        vec = [Fraction(0)] * nv
        vec[j] = Fraction(1)
        constraints.append((vec, inst.lower[j]))
        constraints.append((list(vec), inst.upper[j]))
    for r in inst.rows:
        vec = [Fraction(0)] * nv
        for j, c in r.coeffs.items():
            vec[j] = c
        constraints.append((vec, r.rhs))

    def solve_square(idx):
        mat = [list(constraints[i][0]) + [constraints[i][1]] for i in idx]
        cols = []
        for col in range(nv):
            piv = None
            for r2 in range(len(cols), nv):
                if mat[r2][col] != 0:
                    piv = r2
                    break
            if piv is None:
                return None
            mat[len(cols)], mat[piv] = mat[piv], mat[len(cols)]
            base = len(cols)
            mat[base] = [c / mat[base][col] for c in mat[base]]
            for r2 in range(nv):
                if r2 != base and mat[r2][col] != 0:
                    f = mat[r2][col]
                    mat[r2] = [a - f * b for a, b in zip(mat[r2], mat[base])]
            cols.append(col)
        point = [Fraction(0)] * nv
        for r2, col in enumerate(cols):
            point[col] = mat[r2][nv]
        return point

    best = None
    for idx in itertools.combinations(range(len(constraints)), nv):
        point = solve_square(idx)
        if point is None:
            continue
        ok = all(inst.lower[j] <= point[j] <= inst.upper[j] for j in range(nv))
        if ok and all(r.satisfied(point) for r in inst.rows):
            value = sum(inst.objective[j] * point[j] for j in range(nv))
            if best is None or value < best:
                best = value
    return best


def test_solve_matches_vertex_enumeration():
    rng = random.Random(2024)
    solved = 0
    infeasible = 0
    for _ in range(120):
        nv = rng.randint(1, 3)
        rows = []
        for _ in range(rng.randint(0, 4)):
            coeffs = {j: rng.randint(-3, 3) for j in range(nv)}
            coeffs = {j: c for j, c in coeffs.items() if c}
            if not coeffs:
                continue
            sense = rng.choice([lp.GE, lp.LE, lp.EQ])
            rows.append(lp.row(coeffs, sense, rng.randint(-5, 5)))
        inst = lp.instance([rng.randint(-4, 4) for _ in range(nv)],
                           [rng.randint(-2, 0) for _ in range(nv)],
                           [rng.randint(1, 4) for _ in range(nv)], rows)
        expected = _enumerate_vertex_optimum(inst)
        try:
            got = lp.solve(inst)
        except lp.LpInfeasible:
            assert expected is None, "solver said infeasible, oracle found a vertex"
            infeasible += 1
            continue
        assert expected is not None, "oracle found no vertex but solver succeeded"
        assert got.value == expected
        solved += 1
    assert solved > 40 and infeasible > 10
