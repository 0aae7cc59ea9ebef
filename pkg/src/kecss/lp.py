"""Exact rational linear programming with basic (extreme point) optima.

Two-phase bounded-variable primal simplex over fractions.Fraction.  Every
returned optimum is a vertex of the feasible region, certified by an
explicit full-rank set of tight rows and bounds.  A lazy-constraint loop
drives the solver from a separation callback.

Pivoting uses a largest-reduced-cost rule that switches to Bland's rule
whenever the objective stalls, which guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

GE = ">="
LE = "<="
EQ = "=="

_STALL_LIMIT = 12  # degenerate pivots before falling back to Bland's rule
_MAX_PIVOTS = 200_000


class LpInfeasible(Exception):
    """The constraint system has no feasible point."""


class LpUnbounded(Exception):
    """The objective is unbounded below on the feasible region."""


@dataclass(frozen=True)
class LpRow:
    coeffs: dict[int, Fraction]
    sense: str
    rhs: Fraction

    def __post_init__(self):
        if self.sense not in (GE, LE, EQ):
            raise ValueError(f"unknown row sense {self.sense!r}")

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((point[j] * c for j, c in self.coeffs.items()), ZERO)

    def satisfied(self, point: Sequence[Fraction]) -> bool:
        lhs = self.evaluate(point)
        if self.sense == GE:
            return lhs >= self.rhs
        if self.sense == LE:
            return lhs <= self.rhs
        return lhs == self.rhs

    def tight(self, point: Sequence[Fraction]) -> bool:
        return self.evaluate(point) == self.rhs


def row(coeffs: dict[int, int | Fraction], sense: str, rhs: int | Fraction) -> LpRow:
    return LpRow({j: Fraction(c) for j, c in sorted(coeffs.items()) if c != 0},
                 sense, Fraction(rhs))


@dataclass(frozen=True)
class LpInstance:
    objective: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    upper: tuple[Fraction | None, ...]  # None means +infinity
    rows: tuple[LpRow, ...]

    def __post_init__(self):
        nv = len(self.objective)
        if len(self.lower) != nv or len(self.upper) != nv:
            raise ValueError("bound vectors must match objective length")
        for j in range(nv):
            if self.upper[j] is not None and self.lower[j] > self.upper[j]:
                raise ValueError(f"variable {j} has lower > upper")
        for r in self.rows:
            for j in r.coeffs:
                if not 0 <= j < nv:
                    raise ValueError(f"row references undeclared variable {j}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


def instance(objective: Sequence[int | Fraction],
             lower: Sequence[int | Fraction],
             upper: Sequence[int | Fraction | None],
             rows: Sequence[LpRow]) -> LpInstance:
    return LpInstance(tuple(Fraction(c) for c in objective),
                      tuple(Fraction(b) for b in lower),
                      tuple(None if b is None else Fraction(b) for b in upper),
                      tuple(rows))


@dataclass
class BasicOptimum:
    value: Fraction
    point: list[Fraction]
    tight_rows: list[int]
    tight_bounds: list[tuple[int, str]]  # (variable, "lower" | "upper")
    certificate: list[tuple]  # ("row", i) / ("bound", j, side), full column rank

    def point_dict(self) -> dict[int, Fraction]:
        return {j: v for j, v in enumerate(self.point) if v != 0}


class _Simplex:
    """Bounded-variable two-phase tableau simplex."""

    def __init__(self, lp: LpInstance):
        self.lp = lp
        ns = lp.num_vars
        self.ns = ns
        m = len(lp.rows)
        self.m = m
        # columns: structurals 0..ns-1, slack of row i at ns+i
        self.lower: list[Fraction] = list(lp.lower)
        self.upper: list[Fraction | None] = list(lp.upper)
        self.total = ns + m
        cols = self.total
        self.matrix: list[list[Fraction]] = []
        for i, r in enumerate(lp.rows):
            vec = [ZERO] * (cols + 1)
            for j, c in r.coeffs.items():
                vec[j] = c
            if r.sense == LE:
                vec[ns + i] = ONE
                self.lower.append(ZERO)
                self.upper.append(None)
            elif r.sense == GE:
                vec[ns + i] = -ONE
                self.lower.append(ZERO)
                self.upper.append(None)
            else:
                vec[ns + i] = ONE
                self.lower.append(ZERO)
                self.upper.append(ZERO)
            vec[cols] = r.rhs
            self.matrix.append(vec)
        # nonbasic start: finite upper preferred (covering LPs start feasible)
        self.status: list[str] = []
        for j in range(self.total):
            self.status.append("U" if self.upper[j] is not None else "L")
        self.basis: list[int] = []
        self.banned: set[int] = set()

    def _bound_value(self, j: int) -> Fraction:
        if self.status[j] == "U":
            up = self.upper[j]
            assert up is not None
            return up
        return self.lower[j]

    def solve(self) -> list[Fraction]:
        self._phase_one()
        cost = [ZERO] * len(self.lower)
        for j in range(self.ns):
            cost[j] = self.lp.objective[j]
        self._optimize(cost, phase_one=False)
        return self._values()

    # -- setup -----------------------------------------------------------

    def _phase_one(self) -> None:
        # choose slack basic when its implied value fits its bounds,
        # otherwise add an artificial column
        artificial_cost: dict[int, Fraction] = {}
        for i in range(self.m):
            slack = self.ns + i
            vec = self.matrix[i]
            resid = vec[-1]
            for j in range(self.total):
                if j != slack and vec[j] != 0:
                    resid -= vec[j] * self._bound_value(j)
            # slack coefficient is +-1
            sval = resid / vec[slack]
            lo, up = self.lower[slack], self.upper[slack]
            if sval >= lo and (up is None or sval <= up):
                self.basis.append(slack)
                self.status[slack] = "B"
                continue
            # park the slack at the bound nearest feasibility
            self.status[slack] = "L" if sval < lo else "U"
            resid = vec[-1]
            for j in range(self.total):
                if vec[j] != 0:
                    resid -= vec[j] * self._bound_value(j)
            art = len(self.lower)
            self.lower.append(ZERO)
            self.upper.append(None)
            for r2, vec2 in enumerate(self.matrix):
                vec2.insert(art, ONE if r2 == i and resid >= 0 else
                            (-ONE if r2 == i else ZERO))
            self.status.append("B")
            self.basis.append(art)
            self.total += 1
            artificial_cost[art] = ONE
            self.banned.add(art)
        for i in range(self.m):
            self._normalize_row(i)
        if not artificial_cost:
            return
        cost = [ZERO] * self.total
        for art in artificial_cost:
            cost[art] = ONE
        value = self._optimize(cost, phase_one=True)
        if value > 0:
            raise LpInfeasible("phase one optimum is positive")
        self._evict_artificials()

    def _normalize_row(self, i: int) -> None:
        # initial basis columns (slack or artificial) live in a single row,
        # so per-row scaling alone yields an identity basis
        piv = self.matrix[i][self.basis[i]]
        if piv != ONE:
            inv = ONE / piv
            self.matrix[i] = [c * inv for c in self.matrix[i]]

    def _evict_artificials(self) -> None:
        drop_rows = []
        for i in range(self.m):
            if self.basis[i] not in self.banned:
                continue
            vec = self.matrix[i]
            target = None
            for j in range(self.total):
                if j in self.banned or self.status[j] == "B":
                    continue
                if vec[j] != 0:
                    target = j
                    break
            if target is None:
                drop_rows.append(i)
            else:
                self._pivot(i, target, "L")
        for i in sorted(drop_rows, reverse=True):
            art = self.basis[i]
            self.status[art] = "L"
            del self.matrix[i]
            del self.basis[i]
            self.m -= 1

    # -- core ------------------------------------------------------------

    def _values(self) -> list[Fraction]:
        vals = [ZERO] * self.total
        for j in range(self.total):
            if self.status[j] != "B":
                vals[j] = self._bound_value(j)
        for i, col in enumerate(self.basis):
            v = self.matrix[i][-1]
            vec = self.matrix[i]
            for j in range(self.total):
                if j != col and self.status[j] != "B" and vec[j] != 0:
                    bv = self._bound_value(j)
                    if bv != 0:
                        v -= vec[j] * bv
            vals[col] = v
        return vals

    def _objective_value(self, cost: list[Fraction], vals: list[Fraction]) -> Fraction:
        return sum((cost[j] * vals[j] for j in range(self.total) if cost[j] != 0),
                   ZERO)

    def _reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        cb = [cost[c] for c in self.basis]
        red = list(cost)
        for i, cbi in enumerate(cb):
            if cbi == 0:
                continue
            vec = self.matrix[i]
            for j in range(self.total):
                if vec[j] != 0 and self.status[j] != "B":
                    red[j] -= cbi * vec[j]
        return red

    def _pivot(self, i: int, j: int, leaving_status: str) -> None:
        old = self.basis[i]
        vec = self.matrix[i]
        piv = vec[j]
        inv = ONE / piv
        self.matrix[i] = vec = [c * inv for c in vec]
        for r2 in range(self.m):
            if r2 == i:
                continue
            f = self.matrix[r2][j]
            if f != 0:
                row2 = self.matrix[r2]
                self.matrix[r2] = [a - f * b for a, b in zip(row2, vec)]
        self.basis[i] = j
        self.status[j] = "B"
        self.status[old] = leaving_status

    def _optimize(self, cost: list[Fraction], phase_one: bool) -> Fraction:
        cost = cost + [ZERO] * (self.total - len(cost))
        stall = 0
        bland = False
        vals = self._values()
        obj = self._objective_value(cost, vals)
        for _ in range(_MAX_PIVOTS):
            red = self._reduced_costs(cost)
            entering = -1
            best_score = ZERO
            for j in range(self.total):
                st = self.status[j]
                if st == "B" or j in self.banned:
                    continue  # an artificial never re-enters once nonbasic
                lo, up = self.lower[j], self.upper[j]
                if up is not None and lo == up:
                    continue  # fixed variable never enters
                rj = red[j]
                if st == "L" and rj < 0:
                    score = -rj
                elif st == "U" and rj > 0:
                    score = rj
                else:
                    continue
                if bland:
                    entering = j
                    break
                if score > best_score:
                    best_score = score
                    entering = j
            if entering < 0:
                return self._objective_value(cost, self._values())
            j = entering
            direction = 1 if self.status[j] == "L" else -1
            # ratio test
            vals = self._values()
            t_best: Fraction | None = None
            leave_row = -1
            leave_status = "L"
            if self.upper[j] is not None:
                t_best = self.upper[j] - self.lower[j]
            for i in range(self.m):
                a = self.matrix[i][j]
                if a == 0:
                    continue
                rate = -a * direction
                col = self.basis[i]
                cur = vals[col]
                if rate > 0:
                    if self.upper[col] is None:
                        continue
                    t = (self.upper[col] - cur) / rate
                    hit = "U"
                else:
                    t = (self.lower[col] - cur) / rate
                    hit = "L"
                if t_best is None or t < t_best or (
                        t == t_best and leave_row >= 0
                        and col < self.basis[leave_row]):
                    t_best = t
                    leave_row = i
                    leave_status = hit
            if t_best is None:
                raise LpUnbounded("improving direction with no blocking bound")
            if leave_row < 0:
                # bound flip of the entering variable
                self.status[j] = "U" if self.status[j] == "L" else "L"
            else:
                self._pivot(leave_row, j, leave_status)
            new_vals = self._values()
            new_obj = self._objective_value(cost, new_vals)
            if new_obj < obj:
                stall = 0
                bland = False
            else:
                stall += 1
                if stall > _STALL_LIMIT:
                    bland = True
            obj = new_obj
        raise RuntimeError("simplex pivot limit exceeded")


def _rank_certificate(lp: LpInstance, point: list[Fraction],
                      tight_rows: list[int],
                      tight_bounds: list[tuple[int, str]]) -> list[tuple]:
    """Greedy full-rank subset of tight constraints, as x-space row vectors."""
    nv = lp.num_vars
    pivots: dict[int, dict[int, Fraction]] = {}  # pivot column -> reduced vector
    chosen: list[tuple] = []

    def try_add(vec: dict[int, Fraction], label: tuple) -> None:
        v = {c: val for c, val in vec.items() if val != 0}
        while v:
            col = min(v)
            if col not in pivots:
                break
            piv = pivots[col]
            f = v[col] / piv[col]
            for c2, val in piv.items():
                nv = v.get(c2, ZERO) - f * val
                if nv == 0:
                    v.pop(c2, None)
                else:
                    v[c2] = nv
        if v:
            pivots[min(v)] = v
            chosen.append(label)

    for j, side in tight_bounds:
        if len(chosen) == nv:
            break
        try_add({j: ONE}, ("bound", j, side))
    for i in tight_rows:
        if len(chosen) == nv:
            break
        try_add(dict(lp.rows[i].coeffs), ("row", i))
    if len(chosen) != nv:
        raise RuntimeError("solver returned a non-vertex point")
    return chosen


def solve(lp: LpInstance) -> BasicOptimum:
    """Optimal vertex of the feasible region, or LpInfeasible/LpUnbounded."""
    for j in range(lp.num_vars):
        if lp.upper[j] is not None and lp.lower[j] > lp.upper[j]:
            raise LpInfeasible(f"variable {j} has empty bound interval")
    vals = _Simplex(lp).solve()
    point = vals[:lp.num_vars]
    for i, r in enumerate(lp.rows):
        if not r.satisfied(point):
            raise RuntimeError(f"simplex produced point violating row {i}")
    value = sum((lp.objective[j] * point[j] for j in range(lp.num_vars)), ZERO)
    tight_rows = [i for i, r in enumerate(lp.rows) if r.tight(point)]
    tight_bounds: list[tuple[int, str]] = []
    for j in range(lp.num_vars):
        if point[j] == lp.lower[j]:
            tight_bounds.append((j, "lower"))
        if lp.upper[j] is not None and point[j] == lp.upper[j]:
            tight_bounds.append((j, "upper"))
    cert = _rank_certificate(lp, point, tight_rows, tight_bounds)
    return BasicOptimum(value, point, tight_rows, tight_bounds, cert)


SeparationCallback = Callable[[list[Fraction]], list[LpRow]]


@dataclass
class LazyResult:
    optimum: BasicOptimum
    rows: list[LpRow]  # full row set of the final relaxation
    separation_calls: int


def solve_lazy(lp: LpInstance, oracle: SeparationCallback,
               max_added: int | None = None) -> LazyResult:
    """Cutting-plane loop: solve, separate, add violated rows, repeat.

    The oracle must be sound (returned rows are valid for the implicit
    system and violated at the queried point) and complete (it returns no
    rows only when the point is feasible for the full system).  A vertex
    of a relaxation that the oracle accepts is a vertex of the full
    system.  The oracle may return several violated rows per call.
    """
    rows = list(lp.rows)
    added = 0
    calls = 0
    if max_added is None:
        max_added = 10 * (lp.num_vars + 2 ** min(20, lp.num_vars))
    while True:
        opt = solve(LpInstance(lp.objective, lp.lower, lp.upper, tuple(rows)))
        cuts = oracle(opt.point)
        calls += 1
        if not cuts:
            return LazyResult(opt, rows, calls)
        for c in cuts:
            if c.satisfied(opt.point):
                raise RuntimeError("oracle returned a non-violated row")
        rows.extend(cuts)
        added += len(cuts)
        if added > max_added:
            raise RuntimeError(
                f"lazy loop exceeded {max_added} added rows "
                f"({len(rows)} rows in relaxation)")
