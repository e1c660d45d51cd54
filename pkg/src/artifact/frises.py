"""Frise sequences attached to an acyclic valued quiver.

Every vertex j carries a sequence with a(j,0) = 1 and

    a(j,n) * a(j,n+1) = 1 + prod_{j->i} a(i,n)^e(i,j) * prod_{i->j} a(i,n+1)^e(i,j)

where e(i,j) is the valuation the neighbor i carries in j's own relation.
Out-neighbors contribute at the current step, in-neighbors at the next one,
so computing step n+1 in topological order needs no iteration. Acyclicity
makes the table well-defined; exactness of every division is checked rather
than assumed.
"""

from __future__ import annotations

from typing import Optional, Union

from .diagrams import Quiver
from .laurent import ExactDivisionError, LaurentPoly


class NonIntegralStep(ArithmeticError):
    """An integer frise division left a remainder."""

    def __init__(self, vertex: int, step: int, numerator: int, divisor: int):
        super().__init__(
            "vertex %d, step %d: %d is not divisible by %d" % (vertex, step, numerator, divisor)
        )
        self.vertex = vertex
        self.step = step


class NonMonomialDenominator(ArithmeticError):
    """A variable frise cell is not a Laurent polynomial."""

    def __init__(self, vertex: int, step: int):
        super().__init__("vertex %d, step %d: denominator is not a monomial" % (vertex, step))
        self.vertex = vertex
        self.step = step


class NegativeCoefficient(ArithmeticError):
    """A variable frise cell has a non-natural coefficient."""

    def __init__(self, vertex: int, step: int):
        super().__init__("vertex %d, step %d: negative coefficient" % (vertex, step))
        self.vertex = vertex
        self.step = step


class WindowTooShort(ValueError):
    """The computed window cannot certify three repetitions of the period."""


class Frise:
    """Integer frise table over 0..steps for each vertex."""

    __slots__ = ("quiver", "steps", "table")

    def __init__(self, quiver: Quiver, table: list[list[int]]):
        self.quiver = quiver
        self.steps = len(table[0]) - 1
        self.table = tuple(tuple(row) for row in table)

    def value(self, vertex: int, step: int) -> int:
        return self.table[vertex][step]

    def column(self, step: int) -> tuple:
        return tuple(row[step] for row in self.table)

    def row(self, vertex: int) -> tuple:
        return self.table[vertex]


class VarFrise(Frise):
    """Frise of Laurent polynomials; row 0 holds the variables u_1..u_d."""

    __slots__ = ()


def initial_variables(d: int) -> list[LaurentPoly]:
    return [LaurentPoly.var("u%d" % (j + 1)) for j in range(d)]


def _extend(quiver: Quiver, steps: int, first, mul_unit, divide):
    d = quiver.cartan.d
    rows = [[first(j)] for j in range(d)]
    for n in range(steps):
        for j in quiver.topological_order:
            prod = mul_unit
            for i in quiver.out_neighbors(j):
                prod = prod * rows[i][n] ** quiver.exponent(i, j)
            for i in quiver.in_neighbors(j):
                prod = prod * rows[i][n + 1] ** quiver.exponent(i, j)
            rows[j].append(divide(1 + prod, rows[j][n], j, n + 1))
    return rows


def frise_extend(quiver: Quiver, steps: int) -> Frise:
    """Integer frise over 0..steps, every division checked exact."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")

    def divide(num: int, den: int, j: int, n: int) -> int:
        q, r = divmod(num, den)
        if r:
            raise NonIntegralStep(j, n, num, den)
        return q

    return Frise(quiver, _extend(quiver, steps, lambda j: 1, 1, divide))


def frise_extend_vars(quiver: Quiver, steps: int, max_vars: int = 16) -> VarFrise:
    """Frise with the initial row replaced by variables u_1..u_d.

    Each cell must come out as a Laurent polynomial with natural
    coefficients and a monomial denominator; any violation aborts loudly
    since it would falsify positivity for this input.
    """
    d = quiver.cartan.d
    if d > max_vars:
        raise ValueError("%d vertices exceeds the variable budget %d" % (d, max_vars))
    init = initial_variables(d)

    def divide(num: LaurentPoly, den: LaurentPoly, j: int, n: int) -> LaurentPoly:
        try:
            val = num.exact_div(den)
        except ExactDivisionError as exc:
            raise NonMonomialDenominator(j, n) from exc
        if not val.is_natural():
            raise NegativeCoefficient(j, n)
        return val

    rows = _extend(quiver, steps, lambda j: init[j], LaurentPoly.nat(1), divide)
    return VarFrise(quiver, rows)


def verify_recursion(fr: Frise) -> None:
    """Recheck the defining relation at every computed cell; raise on failure."""
    q = fr.quiver
    one = LaurentPoly.nat(1) if isinstance(fr, VarFrise) else 1
    for n in range(fr.steps):
        for j in range(q.cartan.d):
            prod = one
            for i in q.out_neighbors(j):
                prod = prod * fr.table[i][n] ** q.exponent(i, j)
            for i in q.in_neighbors(j):
                prod = prod * fr.table[i][n + 1] ** q.exponent(i, j)
            if fr.table[j][n] * fr.table[j][n + 1] != 1 + prod:
                raise ValueError("relation fails at vertex %d, step %d" % (j, n))


def specialize_at_one(vf: VarFrise) -> Frise:
    """Set every variable to 1, reproducing the integer frise cell by cell."""
    ones = {v: 1 for row in vf.table for cell in row for v in cell.variables}
    table = [[cell.subst(ones).as_int() for cell in row] for row in vf.table]
    return Frise(vf.quiver, table)


def detect_period(fr: Frise) -> Optional[tuple[int, int]]:
    """Smallest (preperiod n0, period p) visible in the table, certified.

    Certification needs three full repetitions of the period inside the
    window: n0 + 3p <= steps + 1. A visible but uncertifiable match raises
    WindowTooShort; no visible match returns None.
    """
    N = fr.steps
    cols = [fr.column(n) for n in range(N + 1)]
    uncertified = None
    for p in range(1, N + 1):
        mismatch = [n for n in range(0, N - p + 1) if cols[n] != cols[n + p]]
        n0 = mismatch[-1] + 1 if mismatch else 0
        if n0 > N - p:
            continue  # vacuous for this p
        if n0 + 3 * p <= N + 1:
            return (n0, p)
        if uncertified is None:
            uncertified = (n0, p)
    if uncertified is not None:
        n0, p = uncertified
        raise WindowTooShort(
            "period %d from step %d needs %d columns to certify, have %d"
            % (p, n0, n0 + 3 * p, N + 1)
        )
    return None
