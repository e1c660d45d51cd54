"""Frise tables against a direct rational-recursion oracle."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy

from artifact.diagrams import Quiver, catalog_diagram, catalog_members, default_quiver, parse_shorthand
from artifact.frises import (
    Frise,
    WindowTooShort,
    detect_period,
    frise_extend,
    frise_extend_vars,
    initial_variables,
    specialize_at_one,
    verify_recursion,
)
from artifact.laurent import LaurentPoly


# ----------------------------------------------------------------------
# oracle: evaluate the defining relation by fixpoint iteration over exact
# rationals, with no topological bookkeeping shared with the implementation


def _oracle_table(q: Quiver, steps: int) -> list[list[Fraction]]:
    d = q.cartan.d
    table: list[list] = [[Fraction(1)] + [None] * steps for _ in range(d)]
    for n in range(steps):
        remaining = set(range(d))
        while remaining:
            progressed = False
            for j in sorted(remaining):
                if any(table[i][n + 1] is None for i in q.in_neighbors(j)):
                    continue
                prod = Fraction(1)
                for i in q.out_neighbors(j):
                    prod *= table[i][n] ** q.exponent(i, j)
                for i in q.in_neighbors(j):
                    prod *= table[i][n + 1] ** q.exponent(i, j)
                table[j][n + 1] = (1 + prod) / table[j][n]
                remaining.discard(j)
                progressed = True
            assert progressed, "oracle stuck; orientation not acyclic?"
    return table


def _assert_matches_oracle(q: Quiver, steps: int) -> Frise:
    fr = frise_extend(q, steps)
    oracle = _oracle_table(q, steps)
    for j in range(q.cartan.d):
        for n in range(steps + 1):
            assert oracle[j][n].denominator == 1
            assert fr.value(j, n) == oracle[j][n]
    verify_recursion(fr)
    return fr


def test_single_vertex_alternates():
    # empty neighbor products leave a(n)a(n+1) = 2
    fr = _assert_matches_oracle(default_quiver("A", 1), 3)
    assert fr.row(0) == (1, 2, 1, 2)


def test_kronecker_values():
    fr = _assert_matches_oracle(parse_shorthand("kronecker"), 2)
    assert fr.row(0) == (1, 2, 13)
    assert fr.row(1) == (1, 5, 34)


def test_kronecker_merged_sequence_is_even_fibonacci():
    fr = frise_extend(parse_shorthand("kronecker"), 7)
    merged = [fr.value(j, n) for n in range(8) for j in (0, 1)][:15]
    fib = [1, 1]
    while len(fib) < 30:
        fib.append(fib[-1] + fib[-2])
    expected = [1] + [fib[2 * k] for k in range(14)]
    assert merged == expected


def test_oracle_agreement_across_catalog():
    for d in range(2, 7):
        for tag, kind, m, c in catalog_members(d):
            q = default_quiver(kind, m)
            _assert_matches_oracle(q, 8)


def test_all_orientations_of_a3():
    c = catalog_diagram("A", 3)
    edges = c.edges()
    for flips in itertools.product((False, True), repeat=len(edges)):
        arrows = [(j, i) if f else (i, j) for (i, j), f in zip(edges, flips)]
        _assert_matches_oracle(Quiver(c, arrows), 10)


def test_variable_frise_small_cases():
    u1, u2 = initial_variables(2)
    vf = frise_extend_vars(default_quiver("A", 2), 1)
    assert vf.value(0, 1) == (1 + u2).monomial_div(u1)
    assert vf.value(1, 1) == (u1 + u2 + 1).monomial_div(u1 * u2)
    kf = frise_extend_vars(parse_shorthand("kronecker"), 1)
    assert kf.value(0, 1) == (1 + u2 ** 2).monomial_div(u1)


def _to_sympy(p: LaurentPoly, syms: dict):
    expr = sympy.Integer(0)
    for exps, coeff in p.terms.items():
        term = sympy.Integer(coeff)
        for name, e in zip(p.variables, exps):
            term *= syms[name] ** e
        expr += term
    return expr


def _sympy_oracle(q: Quiver, steps: int):
    d = q.cartan.d
    syms = {("u%d" % (j + 1)): sympy.Symbol("u%d" % (j + 1), positive=True) for j in range(d)}
    table = [[syms["u%d" % (j + 1)]] for j in range(d)]
    for n in range(steps):
        for j in q.topological_order:
            prod = sympy.Integer(1)
            for i in q.out_neighbors(j):
                prod *= table[i][n] ** q.exponent(i, j)
            for i in q.in_neighbors(j):
                prod *= table[i][n + 1] ** q.exponent(i, j)
            table[j].append(sympy.cancel((1 + prod) / table[j][n]))
    return syms, table


@pytest.mark.parametrize("name,steps", [("A2", 4), ("A3", 4), ("kronecker", 3), ("G2", 3), ("B2", 3)])
def test_variable_frise_matches_symbolic_oracle(name, steps):
    q = parse_shorthand(name)
    vf = frise_extend_vars(q, steps)
    syms, oracle = _sympy_oracle(q, steps)
    for j in range(q.cartan.d):
        for n in range(steps + 1):
            diff = sympy.cancel(_to_sympy(vf.value(j, n), syms) - oracle[j][n])
            assert diff == 0, (name, j, n)
    verify_recursion(vf)


def test_specialization_at_one():
    for name in ("A3", "B3", "Atilde2", "kronecker"):
        q = parse_shorthand(name)
        vf = frise_extend_vars(q, 4)
        fr = frise_extend(q, 4)
        assert specialize_at_one(vf).table == fr.table


def test_detect_period_dynkin_rank_two():
    assert detect_period(frise_extend(parse_shorthand("A2"), 20)) == (0, 5)
    assert detect_period(frise_extend(parse_shorthand("B2"), 20)) == (0, 3)
    assert detect_period(frise_extend(parse_shorthand("G2"), 20)) == (0, 4)


def test_detect_period_growth_returns_none():
    assert detect_period(frise_extend(parse_shorthand("kronecker"), 20)) is None


def test_detect_period_window_too_short():
    with pytest.raises(WindowTooShort):
        detect_period(frise_extend(default_quiver("A", 1), 3))
    assert detect_period(frise_extend(default_quiver("A", 1), 5)) == (0, 2)


def test_every_dynkin_orientation_is_periodic():
    for d in range(1, 9):
        for tag, kind, m, c in catalog_members(d) if d > 1 else [("Dynkin", "A", 1, catalog_diagram("A", 1))]:
            if tag != "Dynkin":
                continue
            edges = c.edges()
            for flips in itertools.product((False, True), repeat=len(edges)):
                arrows = [(j, i) if f else (i, j) for (i, j), f in zip(edges, flips)]
                fr = frise_extend(Quiver(c, arrows), 64)
                assert detect_period(fr) is not None, (kind, m, flips)
