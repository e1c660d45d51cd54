"""Cartan validation, catalog classification, additive certificates."""

from __future__ import annotations

import random

import pytest

from artifact.diagrams import (
    ADDITIVE,
    STRICTLY_SUBADDITIVE,
    VIOLATED,
    AsymmetricZeroPattern,
    CyclicOrientation,
    DiagonalNotTwo,
    Disconnected,
    PositiveOffDiagonal,
    Quiver,
    catalog_diagram,
    catalog_members,
    check_subadditive,
    classify,
    default_quiver,
    find_additive_function,
    parse_shorthand,
    quiver_from_json,
    quiver_to_json,
    validate_cartan,
)


def test_validation_errors():
    with pytest.raises(DiagonalNotTwo):
        validate_cartan([[1, -1], [-1, 2]])
    with pytest.raises(PositiveOffDiagonal):
        validate_cartan([[2, 1], [-1, 2]])
    with pytest.raises(AsymmetricZeroPattern):
        validate_cartan([[2, 0], [-1, 2]])
    with pytest.raises(Disconnected):
        validate_cartan([[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -1], [0, 0, -1, 2]])


def test_classification_of_whole_catalog():
    for d in range(2, 13):
        for tag, kind, m, c in catalog_members(d):
            got = classify(c)
            assert (got.tag, got.kind, got.m) == (tag, kind, m), (kind, m)


def test_classification_is_relabeling_invariant():
    rng = random.Random(11)
    for d in range(2, 10):
        for tag, kind, m, c in catalog_members(d):
            perm = list(range(d))
            rng.shuffle(perm)
            got = classify(c.relabeled(perm))
            assert (got.tag, got.kind, got.m) == (tag, kind, m)


def test_no_two_catalog_members_collide():
    # within each vertex count the catalog diagrams are pairwise distinct
    for d in range(2, 13):
        members = catalog_members(d)
        for i, (_, k1, m1, c1) in enumerate(members):
            for _, k2, m2, c2 in members[i + 1:]:
                got = classify(c2)
                assert (got.kind, got.m) != (k1, m1), ((k1, m1), (k2, m2))


def test_b3_and_c3_differ():
    b3, c3 = catalog_diagram("B", 3), catalog_diagram("C", 3)
    assert classify(b3).kind == "B" and classify(c3).kind == "C"


def test_indefinite_examples():
    assert classify(validate_cartan([[2, -2], [-3, 2]])).tag == "Indefinite"
    k4 = [[2 if i == j else -1 for j in range(4)] for i in range(4)]
    assert classify(validate_cartan(k4)).tag == "Indefinite"


EXPECTED_MARKS = {
    ("Atilde", 3): (1, 1, 1, 1),
    ("Btilde", 3): (1, 1, 2, 1),
    ("Btilde", 5): (1, 1, 2, 2, 2, 1),
    ("Ctilde", 2): (1, 2, 1),
    ("Ctilde", 4): (1, 2, 2, 2, 1),
    ("Dtilde", 4): (1, 1, 2, 1, 1),
    ("Dtilde", 6): (1, 1, 2, 2, 2, 1, 1),
    ("BCtilde", 2): (2, 2, 1),
    ("BCtilde", 4): (2, 2, 2, 2, 1),
    ("BDtilde", 3): (1, 1, 2, 2),
    ("BDtilde", 5): (1, 1, 2, 2, 2, 2),
    ("CDtilde", 2): (1, 1, 1),
    ("CDtilde", 4): (1, 1, 1, 1, 1),
    ("Atilde11", 1): (1, 1),
    ("Atilde12", 1): (2, 1),
    ("Gtilde21", 2): (1, 2, 3),
    ("Gtilde22", 2): (1, 2, 1),
    ("Ftilde41", 4): (1, 2, 3, 4, 2),
    ("Ftilde42", 4): (1, 2, 3, 2, 1),
    ("Etilde6", 6): (3, 2, 1, 2, 1, 2, 1),
    ("Etilde7", 7): (4, 3, 2, 1, 3, 2, 1, 2),
    ("Etilde8", 8): (6, 5, 4, 3, 2, 1, 4, 2, 3),
}


def test_euclidean_marks():
    for (kind, m), marks in EXPECTED_MARKS.items():
        c = catalog_diagram(kind, m)
        f = find_additive_function(c)
        assert f is not None, (kind, m)
        assert tuple(f[i] for i in range(c.d)) == marks, (kind, m)
        assert check_subadditive(c, f) == ADDITIVE


def test_every_euclidean_has_additive_every_dynkin_has_none():
    for d in range(2, 13):
        for tag, kind, m, c in catalog_members(d):
            f = find_additive_function(c)
            if tag == "Euclidean":
                assert f is not None and min(f.values()) == 1
            else:
                assert f is None, (kind, m)


def test_dynkin_admits_strictly_subadditive():
    # solve sum_i f(i) C_ij = 1 for all j; for the positive-definite finite
    # types the solution exists and is strictly positive
    for d in range(2, 9):
        for tag, kind, m, c in catalog_members(d):
            if tag != "Dynkin":
                continue
            f = _solve_left_system(c)
            assert f is not None and all(v > 0 for v in f.values()), (kind, m)
            assert check_subadditive(c, f) == STRICTLY_SUBADDITIVE


def _solve_left_system(c):
    from fractions import Fraction

    n = c.d
    aug = [[Fraction(c.entries[i][j]) for i in range(n)] + [Fraction(1)] for j in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return {i: aug[i][n] for i in range(n)}


def test_check_subadditive_violations():
    c = catalog_diagram("Atilde", 2)
    assert check_subadditive(c, {0: 1, 1: 1, 2: 1}) == ADDITIVE
    assert check_subadditive(c, {0: 1, 1: 1, 2: 3}) == VIOLATED
    with pytest.raises(ValueError):
        check_subadditive(c, {0: 0, 1: 1, 2: 1})


def test_quiver_orientation_and_order():
    q = default_quiver("A", 3)
    assert q.topological_order == (0, 1, 2)
    assert q.out_neighbors(0) == [1] and q.in_neighbors(1) == [0]
    c = catalog_diagram("Atilde", 2)
    with pytest.raises(CyclicOrientation):
        Quiver(c, [(0, 1), (1, 2), (2, 0)])


def test_quiver_requires_total_orientation():
    c = catalog_diagram("A", 3)
    with pytest.raises(ValueError):
        Quiver(c, [(0, 1)])
    with pytest.raises(ValueError):
        Quiver(c, [(0, 1), (1, 0), (1, 2)])
    with pytest.raises(ValueError):
        Quiver(c, [(0, 1), (1, 2), (0, 2)])


def test_exponent_convention():
    # for the two-vertex diagram with a double-valued edge, each vertex
    # sees its neighbor with exponent 2
    q = parse_shorthand("kronecker")
    assert q.exponent(1, 0) == 2 and q.exponent(0, 1) == 2
    q2 = default_quiver("Atilde12", 1)
    assert (q2.exponent(1, 0), q2.exponent(0, 1)) == (4, 1)


def test_shorthands():
    assert classify(parse_shorthand("A3").cartan).kind == "A"
    q = parse_shorthand("Atilde3")
    assert classify(q.cartan).m == 3
    assert (0, 3) in q.arrows and (2, 3) in q.arrows
    q = parse_shorthand("Dtilde7")
    assert {(0, 2), (1, 2), (5, 6), (7, 5)} <= q.arrows
    assert classify(parse_shorthand("BCtilde4").cartan).kind == "BCtilde"
    assert classify(parse_shorthand("E6").cartan).kind == "E6"
    assert classify(parse_shorthand("Ftilde41").cartan).kind == "Ftilde41"
    with pytest.raises(ValueError):
        parse_shorthand("Z9")


def test_json_round_trip():
    q = parse_shorthand("Dtilde5")
    obj = quiver_to_json(q)
    q2 = quiver_from_json(obj)
    assert q2.cartan == q.cartan and q2.arrows == q.arrows


def test_json_valuation_convention():
    obj = {"vertices": 2, "edges": [{"from": 0, "to": 1, "val": [2, 2]}]}
    q = quiver_from_json(obj)
    assert classify(q.cartan).kind == "Atilde11"
    obj = {"vertices": 2, "edges": [{"from": 0, "to": 1, "val": [1, 3]}]}
    q = quiver_from_json(obj)
    # val[0] scales the source's step, val[1] the target's
    assert q.exponent(1, 0) == 1 and q.exponent(0, 1) == 3
