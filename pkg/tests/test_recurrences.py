from fractions import Fraction

import pytest

from artifact.diagrams import parse_shorthand
from artifact.frises import detect_period, frise_extend
from artifact.recurrences import (
    BadDirection,
    LinearRecurrence,
    LinearRep,
    PrefixTooShort,
    find_min_recurrence,
    human_form,
    nrational_witness,
    tensor_hadamard,
    verify_recurrence,
)
from artifact.tilings import Embedding, parse_frontier, ray_values, tile_value

EVEN_FIB = [1, 1, 2, 5, 13, 34, 89, 233]


def test_find_min_recurrence_examples():
    rec = find_min_recurrence(EVEN_FIB, 2)
    assert rec.order == 2 and rec.coeffs == (3, -1) and rec.minimal

    ones = find_min_recurrence([1] * 6, 1)
    assert ones.order == 1 and ones.coeffs == (1,)

    doubling = find_min_recurrence([2**n for n in range(8)], 2)
    assert doubling.order == 1 and doubling.coeffs == (2,)

    ratio = find_min_recurrence([32, 48, 72, 108, 162, 243], 1)
    assert ratio.coeffs == (Fraction(3, 2),)

    factorials = [1, 1, 2, 6, 24, 120, 720, 5040]
    assert find_min_recurrence(factorials, 2) is None

    with pytest.raises(PrefixTooShort):
        find_min_recurrence([1, 1, 2], 1)


def test_minimality_certified_on_window():
    assert find_min_recurrence(EVEN_FIB, 1) is None
    assert not verify_recurrence(EVEN_FIB, LinearRecurrence((Fraction(3),)))


def test_verify_recurrence():
    assert verify_recurrence([1, 1, 2, 5, 13, 34], LinearRecurrence((3, -1)))
    assert not verify_recurrence([1, 1, 2, 5, 13, 34], LinearRecurrence((2, 1)))
    with pytest.raises(ValueError):
        verify_recurrence([1, 2], LinearRecurrence((1, 1)))


def test_round_trip_on_periodic_columns():
    for name in ("A2", "B2", "G2", "A3"):
        fr = frise_extend(parse_shorthand(name), 24)
        n0, p = detect_period(fr)
        assert n0 == 0
        for vertex in range(fr.quiver.cartan.d):
            row = [fr.value(vertex, n) for n in range(25)]
            rec = find_min_recurrence(row, p)
            assert rec is not None and rec.order <= p
            assert verify_recurrence(row, rec)


def test_human_form():
    assert human_form(LinearRecurrence((3, -1))) == "u[n+2] = 3 u[n+1] - u[n]"
    assert human_form(LinearRecurrence((Fraction(1),))) == "u[n+1] = u[n]"
    assert human_form(LinearRecurrence((Fraction(2),))) == "u[n+1] = 2 u[n]"
    assert human_form(LinearRecurrence((Fraction(0),))) == "u[n+1] = 0"
    assert human_form(LinearRecurrence((Fraction(3, 2),))) == "u[n+1] = 3/2 u[n]"
    assert human_form(LinearRecurrence((-1, 0, 2))) == "u[n+3] = -u[n+2] + 2 u[n]"


def test_witness_staircase_row():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    w = nrational_witness(e, (0, -1), (1, 0))
    assert w.q == 1
    assert [w.value(n) for n in range(6)] == [1, 2, 5, 13, 34, 89]
    assert [w.value(n) for n in range(20)] == list(
        ray_values(e, (0, -1), (1, 0), 20).values
    )


def test_witness_staircase_diagonal():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    w = nrational_witness(e, (1, -1), (1, -1))
    assert w.q == 1
    # starts strictly below, so no delay line is needed
    assert len(w.residues[0].lam) == 2
    assert [w.value(n) for n in range(4)] == [2, 13, 89, 610]


def test_witness_atilde3_row():
    e = Embedding(parse_frontier("[xxxy]* [xxxy]*"))
    w = nrational_witness(e, (-2, -1), (1, 0))
    assert w.q == 3
    assert [w.value(3 * k) for k in range(4)] == [1, 2, 9, 43]
    assert [w.value(n) for n in range(24)] == list(
        ray_values(e, (-2, -1), (1, 0), 24).values
    )


def test_witness_upward_ray_uses_mirror():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    w = nrational_witness(e, (0, 1), (0, 1))
    assert [w.value(n) for n in range(3)] == [
        tile_value(e, (0, 1 + n)) for n in range(3)
    ]
    with pytest.raises(BadDirection):
        nrational_witness(e, (0, 0), (1, 1))
    with pytest.raises(BadDirection):
        nrational_witness(e, (0, 0), (0, 0))


def test_witness_entries_are_natural():
    e = Embedding(parse_frontier("[xxxy]* [xxxy]*"))
    w = nrational_witness(e, (0, -2), (2, -1))
    for res in w.residues:
        for mat in (res.mprime, res.core, res.m):
            assert all(x >= 0 for row in mat for x in row)
        assert all(x >= 0 for x in res.lam) and all(x >= 0 for x in res.gamma)


def test_two_power_to_single_power():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    w = nrational_witness(e, (0, -1), (1, 0))
    res = w.residues[0]
    single = res.to_linear()
    assert [single.value(n) for n in range(12)] == [res.value(n) for n in range(12)]


def test_tensor_hadamard():
    twos = LinearRep((1,), ((2,),), (1,))
    threes = LinearRep((1,), ((3,),), (1,))
    sixes = tensor_hadamard(twos, threes)
    assert [sixes.value(n) for n in range(10)] == [6**n for n in range(10)]

    count = LinearRep((1, 0), ((1, 1), (0, 1)), (1, 1))
    assert [count.value(n) for n in range(5)] == [1, 2, 3, 4, 5]
    squares = tensor_hadamard(count, count)
    assert [squares.value(n) for n in range(10)] == [(n + 1) ** 2 for n in range(10)]
