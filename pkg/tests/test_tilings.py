import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact._fixtures import load_grid
from artifact.tilings import (
    Embedding,
    Frontier,
    InadmissibleFrontier,
    PeriodicFrontier,
    PointOnOrAboveFrontier,
    Ray,
    brute_fill,
    frontier_to_text,
    parse_frontier,
    periodic_frontier,
    pythagorean_triple,
    ray_values,
    square_frontier,
    swap_word,
    tile_grid,
    tile_value,
    transpose_word,
    verify_quadratic_lemma,
    verify_sl2,
    verify_square_lemma,
    word_of_point,
    word_value,
)

# The big staircase grid: head of the right tail, continued by an xy zigzag.
PREFIX = "xyxxxyyyyyxyyyx"

words = st.text(alphabet="xy", min_size=0, max_size=10)


def test_transpose_and_swap():
    assert transpose_word("xxxy") == "xyyy"
    assert transpose_word("xy") == "xy"
    assert swap_word("xxxy") == "yyyx"
    assert transpose_word(PREFIX) == "yxxxyxxxxxyyyxy"


@given(words)
def test_transpose_involution(w):
    assert transpose_word(transpose_word(w)) == w
    assert swap_word(swap_word(w)) == w
    assert transpose_word(w) == swap_word(w[::-1])


def test_frontier_parse_and_render():
    fr = parse_frontier("[xy]* yyx [xxy]*")
    assert (fr.left, fr.center, fr.right) == ("xy", "yyx", "xxy")
    assert frontier_to_text(fr) == "[xy]* yyx [xxy]*"
    empty = parse_frontier("[xxxy]*   [xxxy]*")
    assert empty.center == ""
    assert frontier_to_text(empty) == "[xxxy]* [xxxy]*"
    assert parse_frontier(frontier_to_text(empty)) == empty
    with pytest.raises(ValueError):
        parse_frontier("[xy] yx [xy]*")
    with pytest.raises(ValueError):
        Frontier("xz", "", "xy")


def test_frontier_admissibility():
    with pytest.raises(InadmissibleFrontier):
        Frontier("xx", "y", "xy")
    with pytest.raises(InadmissibleFrontier):
        Frontier("xy", "y", "yyy")
    with pytest.raises(InadmissibleFrontier):
        Frontier("", "y", "xy")


def test_frontier_letter_indexing():
    fr = Frontier("xy", "yx", "xxy")
    assert [fr.letter(i) for i in range(2, 8)] == list("xxyxxy")
    assert fr.letter(-1) == "y" and fr.letter(-2) == "x" and fr.letter(-3) == "y"
    assert fr.factor(-2, 4) == "xyyxxx"


def test_word_of_point_corner():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    assert word_of_point(e, (1, -1)) == "yx"
    assert tile_value(e, (1, -1)) == 2
    with pytest.raises(PointOnOrAboveFrontier):
        word_of_point(e, (0, 0))
    with pytest.raises(PointOnOrAboveFrontier):
        word_of_point(e, (0, 5))


def test_illustration_point():
    # lone zigzag bump: the cut factor of the point under its far corner
    e = Embedding(Frontier("xy", "yyyxxyx", "xy"))
    assert word_of_point(e, (3, 0)) == "yyyxxyx"
    assert tile_value(e, (3, 0)) == 17
    region = (0, -2, 5, 2)
    assert tile_grid(e, region) == brute_fill(e, region)


@given(st.text(alphabet="xy", min_size=0, max_size=12))
def test_word_value_matches_stripped_form(mid):
    # absorbing the leading y and trailing x into the boundary vectors
    w = "y" + mid + "x"
    a, b = 1, 1
    for ch in mid:
        a, b = (a, a + b) if ch == "x" else (a + b, b)
    assert word_value(w) == a + b


@given(words.filter(bool))
def test_word_value_transpose_invariant(w):
    assert word_value(w) == word_value(transpose_word(w))


def _check_fixture(name, to_uv, e, region):
    printed = load_grid(name)
    assert printed
    grid = tile_grid(e, region)
    assert grid == brute_fill(e, region)
    verify_sl2(grid)
    for (r, c), val in printed.items():
        assert grid[to_uv(r, c)] == val, ((r, c), val)
    return grid


def intro_embedding() -> Embedding:
    return Embedding(Frontier("xy", transpose_word(PREFIX) + "yy" + PREFIX, "xy"))


def test_intro_grid():
    e = intro_embedding()
    grid = _check_fixture("intro_grid.tsv", lambda r, c: (c, 9 - r), e, (0, 0, 13, 9))
    assert grid[(10, 0)] == 576
    assert word_of_point(e, (10, 3)) == "yyxyyyx"
    assert grid[(10, 3)] == 14


def test_atilde3_grid():
    e = Embedding(parse_frontier("[xxxy]* [xxxy]*"))
    _check_fixture("atilde3_grid.tsv", lambda r, c: (c - 3, 3 - r), e, (-3, -2, 9, 3))
    diags = [ray_values(e, e.vertex(j), (1, -1), 3).values for j in range(4)]
    assert diags == [(1, 2, 14), (1, 3, 19), (1, 4, 43), (1, 9, 67)]


def test_quadratic_grid():
    e = Embedding(periodic_frontier("xyxx", 1, 0))
    _check_fixture("quadratic_grid.tsv", lambda r, c: (c - 4, 8 - r), e, (-4, -3, 6, 8))
    # corner rays on both corners of the period
    assert ray_values(e, (4, 2), (1, 0), 3).values == (1, 4, 19)
    assert ray_values(e, (4, 1), (1, -1), 3).values == (2, 32, 722)
    assert ray_values(e, (4, 0), (1, -1), 2).values == (7, 151)
    assert ray_values(e, (-1, 0), (0, -1), 4).values == (1, 2, 5, 8)
    assert ray_values(e, (0, 0), (1, -1), 3).values == (1, 4, 25)
    assert ray_values(e, (1, 0), (1, -1), 3).values == (1, 9, 39)


def test_staircase_diagonal_ray():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    region = (-1, -4, 4, 1)
    assert tile_grid(e, region) == brute_fill(e, region)
    # hugging diagonal: grows fast rather than staying constant
    assert ray_values(e, (1, -1), (1, -1), 3).values == (2, 13, 89)


def test_mirror_side():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    assert e.classify((0, 2)) == "above"
    assert tile_value(e, (0, 1)) == 2
    assert tile_value(e, (0, 2)) == 5
    assert tile_value(e, (-1, 1)) == 5


def test_intro_square_lemma():
    e = square_frontier((PREFIX, "xy"), 0)
    assert e.frontier == intro_embedding().frontier
    assert e.point_i == (9, 7)
    assert e.i_values(5) == (1, 2, 5, 8, 11)
    assert e.j_values(5) == (1, 4, 25, 64, 121)
    assert e.k_values(4) == (1, 9, 39, 87)
    assert e.k_right_values(4) == (3, 11, 41, 89)
    checks = verify_square_lemma(e, 8)
    assert all(c["square_ok"] and c["product_ok"] for c in checks)
    i = e.i_values(5)
    assert all(kr == i[n] * i[n + 1] + 1 for n, kr in enumerate(e.k_right_values(4)))
    assert pythagorean_triple(e, 0) == (5, 3, 4)
    assert pythagorean_triple(e, 1) == (29, 21, 20)


def test_square_lemma_rotated_quadratic_block():
    # the right period block of the h=1, h'=0 frontier, rotated to start just
    # past its upper corner, exposes the doubled-square diagonal
    fr = periodic_frontier("xyxx", 1, 0)
    cut = len(fr.w) + fr.h + 2
    e = square_frontier(fr.right[cut:] + fr.right[:cut], fr.h)
    assert e.frontier.center == "yxy"
    assert e.j_values(3) == (2, 32, 722)
    assert e.k_values(1) == (7,)
    assert all(c["square_ok"] and c["product_ok"] for c in verify_square_lemma(e, 5))
    assert pythagorean_triple(e, 0) == (34, 30, 16)


def test_square_lemma_deeper_notch():
    e = square_frontier("xxyy", 2)
    iu, iv = e.point_i
    region = (iu - 2, iv - 5, iu + 5, iv + 1)
    assert tile_grid(e, region) == brute_fill(e, region)
    assert all(c["square_ok"] and c["product_ok"] for c in verify_square_lemma(e, 4))
    assert e.j_values(1) == (3 * e.i_values(1)[0] ** 2,)


def test_periodic_frontier_blocks():
    fr = periodic_frontier("xyxx", 1, 0)
    assert fr.left == "xyxxxyxyyxyxx"
    assert fr.right == "xyxxyxyyyxyyy"
    assert fr.center == ""
    # both-letter degeneracy only happens for the empty seed with no notch
    with pytest.raises(InadmissibleFrontier):
        periodic_frontier("", 0, 0)
    periodic_frontier("x", 0, 0)
    periodic_frontier("", 1, 0)
    with pytest.raises(ValueError):
        periodic_frontier("xy", -1, 0)


def test_quadratic_lemma_checks():
    e = Embedding(periodic_frontier("xyxx", 1, 0))
    res = verify_quadratic_lemma(e, 4)
    assert res["all_ok"]
    assert {c["pair"] for c in res["cases"]} == {"xy", "yx", "xx"}
    assert len(res["primed"]) == 5

    # a single-letter seed has no interior positions to check
    res1 = verify_quadratic_lemma(Embedding(periodic_frontier("x", 1, 1)), 3)
    assert res1["cases"] == [] and res1["all_ok"]

    with pytest.raises(TypeError):
        verify_quadratic_lemma(Embedding(parse_frontier("[xy]* [xy]*")), 2)


def test_quadratic_lemma_sweep():
    from itertools import product

    seeds = ["".join(p) for n in range(4) for p in product("xy", repeat=n)]
    for w in seeds:
        for h in range(3):
            for hp in range(3):
                if w == "" and h == 0 and hp == 0:
                    continue
                res = verify_quadratic_lemma(Embedding(periodic_frontier(w, h, hp)), 3)
                assert res["all_ok"], (w, h, hp)


def _random_frontier(rng: random.Random) -> Frontier:
    def block() -> str:
        n = rng.randint(2, 6)
        letters = ["x", "y"] + [rng.choice("xy") for _ in range(n - 2)]
        rng.shuffle(letters)
        return "".join(letters)

    center = "".join(rng.choice("xy") for _ in range(rng.randint(0, 6)))
    return Frontier(block(), center, block())


def test_fuzz_tile_matches_brute_fill():
    rng = random.Random(7)
    for _ in range(30):
        e = Embedding(_random_frontier(rng))
        du, dv = rng.randint(-6, 1), rng.randint(-6, 1)
        region = (du, dv, du + 7, dv + 7)
        grid = tile_grid(e, region)
        assert grid == brute_fill(e, region)
        verify_sl2(grid)
        assert min(grid.values()) >= 1


def test_ray_validation():
    e = Embedding(parse_frontier("[xy]* [xy]*"))
    with pytest.raises(ValueError):
        ray_values(e, (0, 0), (1, 1), 3)
    with pytest.raises(ValueError):
        ray_values(e, (0, 0), (0, 0), 3)
    ray = ray_values(e, (2, 0), (1, 0), 4)
    assert isinstance(ray, Ray)
    assert ray.values[0] == tile_value(e, (2, 0))
