"""SL2-tilings of the discrete plane attached to an admissible frontier.

A frontier is a bi-infinite word over {x,y}, encoded ultimately
periodically as (left block)^inf CENTER (right block)^inf. Its embedding
walks x as (+1,0) and y as (0,+1); every path vertex gets value 1, and
each lattice point strictly below the path gets the value

    t(P) = (1,1) M(x_2) ... M(x_n) (1,1)^T,  M(x)=[[1,1],[0,1]], M(y)=[[1,0],[1,1]]

where x_1..x_{n+1} is the frontier factor cut out by projecting P onto the
path (first and last letters dropped). Points above the path go through
the mirrored embedding. brute_fill recomputes grids purely from the
unimodularity of 2x2 blocks and is kept as an independent oracle.

The adjacent-diagonal relation everywhere: with A=t(u,v), B=t(u+1,v),
C=t(u,v+1), D=t(u+1,v+1) it reads C*B - D*A = 1.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

Point = tuple[int, int]
Region = tuple[int, int, int, int]


class InadmissibleFrontier(ValueError):
    """A frontier tail misses one of the letters x, y."""


class PointOnOrAboveFrontier(ValueError):
    """word_of_point is defined only strictly below the path."""


class NonIntegralCompletion(ArithmeticError):
    """A 2x2 completion produced a non-integer or nonpositive value."""


class UnreachableCell(RuntimeError):
    """brute_fill could not determine a requested cell."""


def transpose_word(w: str) -> str:
    """Reverse the word and swap x with y."""
    return "".join("x" if ch == "y" else "y" for ch in reversed(w))


def swap_word(w: str) -> str:
    """Swap x with y, keeping the order."""
    return "".join("x" if ch == "y" else "y" for ch in w)


def _check_letters(w: str, what: str) -> str:
    if any(ch not in "xy" for ch in w):
        raise ValueError("%s must use only letters x and y, got %r" % (what, w))
    return w


class Frontier:
    """Ultimately periodic bi-infinite word; center starts at index 0."""

    __slots__ = ("left", "center", "right")

    def __init__(self, left: str, center: str, right: str):
        self.left = _check_letters(left, "left block")
        self.center = _check_letters(center, "center")
        self.right = _check_letters(right, "right block")
        if not left or not right:
            raise InadmissibleFrontier("tail blocks must be nonempty")
        for block, side in ((left, "left"), (right, "right")):
            if "x" not in block or "y" not in block:
                raise InadmissibleFrontier("%s tail is ultimately constant: %r" % (side, block))

    def letter(self, i: int) -> str:
        if 0 <= i < len(self.center):
            return self.center[i]
        if i >= len(self.center):
            return self.right[(i - len(self.center)) % len(self.right)]
        return self.left[i % len(self.left)]

    def factor(self, start: int, stop: int) -> str:
        """Letters start..stop-1."""
        return "".join(self.letter(i) for i in range(start, stop))

    def transpose(self) -> "Frontier":
        return Frontier(
            transpose_word(self.right), transpose_word(self.center), transpose_word(self.left)
        )

    def swapped(self) -> "Frontier":
        return Frontier(swap_word(self.left), swap_word(self.center), swap_word(self.right))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Frontier):
            return NotImplemented
        return (self.left, self.center, self.right) == (other.left, other.center, other.right)

    def __repr__(self) -> str:
        return "Frontier(%r, %r, %r)" % (self.left, self.center, self.right)


_FRONTIER_RE = re.compile(r"^\s*\[([xy]+)\]\*\s*([xy]*)\s*\[([xy]+)\]\*\s*$")


def parse_frontier(text: str) -> Frontier:
    """Parse the ASCII form `[LEFT]* CENTER [RIGHT]*` (center may be empty)."""
    m = _FRONTIER_RE.match(text)
    if not m:
        raise ValueError("cannot parse frontier spec %r" % (text,))
    return Frontier(m.group(1), m.group(2), m.group(3))


def frontier_to_text(fr: Frontier) -> str:
    mid = " %s " % fr.center if fr.center else " "
    return "[%s]*%s[%s]*" % (fr.left, mid, fr.right)


_STEP = {"x": (1, 0), "y": (0, 1)}


class Embedding:
    """Frontier walked into the plane; vertex i sits between letters i-1, i."""

    def __init__(self, frontier: Frontier, anchor: Point = (0, 0)):
        self.frontier = frontier
        self.anchor = anchor
        self._fwd: list[Point] = [anchor]  # V_0, V_1, ...
        self._bwd: list[Point] = [anchor]  # V_0, V_-1, ...
        self._mirror: Optional["Embedding"] = None

    def letter(self, i: int) -> str:
        return self.frontier.letter(i)

    def vertex(self, i: int) -> Point:
        if i >= 0:
            while len(self._fwd) <= i:
                k = len(self._fwd)
                u, v = self._fwd[k - 1]
                du, dv = _STEP[self.letter(k - 1)]
                self._fwd.append((u + du, v + dv))
            return self._fwd[i]
        while len(self._bwd) <= -i:
            k = len(self._bwd)
            u, v = self._bwd[k - 1]
            du, dv = _STEP[self.letter(-k)]
            self._bwd.append((u - du, v - dv))
        return self._bwd[-i]

    # The walk is monotone in both coordinates, so runs of constant u (or v)
    # are contiguous in the vertex index and can be found by expanding the
    # cached walk past the target and scanning.

    def _index_range_covering(self, coord: int, axis: int) -> tuple[int, int]:
        lo = 0
        while self.vertex(lo)[axis] >= coord:
            lo -= 1
        hi = 0
        while self.vertex(hi)[axis] <= coord:
            hi += 1
        return lo, hi

    def _run(self, coord: int, axis: int) -> tuple[int, int]:
        lo, hi = self._index_range_covering(coord, axis)
        first = last = None
        for i in range(lo, hi + 1):
            if self.vertex(i)[axis] == coord:
                if first is None:
                    first = i
                last = i
        if first is None:
            # a single step jumped over the coordinate: impossible for unit steps
            raise AssertionError("frontier misses coordinate %d on axis %d" % (coord, axis))
        return first, last

    def column_run(self, u: int) -> tuple[int, int]:
        """Vertex indices entering and leaving column u."""
        return self._run(u, 0)

    def row_run(self, v: int) -> tuple[int, int]:
        return self._run(v, 1)

    def classify(self, p: Point) -> str:
        """'below', 'on', or 'above' the frontier path."""
        u, v = p
        ilo, ihi = self.column_run(u)
        if v < self.vertex(ilo)[1]:
            return "below"
        if v <= self.vertex(ihi)[1]:
            return "on"
        return "above"

    def mirror(self) -> "Embedding":
        """Letter-swapped frontier: reflecting across the main diagonal
        carries this path onto it and swaps the two sides of the plane."""
        if self._mirror is None:
            self._mirror = Embedding(self.frontier.swapped(), (self.anchor[1], self.anchor[0]))
        return self._mirror

    def mirror_point(self, p: Point) -> Point:
        return (p[1], p[0])


def word_span(e: Embedding, p: Point) -> tuple[int, int]:
    """Letter indices (first, last) of the word of a below point."""
    if e.classify(p) != "below":
        raise PointOnOrAboveFrontier("point %r is not strictly below the frontier" % (p,))
    u, v = p
    first = e.row_run(v)[1]  # the y leaving the rightmost vertex at height v
    last = e.column_run(u)[0] - 1  # the x entering the lowest vertex over u
    return first, last


def word_of_point(e: Embedding, p: Point) -> str:
    """Frontier factor between the two projections of a below point."""
    first, last = word_span(e, p)
    word = e.frontier.factor(first, last + 1)
    assert word[0] == "y" and word[-1] == "x" and len(word) >= 2
    return word


def word_value(word: str) -> int:
    """(0,1) M(word) (0,1)^T over all letters of the word."""
    a, b = 0, 1
    for ch in _check_letters(word, "word"):
        if ch == "x":
            a, b = a, a + b
        else:
            a, b = a + b, b
    return b


def _inner_value(word: str) -> int:
    # (1,1) M(x_2) ... M(x_n) (1,1)^T, first and last letters dropped
    a, b = 1, 1
    for ch in word[1:-1]:
        if ch == "x":
            a, b = a, a + b
        else:
            a, b = a + b, b
    return a + b


def tile_value(e: Embedding, p: Point) -> int:
    """The tiling value at any lattice point; frontier vertices give 1."""
    side = e.classify(p)
    if side == "on":
        return 1
    if side == "above":
        return tile_value(e.mirror(), e.mirror_point(p))
    return _inner_value(word_of_point(e, p))


# ----------------------------------------------------------------------
# independent oracle: fill a rectangle from the frontier by 2x2 completions


def brute_fill(e: Embedding, region: Region) -> dict[Point, int]:
    """Fill region (u0,v0,u1,v1) inclusive using only unimodular 2x2 blocks.

    Seeds 1 on every frontier vertex of an enlarged box, then repeatedly
    solves any 2x2 block with exactly one unknown corner. Shares no code
    with tile_value.
    """
    u0, v0, u1, v1 = region
    if u0 > u1 or v0 > v1:
        raise ValueError("empty region %r" % (region,))
    lo = 0
    while not (e.vertex(lo)[0] < u0 - 1 and e.vertex(lo)[1] < v0 - 1):
        lo -= 1
    hi = 0
    while not (e.vertex(hi)[0] > u1 + 1 and e.vertex(hi)[1] > v1 + 1):
        hi += 1
    walk = [e.vertex(i) for i in range(lo, hi + 1)]
    us = [p[0] for p in walk] + [u0, u1]
    vs = [p[1] for p in walk] + [v0, v1]
    bu0, bu1, bv0, bv1 = min(us), max(us), min(vs), max(vs)

    known: dict[Point, int] = {p: 1 for p in walk}
    pending = deque(known)

    def corners(a: int, b: int) -> tuple[Point, Point, Point, Point]:
        return (a, b), (a + 1, b), (a, b + 1), (a + 1, b + 1)

    def solve(a: int, b: int) -> None:
        sq = corners(a, b)
        missing = [q for q in sq if q not in known]
        if len(missing) != 1:
            return
        pa, pb, pc, pd = sq
        target = missing[0]
        va, vb, vc, vd = (known.get(q) for q in sq)
        # C*B - D*A = 1 with A,B the bottom and C,D the top corners
        if target == pa:
            num, den = vc * vb - 1, vd
        elif target == pd:
            num, den = vc * vb - 1, va
        elif target == pc:
            num, den = 1 + vd * va, vb
        else:
            num, den = 1 + vd * va, vc
        q, r = divmod(num, den)
        if r or q < 1:
            raise NonIntegralCompletion(
                "cell %r: %d / %d is not a positive integer" % (target, num, den)
            )
        known[target] = q
        pending.append(target)

    while pending:
        u, v = pending.popleft()
        for a in (u - 1, u):
            for b in (v - 1, v):
                if bu0 <= a and a + 1 <= bu1 and bv0 <= b and b + 1 <= bv1:
                    solve(a, b)

    missing = [(u, v) for u in range(u0, u1 + 1) for v in range(v0, v1 + 1) if (u, v) not in known]
    if missing:
        raise UnreachableCell("cells not determined: %s..." % (missing[:4],))
    return {(u, v): known[(u, v)] for u in range(u0, u1 + 1) for v in range(v0, v1 + 1)}


def tile_grid(e: Embedding, region: Region) -> dict[Point, int]:
    """The same rectangle as brute_fill, through the word formula."""
    u0, v0, u1, v1 = region
    return {(u, v): tile_value(e, (u, v)) for u in range(u0, u1 + 1) for v in range(v0, v1 + 1)}


def verify_sl2(grid: dict[Point, int]) -> None:
    """Check C*B - D*A = 1 on every complete 2x2 block of the grid."""
    for (u, v), va in grid.items():
        vb = grid.get((u + 1, v))
        vc = grid.get((u, v + 1))
        vd = grid.get((u + 1, v + 1))
        if None in (vb, vc, vd):
            continue
        if vc * vb - vd * va != 1:
            raise ValueError("unimodularity fails at the block with corner %r" % ((u, v),))


# ----------------------------------------------------------------------
# rays


@dataclass(frozen=True)
class Ray:
    origin: Point
    direction: Point
    values: tuple[int, ...]


def ray_values(e: Embedding, origin: Point, direction: Point, count: int) -> Ray:
    """Values t(origin + n*direction) for n = 0..count-1."""
    a, b = direction
    if (a, b) == (0, 0):
        raise ValueError("direction must be nonzero")
    if a * b > 0:
        raise ValueError("direction (%d,%d) must satisfy a*b <= 0" % (a, b))
    vals = tuple(
        tile_value(e, (origin[0] + n * a, origin[1] + n * b)) for n in range(count)
    )
    return Ray(origin, direction, vals)


# ----------------------------------------------------------------------
# frontiers with a distinguished corner: perfect squares and triples


class SquareEmbedding(Embedding):
    """Embedding of ts . y x^h y . s with the corner vertices exposed.

    s may be a plain block (purely periodic) or a (head, block) pair for an
    ultimately periodic right side.
    """

    def __init__(self, s: Union[str, tuple[str, str]], h: int):
        if h < 0:
            raise ValueError("h must be a natural number")
        head, block = ("", s) if isinstance(s, str) else s
        _check_letters(head, "head")
        center = transpose_word(head) + "y" + "x" * h + "y" + head
        super().__init__(Frontier(transpose_word(block), center, block))
        self.h = h
        self._corner_index = len(head) + h + 1

    @property
    def point_i(self) -> Point:
        return self.vertex(self._corner_index)

    @property
    def point_j(self) -> Point:
        u, v = self.point_i
        return (u, v - 1)

    @property
    def point_k(self) -> Point:
        u, v = self.point_i
        return (u, v - 2)

    def i_values(self, count: int) -> tuple[int, ...]:
        return ray_values(self, self.point_i, (1, 0), count).values

    def j_values(self, count: int) -> tuple[int, ...]:
        return ray_values(self, self.point_j, (1, -1), count).values

    def k_values(self, count: int) -> tuple[int, ...]:
        return ray_values(self, self.point_k, (1, -1), count).values

    def k_right_values(self, count: int) -> tuple[int, ...]:
        u, v = self.point_j
        return ray_values(self, (u + 1, v), (1, -1), count).values


def square_frontier(s: Union[str, tuple[str, str]], h: int) -> SquareEmbedding:
    """Embed ts y x^h y s; i runs right from the corner, j and k run diagonally."""
    return SquareEmbedding(s, h)


def verify_square_lemma(e: SquareEmbedding, n_max: int) -> list[dict]:
    """Check j_n = (h+1) i_n^2 and k_n + 1 = (h+1) i_n i_{n+1} for n <= n_max."""
    i = e.i_values(n_max + 2)
    j = e.j_values(n_max + 1)
    k = e.k_values(n_max + 1)
    w = e.h + 1
    return [
        {
            "n": n,
            "square_ok": j[n] == w * i[n] ** 2,
            "product_ok": k[n] + 1 == w * i[n] * i[n + 1],
        }
        for n in range(n_max + 1)
    ]


def pythagorean_triple(e: SquareEmbedding, n: int) -> tuple[int, int, int]:
    """(j_{n+1}+j_n, j_{n+1}-j_n, k_n+k'_n), a Pythagorean triple."""
    j = e.j_values(n + 2)
    k = e.k_values(n + 1)
    kr = e.k_right_values(n + 1)
    a, b, c = j[n + 1] + j[n], j[n + 1] - j[n], k[n] + kr[n]
    assert a * a == b * b + c * c, (a, b, c)
    return (a, b, c)


# ----------------------------------------------------------------------
# the periodic frontier of the quadratic construction


class PeriodicFrontier(Frontier):
    """Frontier ^inf(w x y^h x tw x y^h' x)(w y x^h y tw y x^h' y)^inf."""

    __slots__ = ("w", "h", "hp")

    def __init__(self, w: str, h: int, hp: int):
        _check_letters(w, "w")
        if h < 0 or hp < 0:
            raise ValueError("h and h' must be natural numbers")
        tw = transpose_word(w)
        left = w + "x" + "y" * h + "x" + tw + "x" + "y" * hp + "x"
        right = w + "y" + "x" * h + "y" + tw + "y" + "x" * hp + "y"
        super().__init__(left, "", right)
        self.w = w
        self.h = h
        self.hp = hp
        self._check_transpose_symmetry()

    def _check_transpose_symmetry(self) -> None:
        # reading right of the upper corner must be the transpose of reading
        # left of it, and likewise around the lower corner
        k = len(self.w)
        upper = k + self.h + 2  # s starts here
        lower = -(self.hp + 3)  # s' ends here
        for step in range(50):
            assert transpose_word(self.letter(upper + step)) == self.letter(k - 1 - step)
            assert transpose_word(self.letter(lower - step)) == self.letter(step)


def periodic_frontier(w: str, h: int, hp: int) -> PeriodicFrontier:
    return PeriodicFrontier(w, h, hp)


def verify_quadratic_lemma(e: Embedding, n_max: int) -> dict:
    """Check the four-case diagonal recursion along w, plus the primed
    square and product identities, on the periodic frontier embedding."""
    fr = e.frontier
    if not isinstance(fr, PeriodicFrontier):
        raise TypeError("embedding must come from periodic_frontier")
    k = len(fr.w)
    b = [ray_values(e, e.vertex(j), (1, -1), n_max + 2).values for j in range(k + 1)]
    cases = []
    for j in range(1, k):
        pair = fr.w[j - 1] + fr.w[j]
        for n in range(n_max + 1):
            if pair == "xx":
                rhs = b[j - 1][n + 1] * b[j + 1][n]
            elif pair == "xy":
                rhs = b[j - 1][n + 1] * b[j + 1][n + 1]
            elif pair == "yx":
                rhs = b[j - 1][n] * b[j + 1][n]
            else:
                rhs = b[j - 1][n] * b[j + 1][n + 1]
            cases.append(
                {"j": j, "n": n, "pair": pair, "ok": b[j][n] * b[j][n + 1] == 1 + rhs}
            )
    iu, iv = e.vertex(-(fr.hp + 1))
    ip = ray_values(e, (iu, iv), (0, -1), n_max + 2).values
    jp = ray_values(e, (iu + 1, iv), (1, -1), n_max + 1).values
    kp = ray_values(e, (iu + 2, iv), (1, -1), n_max + 1).values
    w = fr.hp + 1
    primed = [
        {
            "n": n,
            "square_ok": jp[n] == w * ip[n] ** 2,
            "product_ok": kp[n] + 1 == w * ip[n] * ip[n + 1],
        }
        for n in range(n_max + 1)
    ]
    all_ok = all(c["ok"] for c in cases) and all(
        p["square_ok"] and p["product_ok"] for p in primed
    )
    return {"cases": cases, "primed": primed, "all_ok": all_ok}
