"""Valued diagrams, Cartan matrices, acyclic quivers, and their classification.

A Cartan matrix here is a generalized (integer, symmetrizable-zero-pattern)
one: 2 on the diagonal, nonpositive off the diagonal, C[i][j] = 0 iff
C[j][i] = 0, connected underlying graph. Classification matches the diagram
against the finite (Dynkin) and affine (Euclidean) catalogs by valued-graph
isomorphism; the additive/subadditive certificates give an independent
algebraic characterization of the same split.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import networkx as nx


class CartanValidationError(ValueError):
    axiom = "invalid"


class DiagonalNotTwo(CartanValidationError):
    axiom = "diagonal"


class PositiveOffDiagonal(CartanValidationError):
    axiom = "off-diagonal sign"


class AsymmetricZeroPattern(CartanValidationError):
    axiom = "zero pattern"


class Disconnected(CartanValidationError):
    axiom = "connectivity"


ADDITIVE = "Additive"
STRICTLY_SUBADDITIVE = "StrictlySubadditive"
VIOLATED = "Violated"


class CartanMatrix:
    """Validated integer Cartan matrix of a connected valued diagram."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[int]]):
        self.entries = tuple(tuple(int(v) for v in row) for row in entries)

    @property
    def d(self) -> int:
        return len(self.entries)

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges {i,j}, i < j, of the underlying graph."""
        n = self.d
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.entries[i][j]]

    def valuation(self, i: int, j: int) -> tuple[int, int]:
        """(|C_ij|, |C_ji|) for the edge {i,j}."""
        return (-self.entries[i][j], -self.entries[j][i])

    def neighbors(self, j: int) -> list[int]:
        return [i for i in range(self.d) if i != j and self.entries[i][j]]

    def relabeled(self, perm: Sequence[int]) -> "CartanMatrix":
        """New matrix with vertex k renamed perm[k]."""
        n = self.d
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[perm[i]][perm[j]] = self.entries[i][j]
        return CartanMatrix(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CartanMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "CartanMatrix(%r)" % (list(map(list, self.entries)),)


def validate_cartan(matrix: Sequence[Sequence[int]]) -> CartanMatrix:
    """Check the four axioms and return the validated matrix.

    Raises DiagonalNotTwo, PositiveOffDiagonal, AsymmetricZeroPattern, or
    Disconnected, naming the offending entries.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    for i in range(n):
        if matrix[i][i] != 2:
            raise DiagonalNotTwo("entry (%d,%d) = %d" % (i, i, matrix[i][i]))
    for i in range(n):
        for j in range(n):
            if i != j and matrix[i][j] > 0:
                raise PositiveOffDiagonal("entry (%d,%d) = %d" % (i, j, matrix[i][j]))
    for i in range(n):
        for j in range(i + 1, n):
            if (matrix[i][j] == 0) != (matrix[j][i] == 0):
                raise AsymmetricZeroPattern("entries (%d,%d)/(%d,%d)" % (i, j, j, i))
    seen = {0} if n else set()
    stack = [0] if n else []
    while stack:
        v = stack.pop()
        for u in range(n):
            if u != v and matrix[u][v] and u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != n:
        raise Disconnected("reached %d of %d vertices" % (len(seen), n))
    return CartanMatrix(matrix)


class CyclicOrientation(ValueError):
    """The arrow set contains a directed cycle."""


class Quiver:
    """A Cartan matrix with an acyclic orientation of its edges."""

    __slots__ = ("cartan", "arrows", "topological_order")

    def __init__(self, cartan: CartanMatrix, arrows: Iterable[tuple[int, int]]):
        self.cartan = cartan
        arrow_set = set()
        for i, j in arrows:
            if not cartan.entries[i][j]:
                raise ValueError("arrow %d->%d has no underlying edge" % (i, j))
            if (j, i) in arrow_set:
                raise ValueError("edge {%d,%d} oriented twice" % (i, j))
            arrow_set.add((i, j))
        for i, j in cartan.edges():
            if (i, j) not in arrow_set and (j, i) not in arrow_set:
                raise ValueError("edge {%d,%d} left unoriented" % (i, j))
        self.arrows = frozenset(arrow_set)
        self.topological_order = self._toposort()

    def _toposort(self) -> tuple[int, ...]:
        n = self.cartan.d
        indeg = [0] * n
        for _, j in self.arrows:
            indeg[j] += 1
        ready = sorted(v for v in range(n) if indeg[v] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for (a, b) in sorted(self.arrows):
                if a == v:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        ready.append(b)
            ready.sort()
        if len(order) != n:
            raise CyclicOrientation("orientation has a directed cycle")
        return tuple(order)

    def out_neighbors(self, j: int) -> list[int]:
        return sorted(i for (a, i) in self.arrows if a == j)

    def in_neighbors(self, j: int) -> list[int]:
        return sorted(i for (i, b) in self.arrows if b == j)

    def exponent(self, neighbor: int, vertex: int) -> int:
        """|C_ij| with i the neighbor and j the vertex whose step is computed."""
        return -self.cartan.entries[neighbor][vertex]

    def __repr__(self) -> str:
        return "Quiver(d=%d, arrows=%s)" % (self.cartan.d, sorted(self.arrows))


@dataclass(frozen=True)
class DiagramClass:
    tag: str          # "Dynkin" | "Euclidean" | "Indefinite"
    kind: Optional[str] = None
    m: Optional[int] = None

    def __str__(self) -> str:
        if self.tag == "Indefinite":
            return "Indefinite"
        return "%s(%s,%d)" % (self.tag, self.kind, self.m)


# ----------------------------------------------------------------------
# catalog construction
#
# Diagrams are given as edge lists {i,j} -> (|C_ij|, |C_ji|). The Dynkin
# catalog: paths A_m, the (1,2)/(2,1)-tailed paths B_m/C_m, forked paths
# D_m, the T-shapes E6-E8, F4, G2. The Euclidean catalog (X̃_m has m+1
# vertices): cycles Ã_m, single- and double-forked and valued-tailed paths
# B̃/C̃/D̃/B̃C/B̃D/C̃D, plus nine exceptional diagrams.


def _edges_to_cartan(d: int, edges: dict[tuple[int, int], tuple[int, int]]) -> CartanMatrix:
    m = [[2 if i == j else 0 for j in range(d)] for i in range(d)]
    for (i, j), (a, b) in edges.items():
        m[i][j] = -a
        m[j][i] = -b
    return validate_cartan(m)


def _path_edges(d: int) -> dict:
    return {(i, i + 1): (1, 1) for i in range(d - 1)}


def catalog_diagram(kind: str, m: int) -> CartanMatrix:
    """Build the catalog member named kind with index m."""
    if kind == "A":
        if m < 1:
            raise ValueError("A_m needs m >= 1")
        return _edges_to_cartan(m, _path_edges(m))
    if kind == "B":
        if m < 2:
            raise ValueError("B_m needs m >= 2")
        e = _path_edges(m)
        e[(m - 2, m - 1)] = (1, 2)
        return _edges_to_cartan(m, e)
    if kind == "C":
        if m < 3:
            raise ValueError("C_m needs m >= 3 (C_2 is B_2)")
        e = _path_edges(m)
        e[(m - 2, m - 1)] = (2, 1)
        return _edges_to_cartan(m, e)
    if kind == "D":
        if m < 4:
            raise ValueError("D_m needs m >= 4")
        e = _path_edges(m - 2)
        e[(m - 3, m - 2)] = (1, 1)
        e[(m - 3, m - 1)] = (1, 1)
        return _edges_to_cartan(m, e)
    if kind in ("E6", "E7", "E8"):
        arms = {"E6": (2, 2, 1), "E7": (3, 2, 1), "E8": (4, 2, 1)}[kind]
        return _edges_to_cartan(*_t_shape(arms))
    if kind == "F4":
        e = _path_edges(4)
        e[(1, 2)] = (1, 2)
        return _edges_to_cartan(4, e)
    if kind == "G2":
        return _edges_to_cartan(2, {(0, 1): (1, 3)})

    if kind == "Atilde":
        if m < 2:
            raise ValueError("Atilde_m needs m >= 2 (m=1 is the Kronecker diagram Atilde11)")
        e = _path_edges(m + 1)
        e[(0, m)] = (1, 1)
        return _edges_to_cartan(m + 1, e)
    if kind == "Btilde":
        if m < 3:
            raise ValueError("Btilde_m needs m >= 3")
        e = {(0, 2): (1, 1), (1, 2): (1, 1)}
        e.update({(i, i + 1): (1, 1) for i in range(2, m)})
        e[(m - 1, m)] = (1, 2)
        return _edges_to_cartan(m + 1, e)
    if kind == "Ctilde":
        if m < 2:
            raise ValueError("Ctilde_m needs m >= 2")
        e = _path_edges(m + 1)
        e[(0, 1)] = (2, 1)
        e[(m - 1, m)] = (1, 2)
        return _edges_to_cartan(m + 1, e)
    if kind == "Dtilde":
        if m < 4:
            raise ValueError("Dtilde_m needs m >= 4")
        e = {(0, 2): (1, 1), (1, 2): (1, 1), (m - 2, m - 1): (1, 1), (m - 2, m): (1, 1)}
        e.update({(i, i + 1): (1, 1) for i in range(2, m - 2)})
        return _edges_to_cartan(m + 1, e)
    if kind == "BCtilde":
        if m < 2:
            raise ValueError("BCtilde_m needs m >= 2")
        e = _path_edges(m + 1)
        e[(0, 1)] = (1, 2)
        e[(m - 1, m)] = (1, 2)
        return _edges_to_cartan(m + 1, e)
    if kind == "BDtilde":
        if m < 3:
            raise ValueError("BDtilde_m needs m >= 3")
        e = {(0, 2): (1, 1), (1, 2): (1, 1)}
        e.update({(i, i + 1): (1, 1) for i in range(2, m)})
        e[(m - 1, m)] = (2, 1)
        return _edges_to_cartan(m + 1, e)
    if kind == "CDtilde":
        if m < 2:
            raise ValueError("CDtilde_m needs m >= 2")
        e = _path_edges(m + 1)
        e[(0, 1)] = (1, 2)
        e[(m - 1, m)] = (2, 1)
        return _edges_to_cartan(m + 1, e)
    if kind == "Atilde11":
        return _edges_to_cartan(2, {(0, 1): (2, 2)})
    if kind == "Atilde12":
        return _edges_to_cartan(2, {(0, 1): (1, 4)})
    if kind in ("Etilde6", "Etilde7", "Etilde8"):
        arms = {"Etilde6": (2, 2, 2), "Etilde7": (3, 3, 1), "Etilde8": (5, 2, 1)}[kind]
        return _edges_to_cartan(*_t_shape(arms))
    if kind == "Ftilde41":
        e = _path_edges(5)
        e[(2, 3)] = (2, 1)
        return _edges_to_cartan(5, e)
    if kind == "Ftilde42":
        e = _path_edges(5)
        e[(2, 3)] = (1, 2)
        return _edges_to_cartan(5, e)
    if kind == "Gtilde21":
        e = _path_edges(3)
        e[(1, 2)] = (3, 1)
        return _edges_to_cartan(3, e)
    if kind == "Gtilde22":
        e = _path_edges(3)
        e[(1, 2)] = (1, 3)
        return _edges_to_cartan(3, e)
    raise ValueError("unknown diagram kind %r" % (kind,))


def _t_shape(arms: tuple[int, int, int]) -> tuple[int, dict]:
    # vertex 0 is the branch point; arms are attached as paths
    edges = {}
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges[(min(prev, nxt), max(prev, nxt))] = (1, 1)
            prev = nxt
            nxt += 1
    return nxt, edges


DYNKIN_KINDS = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
EUCLIDEAN_SERIES = ("Atilde", "Btilde", "Ctilde", "Dtilde", "BCtilde", "BDtilde", "CDtilde")
EUCLIDEAN_EXCEPTIONAL = (
    "Atilde11", "Atilde12", "Etilde6", "Etilde7", "Etilde8",
    "Ftilde41", "Ftilde42", "Gtilde21", "Gtilde22",
)

_FIXED_INDEX = {
    "E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2,
    "Etilde6": 6, "Etilde7": 7, "Etilde8": 8,
    "Ftilde41": 4, "Ftilde42": 4, "Gtilde21": 2, "Gtilde22": 2,
    "Atilde11": 1, "Atilde12": 1,
}

_MIN_INDEX = {"A": 1, "B": 2, "C": 3, "D": 4,
              "Atilde": 2, "Btilde": 3, "Ctilde": 2, "Dtilde": 4,
              "BCtilde": 2, "BDtilde": 3, "CDtilde": 2}


def catalog_members(d: int) -> list[tuple[str, str, int, CartanMatrix]]:
    """All catalog diagrams on exactly d vertices, as (tag, kind, m, C)."""
    out = []
    for kind in ("A", "B", "C", "D"):
        if d >= _MIN_INDEX[kind]:
            out.append(("Dynkin", kind, d, catalog_diagram(kind, d)))
    for kind in ("E6", "E7", "E8", "F4", "G2"):
        if _FIXED_INDEX[kind] == d:
            out.append(("Dynkin", kind, d, catalog_diagram(kind, d)))
    m = d - 1
    for kind in EUCLIDEAN_SERIES:
        if m >= _MIN_INDEX[kind]:
            out.append(("Euclidean", kind, m, catalog_diagram(kind, m)))
    for kind in EUCLIDEAN_EXCEPTIONAL:
        if _FIXED_INDEX[kind] + 1 == d:
            out.append(("Euclidean", kind, _FIXED_INDEX[kind], catalog_diagram(kind, _FIXED_INDEX[kind])))
    return out


def _valued_digraph(c: CartanMatrix) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(c.d))
    for i in range(c.d):
        for j in range(c.d):
            if i != j and c.entries[i][j]:
                g.add_edge(i, j, w=-c.entries[i][j])
    return g


def classify(c: CartanMatrix) -> DiagramClass:
    """Match against the catalog by valued-graph isomorphism."""
    g = _valued_digraph(c)
    for tag, kind, m, member in catalog_members(c.d):
        h = _valued_digraph(member)
        if nx.is_isomorphic(g, h, edge_match=lambda e1, e2: e1["w"] == e2["w"]):
            return DiagramClass(tag, kind, m)
    return DiagramClass("Indefinite")


# ----------------------------------------------------------------------
# additive / subadditive certificates


def _rational_nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the nullspace of the given matrix, exact arithmetic."""
    m = [row[:] for row in rows]
    nrows, ncols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        m[r] = [v / inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -m[row_idx][fc]
        basis.append(v)
    return basis


def find_additive_function(c: CartanMatrix) -> Optional[dict[int, Fraction]]:
    """A strictly positive f with sum_i f(i) C_ij = 0, min value 1, if any."""
    rows = [[Fraction(c.entries[i][j]) for i in range(c.d)] for j in range(c.d)]
    basis = _rational_nullspace(rows)
    candidates = list(basis)
    if len(basis) > 1:
        candidates.append([sum(col) for col in zip(*basis)])
    for v in candidates:
        if all(x > 0 for x in v) or all(x < 0 for x in v):
            if v[0] < 0:
                v = [-x for x in v]
            lo = min(v)
            return {i: x / lo for i, x in enumerate(v)}
    return None


def check_subadditive(c: CartanMatrix, f: dict[int, Fraction]) -> str:
    """Classify f as Additive, StrictlySubadditive, or Violated for C."""
    if any(Fraction(f[v]) <= 0 for v in range(c.d)):
        raise ValueError("vertex function must be strictly positive")
    strict = False
    for j in range(c.d):
        lhs = 2 * Fraction(f[j])
        rhs = sum(Fraction(f[i]) * (-c.entries[i][j]) for i in c.neighbors(j))
        if lhs < rhs:
            return VIOLATED
        if lhs > rhs:
            strict = True
    return STRICTLY_SUBADDITIVE if strict else ADDITIVE


# ----------------------------------------------------------------------
# orientations and input formats


def default_quiver(kind: str, m: int) -> Quiver:
    """Catalog diagram with its documented default orientation.

    Paths, forks and T-shapes orient every edge from the lower vertex id to
    the higher. Atilde_m uses the cycle orientation encoded by the word
    x^m y (arrows 0->1->...->m plus 0->m). Dtilde_m uses the fork
    convention of the nine-step construction: 0->2, 1->2, middle path
    2->3->...->(m-2), far fork (m-2)->(m-1) and m->(m-2).
    """
    c = catalog_diagram(kind, m)
    if kind == "Atilde":
        arrows = [(i, i + 1) for i in range(m)] + [(0, m)]
        return Quiver(c, arrows)
    if kind == "Dtilde":
        arrows = [(0, 2), (1, 2), (m - 2, m - 1), (m, m - 2)]
        arrows += [(i, i + 1) for i in range(2, m - 2)]
        return Quiver(c, arrows)
    return Quiver(c, list(c.edges()))


_SHORTHAND_ALIASES = {"kronecker": ("Atilde11", 1)}


def parse_shorthand(text: str) -> Quiver:
    """Resolve names like A3, Atilde3, Dtilde7, BCtilde4, kronecker."""
    name = text.strip()
    if name.lower() in _SHORTHAND_ALIASES:
        kind, m = _SHORTHAND_ALIASES[name.lower()]
        return default_quiver(kind, m)
    if name in _FIXED_INDEX:
        return default_quiver(name, _FIXED_INDEX[name])
    for kind in sorted(_MIN_INDEX, key=len, reverse=True):
        if name.startswith(kind):
            suffix = name[len(kind):]
            if suffix.isdigit():
                return default_quiver(kind, int(suffix))
    raise ValueError("unrecognized diagram shorthand %r" % (text,))


def quiver_from_json(obj: dict) -> Quiver:
    """Read {"vertices": d, "edges": [{"from": i, "to": j, "val": [a, b]}]}.

    For an arrow i->j, val[0] = |C_ji| (exponent of the target's value in
    the source's own step) and val[1] = |C_ij|.
    """
    d = obj["vertices"]
    m = [[2 if i == j else 0 for j in range(d)] for i in range(d)]
    arrows = []
    for e in obj["edges"]:
        i, j = e["from"], e["to"]
        a, b = e.get("val", [1, 1])
        m[j][i] = -a
        m[i][j] = -b
        arrows.append((i, j))
    return Quiver(validate_cartan(m), arrows)


def quiver_to_json(q: Quiver) -> dict:
    edges = []
    for i, j in sorted(q.arrows):
        edges.append({"from": i, "to": j,
                      "val": [-q.cartan.entries[j][i], -q.cartan.entries[i][j]]})
    return {"vertices": q.cartan.d, "edges": edges}
