"""Laurent polynomials with integer coefficients over named variables.

The intended carrier is the semiring of Laurent polynomials with natural
coefficients; subtraction exists on the type because determinant checks
need it, but every value meant to be a tiling entry or a cluster variable
must satisfy ``is_natural()`` (checked at the producing call sites).
Denominators are always monomials, absorbed as negative exponents.
"""

from __future__ import annotations

import random
from typing import Iterable, Mapping, Union

import numpy as np

Scalar = Union[int, "LaurentPoly"]

# Term-pair count above which multiplication and division switch from the
# tuple-keyed dicts to packed integer exponent keys.
_FAST_PAIRS = 1 << 15


class NonMonomialDivisor(ValueError):
    """Raised when monomial division is attempted with a non-monomial."""


class ExactDivisionError(ArithmeticError):
    """Raised when an exact Laurent division leaves a remainder."""


def _var_key(name: str) -> tuple[int, str]:
    # (length, text) so u2 sorts before u10
    return (len(name), name)


class LaurentPoly:
    """Immutable Laurent polynomial, canonical on construction.

    Canonical form: the variable universe is the sorted tuple of variables
    that actually occur with a nonzero exponent; terms map dense exponent
    tuples to nonzero integer coefficients.
    """

    __slots__ = ("_vars", "_terms")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[tuple[int, ...], int] | None = None):
        vs = tuple(variables)
        tm = {tuple(e): int(c) for e, c in (terms or {}).items() if c}
        for e in tm:
            if len(e) != len(vs):
                raise ValueError("exponent tuple length does not match variable count")
        # prune variables with exponent 0 in every term, then sort the rest
        used = [i for i in range(len(vs)) if any(e[i] for e in tm)]
        vs_used = [vs[i] for i in used]
        order = sorted(range(len(vs_used)), key=lambda i: _var_key(vs_used[i]))
        self._vars = tuple(vs_used[i] for i in order)
        self._terms = {}
        for e, c in tm.items():
            key = tuple(e[used[i]] for i in order)
            self._terms[key] = self._terms.get(key, 0) + c
        for key in [k for k, c in self._terms.items() if c == 0]:
            del self._terms[key]

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def nat(n: int) -> "LaurentPoly":
        return LaurentPoly((), {(): n} if n else {})

    @staticmethod
    def var(name: str, exponent: int = 1) -> "LaurentPoly":
        return LaurentPoly((name,), {(exponent,): 1})

    @staticmethod
    def monomial(coeff: int, exponents: Mapping[str, int]) -> "LaurentPoly":
        names = tuple(exponents)
        return LaurentPoly(names, {tuple(exponents[v] for v in names): coeff})

    @staticmethod
    def coerce(value: Scalar) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return LaurentPoly.nat(value)

    # ------------------------------------------------------------------
    # introspection

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_natural(self) -> bool:
        """True when every coefficient is a positive integer."""
        return all(c > 0 for c in self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def as_int(self) -> int:
        if self._vars:
            raise ValueError("not a constant: %s" % self)
        if not self._terms:
            return 0
        return self._terms[()]

    def min_exponents(self) -> dict[str, int]:
        """Per-variable minimum exponent over all terms (the monomial content)."""
        if not self._terms:
            return {v: 0 for v in self._vars}
        mins = {}
        for i, v in enumerate(self._vars):
            mins[v] = min(e[i] for e in self._terms)
        return mins

    def numerator_denominator(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Split into (polynomial numerator, monomial denominator)."""
        mins = self.min_exponents()
        den_exps = {v: -m for v, m in mins.items() if m < 0}
        den = LaurentPoly.monomial(1, den_exps) if den_exps else LaurentPoly.nat(1)
        return self * den, den

    # ------------------------------------------------------------------
    # ring operations

    def _aligned(self, other: "LaurentPoly") -> tuple[tuple[str, ...], dict, dict]:
        if self._vars == other._vars:
            return self._vars, self._terms, other._terms
        union = sorted(set(self._vars) | set(other._vars), key=_var_key)
        pos = {v: i for i, v in enumerate(union)}

        def remap(p: "LaurentPoly") -> dict:
            idx = [pos[v] for v in p._vars]
            out = {}
            for e, c in p._terms.items():
                key = [0] * len(union)
                for i, ex in zip(idx, e):
                    key[i] = ex
                out[tuple(key)] = c
            return out

        return tuple(union), remap(self), remap(other)

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        vs, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(vs, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        vs, a, b = self._aligned(other)
        if vs and len(a) * len(b) >= _FAST_PAIRS:
            return LaurentPoly(vs, _mul_packed(len(vs), a, b))
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise NonMonomialDivisor("negative power of a non-monomial")
            ((e, c),) = self._terms.items()
            if c != 1:
                raise NonMonomialDivisor("negative power needs unit coefficient")
            return LaurentPoly(self._vars, {tuple(x * n for x in e): 1})
        if n == 1:
            return self
        result = LaurentPoly.nat(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monomial_div(self, divisor: Scalar) -> "LaurentPoly":
        """Exact division by a single-term divisor (an exponent shift)."""
        divisor = LaurentPoly.coerce(divisor)
        if not divisor.is_monomial():
            raise NonMonomialDivisor("divisor has %d terms" % len(divisor._terms))
        vs, a, b = self._aligned(divisor)
        ((de, dc),) = b.items()
        out = {}
        for e, c in a.items():
            if c % dc:
                raise ExactDivisionError("coefficient %d not divisible by %d" % (c, dc))
            out[tuple(x - y for x, y in zip(e, de))] = c // dc
        return LaurentPoly(vs, out)

    def exact_div(self, divisor: Scalar) -> "LaurentPoly":
        """Exact division by an arbitrary Laurent polynomial.

        Strips the monomial content of both operands, divides the remaining
        polynomials under lexicographic term order, and re-applies the
        content quotient. Raises ExactDivisionError when no exact Laurent
        quotient exists.
        """
        divisor = LaurentPoly.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return LaurentPoly.nat(0)
        if divisor.is_monomial():
            return self.monomial_div(divisor)
        vs, a, b = self._aligned(divisor)
        nv = len(vs)
        a_min = tuple(min(e[i] for e in a) for i in range(nv))
        b_min = tuple(min(e[i] for e in b) for i in range(nv))
        num = {tuple(x - m for x, m in zip(e, a_min)): c for e, c in a.items()}
        den = {tuple(x - m for x, m in zip(e, b_min)): c for e, c in b.items()}
        quo = _poly_divide(num, den)
        shift = tuple(x - y for x, y in zip(a_min, b_min))
        return LaurentPoly(vs, {tuple(x + s for x, s in zip(e, shift)): c for e, c in quo.items()})

    def subst(self, mapping: Mapping[str, Scalar]) -> "LaurentPoly":
        """Substitute variables by naturals or Laurent polynomials.

        Values for variables that occur with negative exponents are divided
        out exactly at the end (one common division), so substituting a
        tiling value at 1 never meets a fractional intermediate.
        """
        if self.is_zero():
            return LaurentPoly.nat(0)
        values = {v: LaurentPoly.coerce(mapping[v]) for v in self._vars if v in mapping}
        shift = {}
        for i, v in enumerate(self._vars):
            if v in values:
                low = min(e[i] for e in self._terms)
                shift[v] = max(0, -low)
        total = LaurentPoly.nat(0)
        for e, c in self._terms.items():
            term = LaurentPoly.nat(c)
            exps = {}
            for i, v in enumerate(self._vars):
                if v in values:
                    term = term * values[v] ** (e[i] + shift[v])
                else:
                    exps[v] = e[i]
            if exps:
                term = term * LaurentPoly.monomial(1, exps)
            total = total + term
        divisor = LaurentPoly.nat(1)
        for v, s in shift.items():
            if s:
                divisor = divisor * values[v] ** s
        return total.exact_div(divisor)

    # ------------------------------------------------------------------
    # comparison, hashing, rendering

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.nat(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._vars, frozenset(self._terms.items())))

    def sort_key(self) -> tuple:
        return (self._vars, tuple(sorted(self._terms.items())))

    def __str__(self) -> str:
        num, den = self.numerator_denominator()
        s = _poly_str(num)
        if den == LaurentPoly.nat(1):
            return s
        if len(num._terms) > 1:
            s = "(%s)" % s
        d = _poly_str(den)
        if "*" in d:  # keep the monomial denominator one visual unit
            d = "(%s)" % d
        return "%s/%s" % (s, d)

    def __repr__(self) -> str:
        return "LaurentPoly(%s)" % self

    def to_json_obj(self) -> dict:
        """Serialize as {"num": [[coeff, [exponents]]...], "vars": [...]}."""
        items = sorted(self._terms.items(), reverse=True)
        return {"num": [[c, list(e)] for e, c in items], "vars": list(self._vars)}


def _mul_packed(nv: int, a: dict, b: dict) -> dict:
    """Multiply two aligned term dicts via packed integer exponent keys.

    Every exponent vector is packed into one integer, one bit field per
    variable, sized so that key addition never carries between fields.
    Small-coefficient products run through numpy (outer sums coalesced by
    bincount, exact below 2**53); anything larger falls back to a plain
    dict loop over packed keys, which stays exact for arbitrary integers.
    """
    lo_a = [0] * nv
    hi_a = [0] * nv
    lo_b = [0] * nv
    hi_b = [0] * nv
    for terms, lo, hi in ((a, lo_a, hi_a), (b, lo_b, hi_b)):
        for e in terms:
            for j, ex in enumerate(e):
                if ex < lo[j]:
                    lo[j] = ex
                elif ex > hi[j]:
                    hi[j] = ex
    widths = [((hi_a[j] - lo_a[j]) + (hi_b[j] - lo_b[j])).bit_length() + 1 for j in range(nv)]
    shifts = [0] * nv
    total = 0
    for j in range(nv):
        shifts[j] = total
        total += widths[j]

    def pack(terms: dict, lo: list) -> dict:
        out = {}
        for e, c in terms.items():
            key = 0
            for j, ex in enumerate(e):
                key |= (ex - lo[j]) << shifts[j]
            out[key] = c
        return out

    dense = _mul_dense(nv, a, b, lo_a, hi_a, lo_b, hi_b)
    if dense is not None:
        return dense

    pa, pb = pack(a, lo_a), pack(b, lo_b)
    amax = max(abs(c) for c in pa.values())
    bmax = max(abs(c) for c in pb.values())
    if total <= 62 and amax * bmax * min(len(pa), len(pb)) < (1 << 52):
        packed = _mul_numpy(pa, pb)
    else:
        packed = {}
        get = packed.get
        if len(pa) > len(pb):
            pa, pb = pb, pa
        for k1, c1 in pa.items():
            for k2, c2 in pb.items():
                k = k1 + k2
                v = get(k, 0) + c1 * c2
                if v:
                    packed[k] = v
                elif k in packed:
                    del packed[k]

    out: dict[tuple[int, ...], int] = {}
    for key, c in packed.items():
        if not c:
            continue
        e = tuple(((key >> shifts[j]) & ((1 << widths[j]) - 1)) + lo_a[j] + lo_b[j]
                  for j in range(nv))
        out[e] = c
    return out


def _mul_numpy(pa: dict, pb: dict) -> dict:
    """Outer sums of packed int64 keys, coalesced chunk by chunk."""
    ka = np.fromiter(pa.keys(), dtype=np.int64, count=len(pa))
    ca = np.fromiter(pa.values(), dtype=np.int64, count=len(pa))
    kb = np.fromiter(pb.keys(), dtype=np.int64, count=len(pb))
    cb = np.fromiter(pb.values(), dtype=np.int64, count=len(pb))
    block = max(1, (1 << 24) // len(kb))
    parts_k = []
    parts_c = []
    for start in range(0, len(ka), block):
        keys = (ka[start:start + block, None] + kb[None, :]).ravel()
        cfs = (ca[start:start + block, None] * cb[None, :]).ravel()
        uniq, inv = np.unique(keys, return_inverse=True)
        sums = np.bincount(inv, weights=cfs.astype(np.float64), minlength=len(uniq))
        parts_k.append(uniq)
        parts_c.append(sums)
    keys = np.concatenate(parts_k)
    uniq, inv = np.unique(keys, return_inverse=True)
    sums = np.bincount(inv, weights=np.concatenate(parts_c), minlength=len(uniq))
    totals = sums.astype(np.int64)
    keep = totals != 0
    return dict(zip(uniq[keep].tolist(), totals[keep].tolist()))


def _limb_split(vals: list, w: int) -> list:
    """Split integers into balanced base-2**w limb rows (sign on each limb)."""
    mask = (1 << w) - 1
    rows = max((abs(v).bit_length() + w - 1) // w for v in vals)
    out = np.zeros((max(rows, 1), len(vals)), dtype=np.int64)
    for i, v in enumerate(vals):
        sign = 1 if v >= 0 else -1
        mag = abs(v)
        j = 0
        while mag:
            out[j, i] = sign * (mag & mask)
            mag >>= w
            j += 1
    return list(out)


def _mul_dense(nv: int, a: dict, b: dict,
               lo_a: list, hi_a: list, lo_b: list, hi_b: list) -> dict | None:
    """Product on a dense exponent grid via histogram sums, or None.

    A product's exponents live in the componentwise sum of the factor
    boxes. When that box fits the cell budget, each block of pairwise
    products is binned straight into it with np.bincount, no sorting.
    Coefficients too large for one exact float64 histogram are split into
    limbs narrow enough that every per-class histogram stays below 2**52
    (three bits spare for summing limb classes), then the classes are
    recombined into Python integers. Returns None when the box, the limb
    count, or the pair count make another route cheaper.
    """
    if nv == 0:
        return None
    cells = 1
    for j in range(nv):
        cells *= (hi_a[j] - lo_a[j]) + (hi_b[j] - lo_b[j]) + 1
        if cells > _DENSE_CELLS:
            return None
    na, nb = len(a), len(b)
    smaller = min(na, nb)
    amax = max(abs(c) for c in a.values())
    bmax = max(abs(c) for c in b.values())
    if amax * bmax * smaller < (1 << 52):
        la = [np.fromiter(a.values(), dtype=np.int64, count=na)]
        lb = [np.fromiter(b.values(), dtype=np.int64, count=nb)]
        w = 0
    else:
        w = (49 - smaller.bit_length()) >> 1
        if w < 8:
            return None
        la = _limb_split(list(a.values()), w)
        lb = _limb_split(list(b.values()), w)
    classes = len(la) + len(lb) - 1
    if classes * cells > (1 << 25):
        return None

    strides = [0] * nv
    acc = 1
    for j in range(nv - 1, -1, -1):
        strides[j] = acc
        acc *= (hi_a[j] - lo_a[j]) + (hi_b[j] - lo_b[j]) + 1

    def flatten(terms: dict, lo: list) -> np.ndarray:
        return np.fromiter(
            (sum((e[j] - lo[j]) * strides[j] for j in range(nv)) for e in terms),
            dtype=np.int64, count=len(terms))

    fa, fb = flatten(a, lo_a), flatten(b, lo_b)
    sums = [np.zeros(cells) for _ in range(classes)]
    block = max(1, (1 << 24) // nb)
    for start in range(0, na, block):
        idx = (fa[start:start + block, None] + fb[None, :]).ravel()
        for i, lai in enumerate(la):
            rows = lai[start:start + block, None]
            for j, lbj in enumerate(lb):
                cfs = (rows * lbj[None, :]).ravel().astype(np.float64)
                sums[i + j] += np.bincount(idx, weights=cfs, minlength=cells)

    mask = sums[0] != 0
    for s in range(1, classes):
        mask |= sums[s] != 0
    nz = np.flatnonzero(mask)
    if classes == 1:
        vals = sums[0][nz].astype(np.int64).tolist()
    else:
        combined = sums[0][nz].astype(np.int64).astype(object)
        for s in range(1, classes):
            combined += sums[s][nz].astype(np.int64).astype(object) * (1 << (w * s))
        vals = combined.tolist()

    out: dict[tuple[int, ...], int] = {}
    base = [lo_a[j] + lo_b[j] for j in range(nv)]
    for f, c in zip(nz.tolist(), vals):
        if not c:
            continue
        e = [0] * nv
        for j in range(nv):
            e[j], f = divmod(f, strides[j])
            e[j] += base[j]
        out[tuple(e)] = c
    return out


# Dense-route ceilings: exponent-box cells (memory) and the int64 budget
# (every remainder entry and every q * c product must stay below 2**62,
# enforced dynamically step by step).
_DENSE_CELLS = 1 << 23
_INT64_BUDGET = 1 << 62


def _poly_divide(num: dict, den: dict) -> dict:
    """Exact polynomial division of term dicts under lex order."""
    if num and len(num) * len(den) >= _FAST_PAIRS:
        quo = _div_dense(num, den)
        if quo is not None:
            return quo
        return _div_packed(num, den)
    lead_d = max(den)
    quo: dict[tuple[int, ...], int] = {}
    rem = dict(num)
    while rem:
        lead_r = max(rem)
        diff = tuple(x - y for x, y in zip(lead_r, lead_d))
        if any(d < 0 for d in diff):
            raise ExactDivisionError("no exact quotient (monomial obstruction)")
        c_r, c_d = rem[lead_r], den[lead_d]
        if c_r % c_d:
            raise ExactDivisionError("no exact quotient (coefficient obstruction)")
        q = c_r // c_d
        quo[diff] = q
        for e, c in den.items():
            key = tuple(x + y for x, y in zip(e, diff))
            val = rem.get(key, 0) - q * c
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return quo


def _div_dense(num: dict, den: dict) -> dict | None:
    """Long division on a dense mixed-radix exponent grid, or None.

    The remainder lives in a flat int64 array indexed by the mixed-radix
    packed exponent (most significant variable first, so integer order is
    lex order). An exact quotient can only involve exponents inside the
    numerator's box, which bounds every write: each quotient exponent is
    checked componentwise before its den-multiple is subtracted, all at
    once, through vectorized fancy indexing. The lex-leading remainder
    term only ever decreases, so one descending pointer sweep finds every
    lead. Overflow safety is dynamic: with R the largest remainder entry
    seen so far and D the largest divisor entry, a step only runs while
    |q|*D < 2**62 - R, which keeps every product and difference inside
    int64. Returns None when the box or that budget is outgrown; the
    caller then uses an arbitrary-precision route.
    """
    nv = len(next(iter(num)))
    if nv == 0:
        return None
    lo = [0] * nv
    hi = [0] * nv
    for terms in (num, den):
        for e in terms:
            for j, ex in enumerate(e):
                if ex < lo[j]:
                    lo[j] = ex
                elif ex > hi[j]:
                    hi[j] = ex
    cells = 1
    for j in range(nv):
        cells *= hi[j] - lo[j] + 1
        if cells > _DENSE_CELLS:
            return None
    r_max = max(abs(c) for c in num.values())
    d_max = max(abs(c) for c in den.values())
    if r_max >= _INT64_BUDGET or d_max >= _INT64_BUDGET:
        return None

    strides = [0] * nv
    acc = 1
    for j in range(nv - 1, -1, -1):
        strides[j] = acc
        acc *= hi[j] - lo[j] + 1

    def flat(e: tuple) -> int:
        idx = 0
        for j, ex in enumerate(e):
            idx += (ex - lo[j]) * strides[j]
        return idx

    rem = np.zeros(cells, dtype=np.int64)
    for e, c in num.items():
        rem[flat(e)] = c
    den_idx = np.fromiter((flat(e) for e in den), dtype=np.int64, count=len(den))
    den_cf = np.fromiter(den.values(), dtype=np.int64, count=len(den))
    lead_pos = int(den_idx.argmax())
    lead_d = int(den_idx[lead_pos])
    c_d = int(den_cf[lead_pos])
    ld_slots = [0] * nv
    k = lead_d
    for j in range(nv):
        ld_slots[j], k = divmod(k, strides[j])
    # den's componentwise maximum, for the stay-in-box bound on quotients
    den_hi = [max(e[j] - lo[j] for e in den) for j in range(nv)]
    span = [hi[j] - lo[j] for j in range(nv)]

    quo: dict[tuple[int, ...], int] = {}
    chunk = 4096
    p = cells - 1
    while p >= 0:
        if rem[p] == 0:
            base = max(0, p - chunk + 1)
            nz = np.flatnonzero(rem[base:p + 1])
            if len(nz) == 0:
                p = base - 1
                continue
            p = base + int(nz[-1])
        d_slots = [0] * nv
        k = p
        for j in range(nv):
            q_j, k = divmod(k, strides[j])
            d = q_j - ld_slots[j]
            if d < 0:
                raise ExactDivisionError("no exact quotient (monomial obstruction)")
            if d + den_hi[j] > span[j]:
                raise ExactDivisionError("no exact quotient (exponent out of range)")
            d_slots[j] = d
        c_r = int(rem[p])
        if c_r % c_d:
            raise ExactDivisionError("no exact quotient (coefficient obstruction)")
        q = c_r // c_d
        if abs(q) * d_max >= _INT64_BUDGET - r_max:
            return None  # next subtract could wrap int64; retry exactly
        idx = den_idx + (p - lead_d)
        vals = rem[idx] - q * den_cf
        rem[idx] = vals
        step_max = int(np.abs(vals).max())
        if step_max > r_max:
            r_max = step_max
        quo[tuple(d_slots)] = q
    return quo


def _div_packed(num: dict, den: dict) -> dict:
    """Long division over packed integer exponent keys.

    Fields are laid out most-significant-first, so integer order on packed
    keys equals lex order on exponent tuples. Every quotient exponent is
    range-checked before it is used: each component must be nonnegative
    (same obstruction as the tuple path) and no larger than the combined
    exponent span, which no exact quotient can exceed. Within those bounds
    field arithmetic never carries, so the packed run is exact.
    """
    nv = len(next(iter(num)))
    lo = [0] * nv
    hi = [0] * nv
    for terms in (num, den):
        for e in terms:
            for j, ex in enumerate(e):
                if ex < lo[j]:
                    lo[j] = ex
                elif ex > hi[j]:
                    hi[j] = ex
    spans = [hi[j] - lo[j] for j in range(nv)]
    widths = [(2 * spans[j]).bit_length() + 1 for j in range(nv)]
    shifts = [0] * nv
    total = 0
    for j in range(nv - 1, -1, -1):  # slot 0 most significant: lex order
        shifts[j] = total
        total += widths[j]

    def pack(e: tuple) -> int:
        key = 0
        for j, ex in enumerate(e):
            key |= (ex - lo[j]) << shifts[j]
        return key

    rem = {pack(e): c for e, c in num.items()}
    den_list = [(pack(e), c) for e, c in den.items()]
    lead_d = max(k for k, _ in den_list)
    c_d = dict(den_list)[lead_d]
    ld_slots = [(lead_d >> shifts[j]) & ((1 << widths[j]) - 1) for j in range(nv)]

    quo: dict[int, int] = {}
    get = rem.get
    while rem:
        lead_r = max(rem)
        for j in range(nv):
            d = ((lead_r >> shifts[j]) & ((1 << widths[j]) - 1)) - ld_slots[j]
            if d < 0:
                raise ExactDivisionError("no exact quotient (monomial obstruction)")
            if d > spans[j]:
                raise ExactDivisionError("no exact quotient (exponent out of range)")
        diff = lead_r - lead_d
        c_r = rem[lead_r]
        if c_r % c_d:
            raise ExactDivisionError("no exact quotient (coefficient obstruction)")
        q = c_r // c_d
        quo[diff] = q
        for k0, c in den_list:
            key = k0 + diff
            val = get(key, 0) - q * c
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return {
        tuple((key >> shifts[j]) & ((1 << widths[j]) - 1) for j in range(nv)): c
        for key, c in quo.items()
    }


def _poly_str(p: LaurentPoly) -> str:
    if not p._terms:
        return "0"
    parts = []
    for e, c in sorted(p._terms.items(), reverse=True):
        factors = []
        for name, ex in zip(p._vars, e):
            if ex == 1:
                factors.append(name)
            elif ex:
                factors.append("%s^%d" % (name, ex))
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        elif c == -1:
            parts.append("-" + "*".join(factors))
        else:
            parts.append("%d*%s" % (c, "*".join(factors)))
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


ONE = LaurentPoly.nat(1)


# ----------------------------------------------------------------------
# 2x2 matrices over the Laurent ring


class Mat2:
    """2x2 matrix with Laurent (or integer) entries."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Scalar, b: Scalar, c: Scalar, d: Scalar):
        self.a = LaurentPoly.coerce(a)
        self.b = LaurentPoly.coerce(b)
        self.c = LaurentPoly.coerce(c)
        self.d = LaurentPoly.coerce(d)

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> LaurentPoly:
        return self.a * self.d - self.b * self.c

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __repr__(self) -> str:
        return "Mat2[[%s, %s], [%s, %s]]" % (self.a, self.b, self.c, self.d)


def step_matrix(a: Scalar, letter: str, b: Scalar) -> Mat2:
    """M(a,x,b) = [[a,1],[0,b]]; M(a,y,b) = [[b,0],[1,a]].

    Setting a = b = 1 recovers the integer step matrices
    M(x) = [[1,1],[0,1]] and M(y) = [[1,0],[1,1]].
    """
    if letter == "x":
        return Mat2(a, 1, 0, b)
    if letter == "y":
        return Mat2(b, 0, 1, a)
    raise ValueError("letter must be 'x' or 'y', got %r" % (letter,))


def row_times_mat(row: tuple[Scalar, Scalar], m: Mat2) -> tuple[LaurentPoly, LaurentPoly]:
    r0, r1 = LaurentPoly.coerce(row[0]), LaurentPoly.coerce(row[1])
    return (r0 * m.a + r1 * m.c, r0 * m.b + r1 * m.d)


def vec_dot(row: tuple[LaurentPoly, LaurentPoly], col: tuple[Scalar, Scalar]) -> LaurentPoly:
    return row[0] * LaurentPoly.coerce(col[0]) + row[1] * LaurentPoly.coerce(col[1])


# ----------------------------------------------------------------------
# determinant checks on large values

def products_differ_by_one(p: Scalar, q: Scalar, r: Scalar, s: Scalar) -> bool:
    """Exact check that p*q - r*s == 1.

    Equivalent to ``p * q - r * s == LaurentPoly.nat(1)`` but packs each
    exponent vector into a single integer so the two big products run as
    int-keyed dict convolutions. Slot widths are sized to hold the sum of
    any two occurring exponents, so packed keys add without carries.
    """
    p, q, r, s = (LaurentPoly.coerce(v) for v in (p, q, r, s))
    polys = (p, q, r, s)
    union = sorted({v for f in polys for v in f._vars}, key=_var_key)
    pos = {v: i for i, v in enumerate(union)}
    n = len(union)
    lo = [0] * n
    hi = [0] * n
    for f in polys:
        idx = [pos[v] for v in f._vars]
        for e in f._terms:
            for j, ex in zip(idx, e):
                if ex < lo[j]:
                    lo[j] = ex
                elif ex > hi[j]:
                    hi[j] = ex

    shifts = []
    shift = 0
    for j in range(n):
        shifts.append(shift)
        shift += (2 * (hi[j] - lo[j]) + 1).bit_length() + 1

    def pack(f: LaurentPoly) -> dict[int, int]:
        idx = [pos[v] for v in f._vars]
        out = {}
        for e, c in f._terms.items():
            full = [0] * n
            for j, ex in zip(idx, e):
                full[j] = ex
            key = 0
            for j in range(n):
                key += (full[j] - lo[j]) << shifts[j]
            out[key] = c
        return out

    acc: dict[int, int] = {}
    get = acc.get
    for left, right, sign in ((p, q, 1), (r, s, -1)):
        a, b = pack(left), pack(right)
        if len(a) > len(b):
            a, b = b, a
        for k1, c1 in a.items():
            c1 *= sign
            for k2, c2 in b.items():
                k = k1 + k2
                v = get(k, 0) + c1 * c2
                if v:
                    acc[k] = v
                elif k in acc:
                    del acc[k]
    one_key = sum((0 - 2 * lo[j]) << shifts[j] for j in range(n))
    return acc == {one_key: 1}


# ----------------------------------------------------------------------
# bordered-product determinant identities

def _det_rows(top: tuple[Scalar, Scalar], bottom: tuple[Scalar, Scalar]) -> LaurentPoly:
    t0, t1 = (LaurentPoly.coerce(v) for v in top)
    b0, b1 = (LaurentPoly.coerce(v) for v in bottom)
    return t0 * b1 - t1 * b0


def _chain(row: tuple[Scalar, Scalar], mats: Iterable[Mat2]) -> tuple[LaurentPoly, LaurentPoly]:
    acc = (LaurentPoly.coerce(row[0]), LaurentPoly.coerce(row[1]))
    for m in mats:
        acc = row_times_mat(acc, m)
    return acc


def _x_run(labels: list) -> list[Mat2]:
    return [step_matrix(labels[i], "x", labels[i + 1]) for i in range(len(labels) - 1)]


def _y_run(labels: list) -> list[Mat2]:
    return [step_matrix(labels[i], "y", labels[i + 1]) for i in range(len(labels) - 1)]


def verify_det_identities(instances: int = 100, rng_seed: int = 17,
                          max_param: int = 5, max_chain: int = 3) -> dict:
    """Random exact checks of the bordered-product determinant identities.

    Three identities over a commutative ring, each checked on ``instances``
    random draws of naturals and small monomials:

    * factorization: with p = l.A.g, q = l.A.g', r = l'.A.g, s = l'.A.g',
      det [[p,q],[r,s]] = det(A) * det(rows l, l') * det(cols g, g');
    * bordered rows: for l' = (1,a).M(b1,x,b2)...M(b_{k-1},x,b_k).M(b_k,y,b)
      and l = (1,b_k), det with l' on top is b1...b_k*b (the opposite row
      order flips the sign; the positive orientation here was fixed by a
      direct k=1 computation);
    * crossing: the four products p = (1,b_k).A.(1,c1)^T, ...,
      s = (1,a).[x-run].M(b_k,y,b).A.M(c,x,c1).[y-run].(1,d)^T satisfy
      det [[p,q],[r,s]] = b1...b_k * b * c * c1...c_l * det(A).

    Failures are counted, not raised; callers treat any failure as fatal.
    """
    rng = random.Random(rng_seed)

    def scalar() -> LaurentPoly:
        if rng.random() < 0.5:
            return LaurentPoly.nat(rng.randint(1, max_param))
        name = rng.choice("efgh")
        return LaurentPoly.monomial(rng.randint(1, 3), {name: rng.choice((-1, 1))})

    def vec2() -> tuple[LaurentPoly, LaurentPoly]:
        return (scalar(), scalar())

    def mat() -> Mat2:
        return Mat2(scalar(), scalar(), scalar(), scalar())

    report = {"instances": instances, "factorization_failures": 0,
              "bordered_rows_failures": 0, "crossing_failures": 0}
    for _ in range(instances):
        # factorization
        A, lam, lamp, gam, gamp = mat(), vec2(), vec2(), vec2(), vec2()
        pp = vec_dot(row_times_mat(lam, A), gam)
        qq = vec_dot(row_times_mat(lam, A), gamp)
        rr = vec_dot(row_times_mat(lamp, A), gam)
        ss = vec_dot(row_times_mat(lamp, A), gamp)
        lhs = pp * ss - qq * rr
        rhs = A.det() * _det_rows(lam, lamp) * _det_rows(gam, gamp)
        if lhs != rhs:
            report["factorization_failures"] += 1

        # bordered rows
        k = rng.randint(1, max_chain)
        a = scalar()
        bs = [scalar() for _ in range(k)]
        b = scalar()
        lamp = _chain((LaurentPoly.nat(1), a), _x_run(bs) + [step_matrix(bs[-1], "y", b)])
        lam = (LaurentPoly.nat(1), bs[-1])
        prod = b
        for f in bs:
            prod = prod * f
        if _det_rows(lamp, lam) != prod:
            report["bordered_rows_failures"] += 1

        # crossing
        l = rng.randint(1, max_chain)
        c = scalar()
        cs = [scalar() for _ in range(l)]
        d = scalar()
        A = mat()
        left_full = _x_run(bs) + [step_matrix(bs[-1], "y", b)]
        right_full = [step_matrix(c, "x", cs[0])] + _y_run(cs)

        def col_through(mats: list[Mat2], tail: tuple[LaurentPoly, LaurentPoly]):
            col = (LaurentPoly.coerce(tail[0]), LaurentPoly.coerce(tail[1]))
            for m in reversed(mats):
                col = (m.a * col[0] + m.b * col[1], m.c * col[0] + m.d * col[1])
            return col

        one = LaurentPoly.nat(1)
        g = (one, cs[0])
        gp = col_through(right_full, (one, d))
        lam = (one, bs[-1])
        lamp = _chain((one, a), left_full)
        pp = vec_dot(row_times_mat(lam, A), g)
        qq = vec_dot(row_times_mat(lam, A), gp)
        rr = vec_dot(row_times_mat(lamp, A), g)
        ss = vec_dot(row_times_mat(lamp, A), gp)
        rhs = prod * c * A.det()
        for f in cs:
            rhs = rhs * f
        if pp * ss - qq * rr != rhs:
            report["crossing_failures"] += 1

    report["all_ok"] = not (report["factorization_failures"]
                            or report["bordered_rows_failures"]
                            or report["crossing_failures"])
    return report
