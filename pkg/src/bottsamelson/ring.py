"""The Bott-Samelson ring of a word, from its quadratic presentation.

Relations are ``q_m = x_m^2 - (sum_l q_lm x_l)^2``; eliminating squares with
the earlier reduced relations gives ``q'_k = x_k^2 - sum_{i<j<k} d^k_ij x_i x_j``.
Elements are stored on the square-free basis ``x^I``, ``I`` a bitmask with
bit ``i-1`` for x_i.  Within a degree, basis masks are sorted numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from . import kernels
from .coxeter import CoxeterWord, format_order
from .demazure import QMatrix, q_matrix
from .numeric import Matrix, same_backend
from .polynomial import Poly, format_terms


def popcount(mask):
    return bin(mask).count("1")


def mask_of(positions):
    """Bitmask of 1-based positions."""
    mask = 0
    for i in positions:
        if i < 1:
            raise ValueError(f"positions are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def positions_of(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def basis_masks(n, k):
    """Canonical order of B^k: masks with k bits, ascending."""
    if not 0 <= k <= n:
        return []
    return [m for m in range(1 << n) if popcount(m) == k]


@dataclass(frozen=True)
class Presentation:
    word: CoxeterWord
    backend: object
    qmatrix: QMatrix
    raw: tuple = field(repr=False)
    reduced: tuple = field(repr=False)

    @property
    def n(self):
        return self.word.n

    def raw_table(self, m):
        """{(i, j): c^m_ij} for i <= j < m."""
        return self.raw[m - 1]

    def reduced_table(self, k):
        """{(i, j): d^k_ij} for i < j < k."""
        return self.reduced[k - 1]

    @cached_property
    def table(self):
        tails = []
        for k in range(1, self.n + 1):
            tails.append([(i - 1, j - 1, c) for (i, j), c in sorted(self.reduced[k - 1].items())])
        return kernels.MulTable(self.n, tails, self.backend.one)

    def relation_poly(self, k, reduced=True):
        n = self.n
        sq = [0] * n
        sq[k - 1] = 2
        terms = {tuple(sq): self.backend.one}
        tab = self.reduced[k - 1] if reduced else self.raw[k - 1]
        for (i, j), c in tab.items():
            e = [0] * n
            e[i - 1] += 1
            e[j - 1] += 1
            terms[tuple(e)] = terms.get(tuple(e), self.backend.zero) - c
        return Poly(n, terms, self.backend)

    def relations(self, reduced=True):
        return [self.relation_poly(k, reduced) for k in range(1, self.n + 1)]

    def relation_string(self, k, reduced=True):
        n = self.n
        tab = self.reduced[k - 1] if reduced else self.raw[k - 1]
        sq = [0] * n
        sq[k - 1] = 2
        items = [(tuple(sq), self.backend.one)]
        for (i, j), c in sorted(tab.items()):
            if self.backend.is_zero(c):
                continue
            e = [0] * n
            e[i - 1] += 1
            e[j - 1] += 1
            items.append((tuple(e), -c))
        return format_terms(items, self.backend)


def build_presentation(w, backend):
    n = w.n
    qm = q_matrix(w, backend)
    raw = []
    reduced = []
    for m in range(1, n + 1):
        col = qm.column(m)
        c_m = {}
        for i in range(1, m):
            for j in range(i, m):
                c = (2 if i != j else 1) * col[i - 1] * col[j - 1]
                if c:
                    c_m[i, j] = c
        raw.append(c_m)
        # replace each x_i^2 by the already square-free tail of q'_i
        d = {}
        for (i, j), c in c_m.items():
            if i != j:
                d[i, j] = d.get((i, j), backend.zero) + c
            else:
                for (a, b), e in reduced[i - 1].items():
                    d[a, b] = d.get((a, b), backend.zero) + c * e
        reduced.append({key: v for key, v in sorted(d.items()) if v})
    return Presentation(w, backend, qm, tuple(raw), tuple(reduced))


class RingElement:
    """Finitely supported combination of square-free monomials x^I."""

    __slots__ = ("n", "terms", "backend")

    def __init__(self, n, terms, backend):
        self.n = n
        self.backend = backend
        full = (1 << n) - 1
        clean = {}
        for mask, c in terms.items():
            if mask & ~full:
                raise ValueError(f"monomial mask {mask:#x} exceeds {n} variables")
            if c:
                clean[mask] = backend.check(backend.scalar(c))
        self.terms = clean

    @classmethod
    def zero(cls, n, backend):
        return cls(n, {}, backend)

    @classmethod
    def one(cls, n, backend):
        return cls(n, {0: backend.one}, backend)

    @classmethod
    def monomial(cls, n, positions, backend, coeff=None):
        c = backend.one if coeff is None else backend.scalar(coeff)
        return cls(n, {mask_of(positions): c}, backend)

    @classmethod
    def from_mask(cls, n, mask, backend):
        return cls(n, {mask: backend.one}, backend)

    def _compat(self, other):
        same_backend(self.backend, other.backend)
        if self.n != other.n:
            raise ValueError(f"ring elements of different lengths {self.n} and {other.n}")

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return RingElement(self.n, out, self.backend)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = self.backend.scalar(c)
        return RingElement(self.n, {m: c * v for m, v in self.terms.items()}, self.backend)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.n == other.n and self.backend is other.backend and self.terms == other.terms

    def close_to(self, other):
        self._compat(other)
        z = self.backend.is_zero
        return all(z(c) for c in (self - other).terms.values())

    def is_zero(self):
        z = self.backend.is_zero
        return all(z(c) for c in self.terms.values())

    def coefficient(self, positions):
        return self.terms.get(mask_of(positions), self.backend.zero)

    def degrees(self):
        return sorted({popcount(m) for m in self.terms})

    def homogeneous_part(self, k):
        return RingElement(self.n, {m: c for m, c in self.terms.items() if popcount(m) == k},
                           self.backend)

    def vector(self, k):
        """Coordinates of the degree-k part in the canonical basis of B^k."""
        z = self.backend.zero
        return [self.terms.get(m, z) for m in basis_masks(self.n, k)]

    def __repr__(self):
        items = []
        for m in sorted(self.terms, key=lambda m: (popcount(m), m)):
            e = tuple(1 if m >> i & 1 else 0 for i in range(self.n))
            items.append((e, self.terms[m]))
        return f"RingElement({format_terms(items, self.backend)})"


def _exponents_ok(p, e):
    if len(e) != p.n:
        raise ValueError(f"exponent vector of length {len(e)} for a word of length {p.n}")
    if any(x < 0 for x in e):
        raise ValueError("exponents must be non-negative")


def normal_form(p, e):
    """Square-free normal form of x^e, rewriting the rightmost square first.

    Rewriting x_k^2 only touches positions < k, so terms are processed by
    descending position of their rightmost square and equal monomials merge.
    """
    _exponents_ok(p, e)
    be = p.backend
    n = p.n
    pending = {tuple(e): be.one}
    out = {}
    for k in range(n, 0, -1):
        tail = sorted(p.reduced[k - 1].items())
        while True:
            hot = {t: c for t, c in pending.items() if t[k - 1] >= 2}
            if not hot:
                break
            for t in hot:
                del pending[t]
            for t, c in hot.items():
                if sum(t) > n:
                    continue
                for (i, j), d in tail:
                    u = list(t)
                    u[k - 1] -= 2
                    u[i - 1] += 1
                    u[j - 1] += 1
                    u = tuple(u)
                    pending[u] = pending.get(u, be.zero) + c * d
    for t, c in pending.items():
        if not c or sum(t) > n:
            continue
        mask = 0
        for i, x in enumerate(t):
            if x:
                mask |= 1 << i
        out[mask] = out.get(mask, be.zero) + c
    return RingElement(n, out, be)


def _as_element(p, a):
    if isinstance(a, RingElement):
        if a.n != p.n:
            raise ValueError(f"element of length {a.n} used in a ring of length {p.n}")
        same_backend(a.backend, p.backend)
        return a
    raise TypeError(f"expected a RingElement, got {type(a).__name__}")


def mul(p, a, b):
    a = _as_element(p, a)
    b = _as_element(p, b)
    return RingElement(p.n, p.table.mul(a.terms, b.terms), p.backend)


def mul_var(p, k, a):
    """x_k * a for a 1-based position k."""
    a = _as_element(p, a)
    return RingElement(p.n, p.table.apply_var(k - 1, a.terms), p.backend)


def power(p, a, t):
    out = RingElement.one(p.n, p.backend)
    for _ in range(t):
        out = mul(p, out, a)
    return out


def degree_map(a):
    """Coefficient of x1 x2 ... xn."""
    return a.terms.get((1 << a.n) - 1, a.backend.zero)


def pairing_matrix(p, k):
    """Gram matrix of deg(eta1 * eta2) on B^k x B^{n-k}."""
    n = p.n
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range 0..{n}")
    be = p.backend
    rows = []
    for i in basis_masks(n, k):
        left = {i: be.one}
        row = []
        for j in basis_masks(n, n - k):
            prod = p.table.mul(left, {j: be.one})
            row.append(prod.get((1 << n) - 1, be.zero))
        rows.append(row)
    return Matrix(rows, be, cols=comb(n, n - k))


def is_complement_permutation(p, k, m=None):
    """True when pairing_matrix(k) has a single 1 at (I, [n] minus I) and zeros elsewhere."""
    n = p.n
    m = pairing_matrix(p, k) if m is None else m
    full = (1 << n) - 1
    cols = basis_masks(n, n - k)
    z = p.backend.is_zero
    for r, i in enumerate(basis_masks(n, k)):
        for c, j in enumerate(cols):
            want = 1 if j == full ^ i else 0
            if not z(m[r, c] - want):
                return False
    return True


def hilbert_vector(p):
    """Dimensions by degree, counted from the standard monomials of the relations."""
    from .groebner import standard_monomials

    counts = [0] * (p.n + 1)
    for e in standard_monomials(p.relations(reduced=True)):
        d = sum(e)
        if d <= p.n:
            counts[d] += 1
    return counts


def word_m_matrix(w):
    return tuple(tuple(w.order_at(i, j) for j in range(1, w.n + 1)) for i in range(1, w.n + 1))


@dataclass(frozen=True)
class InvarianceReport:
    same_m_matrix: bool
    identical: bool
    mismatches: tuple

    @property
    def passed(self):
        return (not self.same_m_matrix) or self.identical


def presentation_tables(p):
    """Exact, order-canonical view of every coefficient table."""
    fmt = p.backend.format
    return {
        "q": [[fmt(v) for v in row] for row in p.qmatrix.q.data],
        "raw": [[[i, j, fmt(c)] for (i, j), c in sorted(t.items())] for t in p.raw],
        "reduced": [[[i, j, fmt(c)] for (i, j), c in sorted(t.items())] for t in p.reduced],
    }


def invariance_check(w1, w2, backend):
    if w1.n != w2.n:
        raise ValueError("invariance check needs words of equal length")
    m1, m2 = word_m_matrix(w1), word_m_matrix(w2)
    diff = tuple((i + 1, j + 1) for i in range(w1.n) for j in range(w1.n) if m1[i][j] != m2[i][j])
    if diff:
        return InvarianceReport(False, False, diff)
    t1 = presentation_tables(build_presentation(w1, backend))
    t2 = presentation_tables(build_presentation(w2, backend))
    bad = []
    for key in ("q", "raw", "reduced"):
        for idx, (a, b) in enumerate(zip(t1[key], t2[key])):
            if a != b:
                bad.append((key, idx + 1))
    return InvarianceReport(True, not bad, tuple(bad))


# --- serialization -----------------------------------------------------------


def element_to_dict(a):
    be = a.backend
    return {
        "n": a.n,
        **be.describe(),
        "terms": [[positions_of(m), be.format(a.terms[m])]
                  for m in sorted(a.terms, key=lambda m: (popcount(m), m))],
    }


def element_from_dict(d, backend):
    n = d["n"]
    terms = {}
    for pos, c in d["terms"]:
        terms[mask_of(pos)] = backend.scalar(c)
    return RingElement(n, terms, backend)


def presentation_to_dict(p):
    w = p.word
    n = p.n
    return {
        **w.descriptor(),
        **p.backend.describe(),
        "n": n,
        "m_matrix": [[format_order(v) for v in row] for row in word_m_matrix(w)],
        **presentation_tables(p),
        "relations": [p.relation_string(k, reduced=False) for k in range(1, n + 1)],
        "reduced_relations": [p.relation_string(k) for k in range(1, n + 1)],
    }


def presentation_from_dict(d, backend):
    """Rebuild a Presentation from its serialized tables (no recomputation)."""
    from .coxeter import CoxeterMatrix

    cm = CoxeterMatrix(tuple(map(tuple, d["coxeter_matrix"])), tuple(d["generators"]))
    w = CoxeterWord.from_names(cm, d["word"])
    n = w.n
    q = Matrix([[backend.scalar(v) for v in row] for row in d["q"]], backend, cols=n)
    rt = q_matrix(w, backend).rtilde
    raw = tuple({(i, j): backend.scalar(c) for i, j, c in t} for t in d["raw"])
    red = tuple({(i, j): backend.scalar(c) for i, j, c in t} for t in d["reduced"])
    return Presentation(w, backend, QMatrix(n, rt, q), raw, red)
