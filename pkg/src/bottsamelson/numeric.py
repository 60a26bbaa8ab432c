"""Scalar backends and a small exact/approximate linear-algebra kernel.

Two backends are provided.  :data:`RATIONAL` stores every value as a
``gmpy2.mpq`` in lowest terms.  :func:`float_backend` returns a big-float
backend built on a private :class:`mpmath.MPContext`, so precision is a
property of the backend instance rather than of global state.

Containers (:class:`Matrix`, ring elements, presentations) carry their
backend and refuse to combine with values from another one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
import mpmath

INF = math.inf

DEFAULT_PRECISION_BITS = 64
DEFAULT_TOLERANCE = 1e-9


class BackendError(ValueError):
    """A value cannot be represented in the requested backend."""


class BackendMismatchError(TypeError):
    """Operands belong to different scalar backends."""


def _check_order(m):
    if m == INF:
        return
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise BackendError(f"invalid Coxeter order {m!r}")


def _foreign(x):
    return type(x).__module__.startswith("mpmath")


class RationalBackend:
    """Exact arithmetic over the rationals."""

    name = "rational"
    exact = True
    tolerance = 0
    precision_bits = None

    _COS = {1: Fraction(-1), 2: Fraction(0), 3: Fraction(1, 2), INF: Fraction(1)}

    def __init__(self):
        self.zero = gmpy2.mpq(0)
        self.one = gmpy2.mpq(1)

    def __repr__(self):
        return "RationalBackend()"

    def scalar(self, x):
        if isinstance(x, type(self.zero)):
            return x
        if isinstance(x, bool):
            raise BackendError("booleans are not scalars")
        if isinstance(x, (int, Fraction)):
            return gmpy2.mpq(x)
        if isinstance(x, str):
            return gmpy2.mpq(Fraction(x.strip()))
        if _foreign(x):
            raise BackendMismatchError(f"{x!r} belongs to a float backend")
        raise BackendError(f"cannot convert {x!r} to an exact rational")

    def check(self, x):
        if not isinstance(x, type(self.zero)):
            raise BackendMismatchError(f"{x!r} is not a value of the rational backend")
        return x

    def is_zero(self, x):
        return x == 0

    def sign(self, x):
        return (x > 0) - (x < 0)

    def cos_pi_over(self, m):
        _check_order(m)
        if m not in self._COS:
            raise BackendError(f"cos(pi/{m}) is irrational; use the float backend")
        return gmpy2.mpq(self._COS[m])

    def has_cosine(self, m):
        return m in self._COS

    def format(self, x):
        return f"{x.numerator}/{x.denominator}"

    def short(self, x):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def to_float(self, x):
        return float(x)

    def describe(self):
        return {"backend": "rational", "tolerance": 0}


class FloatBackend:
    """Big-float arithmetic with a fixed working precision and zero tolerance."""

    name = "float"
    exact = False

    def __init__(self, precision_bits=DEFAULT_PRECISION_BITS, tolerance=DEFAULT_TOLERANCE):
        if precision_bits < 53:
            raise BackendError("precision must be at least 53 bits")
        if not tolerance > 0:
            raise BackendError("tolerance must be positive")
        self.precision_bits = int(precision_bits)
        self.tolerance = float(tolerance)
        self.ctx = mpmath.MPContext()
        self.ctx.prec = self.precision_bits
        self.zero = self.ctx.mpf(0)
        self.one = self.ctx.mpf(1)
        # enough digits for a lossless decimal round trip; ``short`` drops the noisy tail
        self.digits = int(math.ceil(self.precision_bits * math.log10(2))) + 1
        self.short_digits = max(15, self.digits - 4)
        self._eps = self.ctx.mpf(self.tolerance)

    def __repr__(self):
        return f"FloatBackend(precision_bits={self.precision_bits}, tolerance={self.tolerance!r})"

    def scalar(self, x):
        if isinstance(x, self.ctx.mpf):
            return x
        if isinstance(x, bool):
            raise BackendError("booleans are not scalars")
        if isinstance(x, type(gmpy2.mpq(0))):
            raise BackendMismatchError(f"{x!r} belongs to the rational backend")
        if isinstance(x, Fraction):
            return self.ctx.mpf(x.numerator) / x.denominator
        if isinstance(x, str):
            s = x.strip()
            if "/" in s:
                return self.scalar(Fraction(s))
            return self.ctx.mpf(s)
        if isinstance(x, (int, float)):
            return self.ctx.mpf(x)
        if _foreign(x):
            raise BackendMismatchError(f"{x!r} belongs to another float backend")
        raise BackendError(f"cannot convert {x!r} to a float scalar")

    def check(self, x):
        if not isinstance(x, self.ctx.mpf):
            raise BackendMismatchError(f"{x!r} is not a value of {self!r}")
        return x

    def is_zero(self, x):
        return abs(x) < self._eps

    def sign(self, x):
        if self.is_zero(x):
            return 0
        return 1 if x > 0 else -1

    def cos_pi_over(self, m):
        _check_order(m)
        # exact where the value is rational, so m in {1,2,3,inf} agrees with RATIONAL
        if m in RationalBackend._COS:
            return self.scalar(RationalBackend._COS[m])
        ctx = self.ctx
        return ctx.cos(ctx.pi / m)

    def has_cosine(self, m):
        return True

    def format(self, x):
        return self.ctx.nstr(x, self.digits)

    def short(self, x):
        return self.ctx.nstr(x, self.short_digits)

    def to_float(self, x):
        return float(x)

    def describe(self):
        return {"backend": "float", "precision_bits": self.precision_bits,
                "tolerance": self.tolerance}


RATIONAL = RationalBackend()


@lru_cache(maxsize=None)
def float_backend(precision_bits=DEFAULT_PRECISION_BITS, tolerance=DEFAULT_TOLERANCE):
    """Shared :class:`FloatBackend` instance for the given parameters."""
    return FloatBackend(precision_bits, tolerance)


def get_backend(name, precision_bits=DEFAULT_PRECISION_BITS, tolerance=DEFAULT_TOLERANCE):
    if name == "rational":
        return RATIONAL
    if name == "float":
        return float_backend(int(precision_bits), float(tolerance))
    raise BackendError(f"unknown backend {name!r}")


def same_backend(a, b):
    if a is not b:
        raise BackendMismatchError(f"mixed backends: {a!r} and {b!r}")
    return a


# --- matrices --------------------------------------------------------------


class Matrix:
    """Dense row-major matrix of backend scalars."""

    __slots__ = ("rows", "cols", "data", "backend")

    def __init__(self, data, backend, cols=None):
        rows = [tuple(backend.check(backend.scalar(v)) for v in row) for row in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("matrix rows have unequal lengths")
        self.rows = len(rows)
        self.cols = cols
        self.data = tuple(rows)
        self.backend = backend

    @classmethod
    def zeros(cls, rows, cols, backend):
        return cls([[backend.zero] * cols for _ in range(rows)], backend, cols=cols)

    @classmethod
    def identity(cls, n, backend):
        return cls([[backend.one if i == j else backend.zero for j in range(n)]
                    for i in range(n)], backend, cols=n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.backend is other.backend and self.data == other.data and self.shape == other.shape

    def __repr__(self):
        fmt = self.backend.short
        body = "; ".join(" ".join(fmt(v) for v in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def transpose(self):
        if not self.rows:
            return Matrix([[] for _ in range(self.cols)], self.backend, cols=0)
        return Matrix([list(col) for col in zip(*self.data)], self.backend, cols=self.rows)

    T = property(transpose)

    def __matmul__(self, other):
        same_backend(self.backend, other.backend)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.backend.zero
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for row in self.data:
            out.append([sum((a * b for a, b in zip(row, col) if a and b), zero) for col in ocols])
        return Matrix(out, self.backend, cols=other.cols)

    def __add__(self, other):
        same_backend(self.backend, other.backend)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                      self.backend, cols=self.cols)

    def scale(self, c):
        c = self.backend.check(self.backend.scalar(c))
        return Matrix([[c * a for a in r] for r in self.data], self.backend, cols=self.cols)

    def is_zero(self):
        z = self.backend.is_zero
        return all(z(v) for row in self.data for v in row)

    def max_norm(self):
        return max((abs(v) for row in self.data for v in row), default=self.backend.zero)

    def is_symmetric(self):
        if self.rows != self.cols:
            return False
        z = self.backend.is_zero
        n = self.rows
        return all(z(self.data[i][j] - self.data[j][i]) for i in range(n) for j in range(i + 1, n))

    def column(self, j):
        return [row[j] for row in self.data]

    @classmethod
    def from_columns(cls, columns, rows, backend):
        if not columns:
            return cls([[] for _ in range(rows)], backend, cols=0)
        return cls([list(r) for r in zip(*columns)], backend, cols=len(columns))


@dataclass(frozen=True)
class Signature:
    """Inertia of a real quadratic form."""

    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dim(self):
        return self.n_pos + self.n_neg + self.n_zero

    @property
    def value(self):
        """Signature in the scalar sense, positive minus negative."""
        return self.n_pos - self.n_neg

    def as_tuple(self):
        return (self.n_pos, self.n_neg, self.n_zero)


def _threshold(m):
    be = m.backend
    if be.exact:
        return None
    return be.scalar(be.tolerance) * max(be.one, m.max_norm())


def ldlt_signature(m):
    """Inertia of a symmetric matrix by symmetric Gaussian elimination.

    1x1 pivots are taken on the largest diagonal entry; when every remaining
    diagonal entry vanishes a 2x2 pivot on the largest off-diagonal entry is
    used instead.  In float mode an entry counts as zero when it is below
    ``tolerance * max(1, |m|_max)``.
    """
    if m.rows != m.cols:
        raise ValueError("signature requires a square matrix")
    if not m.is_symmetric():
        raise ValueError("signature requires a symmetric matrix")
    be = m.backend
    thr = _threshold(m)

    def nonzero(v):
        return v != 0 if thr is None else abs(v) > thr

    a = [list(r) for r in m.data]
    idx = list(range(m.rows))
    pos = neg = 0
    while idx:
        p = max(idx, key=lambda i: abs(a[i][i]))
        if nonzero(a[p][p]):
            d = a[p][p]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(p)
            col = {i: a[i][p] for i in idx if a[i][p]}
            for i, ci in col.items():
                f = ci / d
                row = a[i]
                for j, cj in col.items():
                    row[j] -= f * cj
            continue
        best = None
        for x in idx:
            for y in idx:
                if x < y and (best is None or abs(a[x][y]) > abs(a[best[0]][best[1]])):
                    best = (x, y)
        if best is None or not nonzero(a[best[0]][best[1]]):
            break
        x, y = best
        e11, e12, e22 = a[x][x], a[x][y], a[y][y]
        det = e11 * e22 - e12 * e12
        # diagonal negligible, so det ~ -e12^2 < 0: one positive, one negative direction
        pos += 1
        neg += 1
        idx.remove(x)
        idx.remove(y)
        # Schur complement: A - C E^{-1} C^T, E^{-1} = [[e22,-e12],[-e12,e11]]/det
        cx = {i: a[i][x] for i in idx}
        cy = {i: a[i][y] for i in idx}
        for i in idx:
            ui = (cx[i] * e22 - cy[i] * e12) / det
            vi = (cy[i] * e11 - cx[i] * e12) / det
            if not (ui or vi):
                continue
            row = a[i]
            for j in idx:
                row[j] -= ui * cx[j] + vi * cy[j]
    return Signature(pos, neg, len(idx))


def _rref(m):
    """Row-reduce a copy of ``m``; returns (rows, pivot_columns)."""
    be = m.backend
    thr = _threshold(m)
    a = [list(r) for r in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r >= m.rows:
            break
        p = max(range(r, m.rows), key=lambda i: abs(a[i][c]))
        v = a[p][c]
        if (v == 0) if thr is None else (abs(v) <= thr):
            continue
        a[r], a[p] = a[p], a[r]
        inv = be.one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m):
    return len(_rref(m)[1])


def kernel_basis(m):
    """Basis of the right kernel, as a list of column vectors (lists)."""
    be = m.backend
    a, pivots = _rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [be.zero] * m.cols
        v[f] = be.one
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(v)
    return basis


def det(m):
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    be = m.backend
    a = [list(r) for r in m.data]
    n = m.rows
    out = be.one
    for c in range(n):
        p = max(range(c, n), key=lambda i: abs(a[i][c]))
        if a[p][c] == 0:
            return be.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        piv = a[c][c]
        out *= piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out
