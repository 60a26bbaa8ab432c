"""Coxeter matrices, words, and the geometric representation."""

from __future__ import annotations

from dataclasses import dataclass

from .numeric import INF, Matrix, ldlt_signature, same_backend


class CoxeterError(ValueError):
    pass


def parse_order(v):
    """Order value from user input: a positive integer or ``"inf"``."""
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        try:
            v = int(s)
        except ValueError:
            raise CoxeterError(f"invalid Coxeter order {v!r}") from None
    if v == INF:
        return INF
    if isinstance(v, bool) or not isinstance(v, int):
        if isinstance(v, float) and v.is_integer():
            v = int(v)
        else:
            raise CoxeterError(f"invalid Coxeter order {v!r}")
    if v < 1:
        raise CoxeterError(f"Coxeter order must be positive, got {v}")
    return v


def format_order(m):
    return "inf" if m == INF else m


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple
    names: tuple = None

    def __post_init__(self):
        rows = tuple(tuple(parse_order(v) for v in row) for row in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise CoxeterError("Coxeter matrix must be square")
        for s in range(n):
            if rows[s][s] != 1:
                raise CoxeterError(f"diagonal entry m[{s}][{s}] must be 1")
            for t in range(s + 1, n):
                if rows[s][t] != rows[t][s]:
                    raise CoxeterError(f"Coxeter matrix not symmetric at ({s},{t})")
                if rows[s][t] == 1:
                    raise CoxeterError(f"off-diagonal entry m[{s}][{t}] must be >= 2")
        names = self.names
        if names is None:
            names = tuple(f"s{i + 1}" for i in range(n))
        names = tuple(str(x) for x in names)
        if len(names) != n or len(set(names)) != n:
            raise CoxeterError("generator names must be distinct, one per row")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "names", names)

    @property
    def size(self):
        return len(self.entries)

    def order(self, s, t):
        return self.entries[s][t]

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise CoxeterError(f"unknown generator {name!r}") from None

    @classmethod
    def dihedral(cls, m):
        return cls(((1, m), (m, 1)))

    @classmethod
    def from_edges(cls, size, edges, default=2, names=None):
        """Build from ``{(s, t): m}``; unlisted pairs get ``default``."""
        rows = [[1 if s == t else default for t in range(size)] for s in range(size)]
        for (s, t), m in edges.items():
            rows[s][t] = rows[t][s] = m
        return cls(tuple(map(tuple, rows)), names)


@dataclass(frozen=True)
class CoxeterWord:
    matrix: CoxeterMatrix
    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        for x in letters:
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < self.matrix.size:
                raise CoxeterError(f"letter {x!r} is not a generator index")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_names(cls, matrix, names):
        return cls(matrix, tuple(matrix.index(a) for a in names))

    @property
    def n(self):
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def order_at(self, i, j):
        """m_{s_i s_j} for 1-based positions i, j."""
        return self.matrix.order(self.letters[i - 1], self.letters[j - 1])

    def prefix(self, k):
        return CoxeterWord(self.matrix, self.letters[:k])

    def names(self):
        return [self.matrix.names[x] for x in self.letters]

    def relevant_orders(self):
        used = sorted(set(self.letters))
        return {self.matrix.order(s, t) for s in used for t in used}

    def descriptor(self):
        return {"generators": list(self.matrix.names),
                "coxeter_matrix": [[format_order(m) for m in row] for row in self.matrix.entries],
                "word": self.names()}


@dataclass(frozen=True)
class LinearForm:
    """constant + sum_s coeffs[s] * alpha_s, in simple-root coordinates."""

    constant: object
    coeffs: tuple
    backend: object

    @classmethod
    def root(cls, s, size, backend):
        return cls(backend.zero, tuple(backend.one if t == s else backend.zero
                                       for t in range(size)), backend)

    @classmethod
    def const(cls, c, size, backend):
        return cls(backend.scalar(c), (backend.zero,) * size, backend)

    @classmethod
    def from_coeffs(cls, coeffs, backend, constant=0):
        return cls(backend.scalar(constant), tuple(backend.scalar(c) for c in coeffs), backend)

    def __add__(self, other):
        same_backend(self.backend, other.backend)
        return LinearForm(self.constant + other.constant,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.backend)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = self.backend.scalar(c)
        return LinearForm(c * self.constant, tuple(c * a for a in self.coeffs), self.backend)

    def is_zero(self):
        z = self.backend.is_zero
        return z(self.constant) and all(z(a) for a in self.coeffs)

    def close_to(self, other):
        return (self - other).is_zero()


def cosine(m, backend):
    """cos(pi/m), with cos(pi/inf) = 1."""
    return backend.cos_pi_over(m)


def geometric_form(cm, backend):
    n = cm.size
    return Matrix([[-cosine(cm.order(s, t), backend) for t in range(n)] for s in range(n)],
                  backend, cols=n)


def bilinear(cm, lam, mu):
    be = same_backend(lam.backend, mu.backend)
    total = be.zero
    for s, a in enumerate(lam.coeffs):
        if not a:
            continue
        for t, b in enumerate(mu.coeffs):
            if b:
                total += a * b * -cosine(cm.order(s, t), be)
    return total


def reflect(cm, s, lam):
    """s(lam) = lam - 2 (lam, alpha_s) alpha_s for lam in V."""
    be = lam.backend
    if not be.is_zero(lam.constant):
        raise CoxeterError("reflection acts on V; the form has a nonzero constant part")
    alpha = LinearForm.root(s, cm.size, be)
    return lam - alpha.scale(2 * bilinear(cm, lam, alpha))


def finiteness_hint(cm, backend):
    """True when the geometric form is positive definite (W finite)."""
    sig = ldlt_signature(geometric_form(cm, backend))
    return sig.n_pos == cm.size
