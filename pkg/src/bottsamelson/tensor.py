"""Multiplication in the iterated tensor product, independent of the presentation.

A basis tensor ``1 | alpha_{s_1}^{e_1} | ... | alpha_{s_n}^{e_n}`` is stored
as an exponent pattern.  Products multiply slotwise; a square
``alpha_{s_m}^2`` is invariant under s_m, so it crosses wall m and splits
into two copies of alpha_{s_m}, each carried left wall by wall with the
degree-one projection and Demazure operators.  Nothing here reads the
Q-matrix or the relation tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .demazure import carry_coefficients
from .numeric import same_backend

ORACLE_MAX_LEN = 10


@dataclass(frozen=True)
class TensorElement:
    n: int
    terms: dict
    backend: object

    def __post_init__(self):
        object.__setattr__(self, "terms", {m: c for m, c in self.terms.items() if c})

    def __add__(self, other):
        same_backend(self.backend, other.backend)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return TensorElement(self.n, out, self.backend)

    def scale(self, c):
        c = self.backend.scalar(c)
        return TensorElement(self.n, {m: c * v for m, v in self.terms.items()}, self.backend)


class TensorOracle:
    """Tensor-model products for one word; carries are computed once per slot."""

    def __init__(self, w, backend):
        self.word = w
        self.backend = backend
        self.n = w.n
        # carries[m-1]: alpha_{s_m} moved left leaves d * alpha_{s_l} in slot l
        self.carries = [[(l - 1, d) for l, d in carry_coefficients(w, m, backend)]
                        for m in range(1, w.n + 1)]

    def _mask(self, x):
        if isinstance(x, int):
            if not 0 <= x < (1 << self.n):
                raise IndexError(f"subset mask {x} out of range for n={self.n}")
            return x
        mask = 0
        for i in x:
            if not 1 <= i <= self.n:
                raise IndexError(f"position {i} out of range 1..{self.n}")
            mask |= 1 << (i - 1)
        return mask

    def reduce_pattern(self, exps, coeff=None):
        be = self.backend
        c = be.one if coeff is None else coeff
        return TensorElement(self.n, kernels.expand_squares(list(exps), c, self.carries), be)

    def mul_basis(self, I, J):
        """x^I * x^J; subsets as masks or iterables of 1-based positions."""
        a, b = self._mask(I), self._mask(J)
        e = [(a >> i & 1) + (b >> i & 1) for i in range(self.n)]
        return self.reduce_pattern(e)

    def mul(self, x, y):
        same_backend(x.backend, y.backend)
        out = TensorElement(self.n, {}, self.backend)
        for I, a in x.terms.items():
            for J, b in y.terms.items():
                out = out + self.mul_basis(I, J).scale(a * b)
        return out


def oracle_mul_basis(w, I, J, backend):
    return TensorOracle(w, backend).mul_basis(I, J)


def oracle_structure_constants(w, backend):
    """{(I, J): {K: c}} over all pairs of subset masks.

    Only I <= J is computed; the table is filled in by symmetry.
    """
    if w.n > ORACLE_MAX_LEN:
        raise ValueError(f"structure-constant table is capped at word length {ORACLE_MAX_LEN}")
    orc = TensorOracle(w, backend)
    size = 1 << w.n
    table = {}
    for I in range(size):
        for J in range(I, size):
            t = orc.mul_basis(I, J).terms
            table[I, J] = t
            table[J, I] = t
    return table
