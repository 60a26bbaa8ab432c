"""Degree-one Demazure operators, projections, and the Q-matrix of a word.

Positions in a word are 1-based, matching the variable names x1..xn.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coxeter import LinearForm, cosine
from .numeric import Matrix

PATHSUM_MAX_LEN = 12


def demazure_const(cm, backend, s, t):
    """The constant d_s(alpha_t) = -2 cos(pi/m_st)."""
    return -2 * cosine(cm.order(s, t), backend)


def demazure(cm, s, f):
    """d_s applied to a form of degree <= 1; constants are killed."""
    be = f.backend
    total = be.zero
    for t, a in enumerate(f.coeffs):
        if a:
            total += a * demazure_const(cm, be, s, t)
    return total


def project(cm, s, f):
    """s-invariant part (f + s(f))/2 = f - (d_s f / 2) alpha_s."""
    be = f.backend
    half = demazure(cm, s, f) / 2
    if not half:
        return f
    return f - LinearForm.root(s, cm.size, be).scale(half)


@dataclass(frozen=True)
class QMatrix:
    n: int
    rtilde: Matrix
    q: Matrix

    def entry(self, l, m):
        return self.q[l - 1, m - 1]

    def column(self, m):
        """[q_1m, ..., q_{m-1,m}]."""
        return [self.q[l, m - 1] for l in range(m - 1)]


def rtilde_matrix(w, backend):
    n = w.n
    rows = [[cosine(w.order_at(i + 1, j + 1), backend) if i < j else backend.zero
             for j in range(n)] for i in range(n)]
    return Matrix(rows, backend, cols=n)


def q_matrix(w, backend):
    """Q = R + R^2 + ... + R^n for the strictly upper-triangular cosine matrix R."""
    r = rtilde_matrix(w, backend)
    q = r
    power = r
    for _ in range(1, w.n):
        power = power @ r
        if power.is_zero():
            break
        q = q + power
    return QMatrix(w.n, r, q)


def _check_positions(w, l, m):
    if not 1 <= l < m <= w.n:
        raise IndexError(f"positions must satisfy 1 <= l < m <= {w.n}, got l={l}, m={m}")


def q_entry_pathsum(w, l, m, backend):
    """q_lm as an explicit sum over increasing chains l = j0 < ... < j_{s+1} = m."""
    _check_positions(w, l, m)
    if w.n > PATHSUM_MAX_LEN:
        raise ValueError(f"path-sum enumeration is capped at word length {PATHSUM_MAX_LEN}")
    r = {}
    for i in range(l, m + 1):
        for j in range(i + 1, m + 1):
            r[i, j] = cosine(w.order_at(i, j), backend)
    inner = range(l + 1, m)
    total = backend.zero
    for size in range(len(inner) + 1):
        for mid in combinations(inner, size):
            chain = (l, *mid, m)
            prod = backend.one
            for a, b in zip(chain, chain[1:]):
                prod *= r[a, b]
                if not prod:
                    break
            total += prod
    return total


def p_chain(w, l, m, backend):
    """p_{l+1} o ... o p_{m-1} applied to alpha_{s_m}, in generator coordinates."""
    _check_positions(w, l, m)
    cm = w.matrix
    f = LinearForm.root(w.letters[m - 1], cm.size, backend)
    for j in range(m - 1, l, -1):
        f = project(cm, w.letters[j - 1], f)
    return f


def p_chain_positional(w, l, m, backend):
    """Same composition, tracking which position each alpha_{s_k} came from.

    Returns ``{k: coefficient}`` for l < k <= m; merging entries that share a
    generator recovers :func:`p_chain`.
    """
    _check_positions(w, l, m)
    coeffs = {m: backend.one}
    for j in range(m - 1, l, -1):
        # p_j(alpha_{s_k}) = alpha_{s_k} + r_jk alpha_{s_j}
        acc = backend.zero
        for k, c in coeffs.items():
            acc += c * cosine(w.order_at(j, k), backend)
        coeffs[j] = acc
    return dict(sorted(coeffs.items()))


def positional_to_form(w, coeffs, backend):
    size = w.matrix.size
    out = [backend.zero] * size
    for k, c in coeffs.items():
        out[w.letters[k - 1]] += c
    return LinearForm(backend.zero, tuple(out), backend)


def carry_coefficients(w, m, backend):
    """Coefficients d_l of alpha_{s_m} carried left from just before wall m.

    Walking over walls m-1, ..., 1 the carried form splits into its invariant
    part (which keeps moving) and d_l(f)/2 times alpha_{s_l} (which stays in
    slot l).  Returns ``[(l, d_l), ...]`` with l descending, zero terms dropped.
    """
    cm = w.matrix
    f = LinearForm.root(w.letters[m - 1], cm.size, backend)
    out = []
    for j in range(m - 1, 0, -1):
        s = w.letters[j - 1]
        c = demazure(cm, s, f) / 2
        if c:
            out.append((j, c))
        f = project(cm, s, f)
    return out
