from fractions import Fraction

import gmpy2
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bottsamelson.numeric import (INF, RATIONAL, BackendError, BackendMismatchError, Matrix,
                                  Signature, det, float_backend, get_backend, kernel_basis,
                                  ldlt_signature, rank)

Q = RATIONAL


def M(rows, be=Q):
    return Matrix([[be.scalar(x) for x in r] for r in rows], be)


def sympy_inertia(rows):
    """Inertia from the characteristic polynomial.

    The roots are all real, so Descartes' rule of signs counts them exactly.
    """
    n = len(rows)
    cp = sympy.Matrix(rows).charpoly()
    coeffs = [c for c in cp.all_coeffs()]
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def changes(cs):
        signs = [sympy.sign(c) for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = changes(coeffs)
    d = len(coeffs) - 1
    neg = changes([c * (-1) ** (d - i) for i, c in enumerate(coeffs)])
    assert pos + neg + zero == n
    return (pos, neg, zero)


small = st.integers(-3, 3)


@st.composite
def symmetric(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(small)
    return a


@st.composite
def rational_matrices(draw, max_n=4):
    r = draw(st.integers(1, max_n))
    c = draw(st.integers(1, max_n))
    frac = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
    return [[draw(frac) for _ in range(c)] for _ in range(r)]


def test_signature_examples():
    assert ldlt_signature(M([[1, 0], [0, 1]])).as_tuple() == (2, 0, 0)
    assert ldlt_signature(M([[0, 1], [1, 0]])).as_tuple() == (1, 1, 0)
    assert ldlt_signature(M([["-3/4"]])).as_tuple() == (0, 1, 0)
    assert ldlt_signature(Matrix([], Q, cols=0)) == Signature(0, 0, 0)


def test_signature_zero_diagonal_needs_block_pivot():
    m = M([[0, 1, 0], [1, 0, 2], [0, 2, 0]])
    assert ldlt_signature(m).as_tuple() == sympy_inertia([[0, 1, 0], [1, 0, 2], [0, 2, 0]])


def test_signature_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        ldlt_signature(M([[1, 2], [3, 4]]))


def test_kernel_examples():
    assert len(kernel_basis(M([[0, 0], [0, 0]]))) == 2
    assert kernel_basis(Matrix.identity(3, Q)) == []
    (v,) = kernel_basis(M([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_rank_det_examples():
    i4 = Matrix.identity(4, Q)
    assert rank(i4) == 4 and det(i4) == 1
    assert det(M([[0, 0, 1], [0, 1, 0], [1, 0, 0]])) == -1
    m = M([[1, 2], [2, 4]])
    assert rank(m) == 1 and det(m) == 0


@given(symmetric())
def test_signature_matches_charpoly(a):
    assert ldlt_signature(M(a)).as_tuple() == sympy_inertia(a)


@given(symmetric(max_n=4), st.lists(small, min_size=16, max_size=16))
def test_signature_congruence_invariant(a, extra):
    # P unit upper triangular, hence invertible
    n = len(a)
    p = [[1 if i == j else (extra[i * 4 + j] if j > i else 0) for j in range(n)] for i in range(n)]
    pm = M(p)
    b = pm.T @ M(a) @ pm
    assert ldlt_signature(b) == ldlt_signature(M(a))


@given(rational_matrices())
def test_rank_det_kernel_match_sympy(rows):
    m = M(rows)
    sm = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert rank(m) == sm.rank()
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        col = Matrix.from_columns([v], m.cols, Q)
        assert (m @ col).is_zero()
    if m.rows == m.cols:
        d = sm.det()
        assert det(m) == gmpy2.mpq(int(d.p), int(d.q))


@given(symmetric(max_n=4))
def test_float_signature_agrees_on_integer_matrices(a):
    fb = float_backend()
    assert ldlt_signature(M(a, fb)) == ldlt_signature(M(a))


def test_float_tiny_entries_count_as_zero():
    fb = float_backend(64, 1e-9)
    m = M([[1, 0], [0, Fraction(1, 10 ** 14)]], fb)
    assert ldlt_signature(m).as_tuple() == (1, 0, 1)
    assert ldlt_signature(M([[1, 0], [0, Fraction(1, 10 ** 14)]])).as_tuple() == (2, 0, 0)


def test_cosines():
    assert Q.cos_pi_over(2) == 0
    assert Q.cos_pi_over(INF) == 1
    assert Q.cos_pi_over(1) == -1
    assert Q.cos_pi_over(3) == Fraction(1, 2)
    with pytest.raises(BackendError):
        Q.cos_pi_over(5)
    fb = float_backend()
    assert fb.cos_pi_over(2) == 0
    assert abs(fb.cos_pi_over(5) - (1 + 5 ** 0.5) / 4) < 1e-15
    assert abs(fb.cos_pi_over(6) - 3 ** 0.5 / 2) < 1e-15


def test_backend_mixing_is_rejected():
    fb = float_backend()
    with pytest.raises(BackendMismatchError):
        M([[1]]) @ M([[1]], fb)
    with pytest.raises(BackendMismatchError):
        Matrix([[fb.one]], Q)


def test_backend_parameters():
    assert get_backend("rational") is Q
    assert get_backend("float", 80, 1e-12) is float_backend(80, 1e-12)
    with pytest.raises(BackendError):
        get_backend("decimal")
    with pytest.raises(BackendError):
        float_backend(20)
    assert Q.format(Q.scalar(3)) == "3/1"
    assert Q.format(Q.scalar("-3/8")) == "-3/8"
