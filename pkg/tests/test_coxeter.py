import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottsamelson.coxeter import (CoxeterError, CoxeterMatrix, CoxeterWord, LinearForm, bilinear,
                                  cosine, finiteness_hint, geometric_form, parse_order, reflect)
from bottsamelson.numeric import INF, RATIONAL, float_backend

from conftest import EXACT_ORDERS, coxeter_matrices

Q = RATIONAL


def test_cosine_values():
    assert cosine(2, Q) == 0
    assert cosine(INF, Q) == 1
    assert cosine(1, Q) == -1


def test_geometric_form_examples():
    assert geometric_form(CoxeterMatrix(((1,),)), Q).data == ((1,),)
    g3 = geometric_form(CoxeterMatrix.dihedral(3), Q)
    assert [[Q.format(x) for x in r] for r in g3.data] == [["1/1", "-1/2"], ["-1/2", "1/1"]]
    ginf = geometric_form(CoxeterMatrix.dihedral(INF), Q)
    assert [[int(x) for x in r] for r in ginf.data] == [[1, -1], [-1, 1]]


def test_reflect_examples():
    cm3 = CoxeterMatrix.dihedral(3)
    a1, a2 = LinearForm.root(0, 2, Q), LinearForm.root(1, 2, Q)
    assert reflect(cm3, 0, a1) == a1.scale(-1)
    assert reflect(CoxeterMatrix.dihedral(2), 0, a2) == a2
    assert reflect(cm3, 0, a2) == a1 + a2
    with pytest.raises(CoxeterError):
        reflect(cm3, 0, LinearForm.const(1, 2, Q))


def test_finiteness():
    assert finiteness_hint(CoxeterMatrix(((1,),)), Q)
    assert finiteness_hint(CoxeterMatrix.dihedral(3), Q)
    assert not finiteness_hint(CoxeterMatrix.dihedral(INF), Q)
    # affine A~2: orders 3,3,3 are not finite
    assert not finiteness_hint(CoxeterMatrix.from_edges(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3}), Q)
    assert finiteness_hint(CoxeterMatrix.dihedral(5), float_backend())


def test_parse_order():
    assert parse_order("inf") == INF
    assert parse_order("3") == 3
    assert parse_order(4) == 4
    for bad in (0, -1, "x", 2.5, True):
        with pytest.raises(CoxeterError):
            parse_order(bad)


def test_matrix_validation():
    with pytest.raises(CoxeterError):
        CoxeterMatrix(((1, 3), (2, 1)))
    with pytest.raises(CoxeterError):
        CoxeterMatrix(((2, 3), (3, 1)))
    with pytest.raises(CoxeterError):
        CoxeterMatrix(((1, 1), (1, 1)))
    with pytest.raises(CoxeterError):
        CoxeterMatrix(((1, 3), (3, 1)), ("a", "a"))
    cm = CoxeterMatrix(((1, "inf"), ("inf", 1)), ("a", "b"))
    assert cm.order(0, 1) == INF
    with pytest.raises(CoxeterError):
        CoxeterWord.from_names(cm, ["a", "c"])
    with pytest.raises(CoxeterError):
        CoxeterWord(cm, (0, 2))


def test_word_descriptor_round_trip():
    cm = CoxeterMatrix(((1, "inf"), ("inf", 1)), ("a", "b"))
    w = CoxeterWord.from_names(cm, ["a", "b", "a"])
    d = w.descriptor()
    assert d == {"generators": ["a", "b"], "coxeter_matrix": [[1, "inf"], ["inf", 1]],
                 "word": ["a", "b", "a"]}
    cm2 = CoxeterMatrix(tuple(map(tuple, d["coxeter_matrix"])), tuple(d["generators"]))
    assert CoxeterWord.from_names(cm2, d["word"]) == w


forms = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@given(coxeter_matrices(EXACT_ORDERS), forms, forms, st.integers(0, 2))
def test_reflection_is_orthogonal_involution(cm, a, b, s):
    s %= cm.size
    lam = LinearForm.from_coeffs(a[:cm.size], Q)
    mu = LinearForm.from_coeffs(b[:cm.size], Q)
    assert reflect(cm, s, reflect(cm, s, lam)) == lam
    assert bilinear(cm, reflect(cm, s, lam), reflect(cm, s, mu)) == bilinear(cm, lam, mu)


@given(coxeter_matrices(), forms, st.integers(0, 2))
def test_reflection_float(cm, a, s):
    fb = float_backend()
    s %= cm.size
    lam = LinearForm.from_coeffs(a[:cm.size], fb)
    assert reflect(cm, s, reflect(cm, s, lam)).close_to(lam)
