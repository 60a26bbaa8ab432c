import dataclasses
from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from bottsamelson import groebner
from bottsamelson.numeric import RATIONAL, float_backend
from bottsamelson.polynomial import Poly, divide, format_poly, spoly
from bottsamelson.ring import build_presentation

from conftest import EXACT_ORDERS, dihedral_word, word, words

Q = RATIONAL
ALT4 = dihedral_word(3, (0, 1, 0, 1))
REP4 = dihedral_word(3, (0, 0, 1, 0))
COMMUTING = word([[1, 2, 2], [2, 1, 2], [2, 2, 1]], (0, 1, 2))


def names(report):
    return {c.name: c for c in report.checks}


def test_length_four_spairs_and_leading_terms():
    for w in (ALT4, REP4):
        rep = groebner.spair_reduce_all(build_presentation(w, Q))
        assert rep.passed
        checks = names(rep)
        assert checks["spair(q3,q4) -> 0"].passed
        assert checks["spair(q'3,q'4) -> 0"].passed
        for k in range(1, 5):
            assert checks[f"leading(q{k}) = x{k}^2"].passed


def test_spair_of_q3_q4_by_hand():
    p = build_presentation(ALT4, Q)
    G = p.relations(reduced=False)
    _, r = divide(spoly(G[2], G[3]), G)
    assert r.is_zero()


def test_reducedness():
    assert groebner.reducedness_check(build_presentation(REP4, Q)).passed
    # raw relations of (s1,s2,s1) carry x1^2 and x2^2 terms
    raw = groebner.reducedness_check(build_presentation(dihedral_word(3, (0, 1, 0)), Q), reduced=False)
    assert not raw.passed
    bad = raw.failed()[0]
    assert bad.witness["divisible_by"]
    p = build_presentation(COMMUTING, Q)
    assert p.raw == p.reduced
    assert groebner.reducedness_check(p, reduced=False).passed


def test_certificates():
    cert = groebner.ci_koszul_certificate(build_presentation(dihedral_word(2, (0, 1)), Q))
    assert cert.passed and cert.metadata["hilbert"] == [1, 2, 1]
    cert = groebner.ci_koszul_certificate(build_presentation(ALT4, Q))
    assert cert.metadata["status"] == "certified"
    assert cert.metadata["verdict"] == groebner.KOSZUL_LINE
    assert cert.metadata["hilbert"] == [1, 4, 6, 4, 1]
    cert = groebner.ci_koszul_certificate(build_presentation(COMMUTING, Q))
    assert cert.metadata["koszul_dual_hilbert_prefix"] == [1, 3, 6, 10]


def test_tampered_presentation_is_refused_with_witnesses():
    p = build_presentation(ALT4, Q)
    bad = dataclasses.replace(p, reduced=({(1, 2): Q.one},) + p.reduced[1:])
    rep = groebner.reducedness_check(bad)
    assert not rep.passed
    with pytest.raises(groebner.CertificationRefused) as exc:
        groebner.ci_koszul_certificate(bad)
    failed = exc.value.failed
    assert failed and all(c.witness is not None for c in failed)
    assert any(c.name.startswith("monic leading(q'1)") for c in failed)


def test_report_requires_witness():
    rep = groebner.CertReport({})
    with pytest.raises(ValueError):
        rep.add("x", False)


def test_standard_monomials_need_artinian_quotient():
    x = Poly(2, {(1, 1): 1}, Q)
    with pytest.raises(ValueError):
        groebner.standard_monomials([x])
    sq = [Poly(2, {(2, 0): 1}, Q), Poly(2, {(0, 2): 1}, Q)]
    assert sorted(groebner.standard_monomials(sq)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def _sympy_reduced_gb(p):
    n = p.n
    xs = sympy.symbols(f"x1:{n + 1}")
    polys = []
    for g in p.relations(reduced=False):
        expr = 0
        for e, c in g.terms.items():
            term = sympy.Rational(int(c.numerator), int(c.denominator))
            for x, k in zip(xs, e):
                term *= x ** k
            expr += term
        polys.append(expr)
    gb = sympy.groebner(polys, *reversed(xs), order="lex")
    return sorted((sympy.expand(g) for g in gb.exprs), key=sympy.srepr), xs


@given(words(EXACT_ORDERS, min_len=1, max_len=6))
def test_reduced_basis_matches_sympy(w):
    p = build_presentation(w, Q)
    got, xs = _sympy_reduced_gb(p)
    ours = []
    for g in p.relations(reduced=True):
        expr = 0
        for e, c in g.terms.items():
            term = sympy.Rational(int(c.numerator), int(c.denominator))
            for x, k in zip(xs, e):
                term *= x ** k
            expr += term
        ours.append(sympy.expand(expr))
    assert sorted(ours, key=sympy.srepr) == got


@given(words(EXACT_ORDERS, min_len=1, max_len=6))
def test_certificate_exact(w):
    p = build_presentation(w, Q)
    cert = groebner.ci_koszul_certificate(p)
    assert cert.passed
    assert len(groebner.standard_monomials(p.relations())) == 2 ** w.n


@given(words(min_len=1, max_len=6))
def test_certificate_float(w):
    p = build_presentation(w, float_backend())
    assert groebner.ci_koszul_certificate(p).passed


def test_formatting():
    p = build_presentation(ALT4, Q)
    assert format_poly(p.relation_poly(4)) == "x4^2 + 3/4 x2x3 + 3/8 x1x3 - 3/8 x1x2"
    assert format_poly(Poly(3, {(0, 0, 0): Fraction(-1, 2)}, Q)) == "-1/2"
