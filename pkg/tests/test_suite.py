from bottsamelson import suite
from bottsamelson.numeric import RATIONAL
from bottsamelson.ring import build_presentation, word_m_matrix


def test_random_words_are_deterministic():
    a = [w.descriptor() for w in suite.random_words(5, 10, 6)]
    b = [w.descriptor() for w in suite.random_words(5, 10, 6)]
    assert a == b
    assert any(len(set(w["word"])) < len(w["word"]) for w in a)


def test_backend_choice():
    for w in suite.random_words(2, 30, 5):
        be = suite.pick_backend(w)
        assert be.exact == all(m in (1, 2, 3, float("inf")) for m in w.relevant_orders())


def test_length_one_rings_are_dual_numbers():
    for w in suite.random_words(3, 10, 1):
        p = build_presentation(w, suite.pick_backend(w))
        assert p.relation_string(1) == "x1^2"


def test_embedded_pairs_share_m_matrix_only():
    for w1, w2 in suite.embedded_pairs(11, 10):
        assert word_m_matrix(w1) == word_m_matrix(w2)
        assert w1.matrix.size < w2.matrix.size


def test_invariance_pairs_are_identical():
    out = suite.invariance_pairs(11, 10)
    assert all(rep.same_m_matrix and rep.identical for _, _, rep in out)


def test_run_word_collects_every_check():
    w = suite.random_words(0, 1, 4, orders=suite.RATIONAL_ORDERS, min_len=4)[0]
    rep = suite.run_word(w, RATIONAL)
    assert [c["check"] for c in rep["checks"]] == ["oracle", "qmatrix", "pd", "gb", "hodge"]
    assert rep["verdict"] == "pass"
