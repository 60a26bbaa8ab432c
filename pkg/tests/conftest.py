import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bottsamelson.coxeter import CoxeterMatrix, CoxeterWord
from bottsamelson.numeric import INF

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=15,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ALL_ORDERS = (2, 3, 4, 5, 6, INF)
EXACT_ORDERS = (2, 3, INF)


@st.composite
def coxeter_matrices(draw, orders=ALL_ORDERS, max_size=3):
    size = draw(st.integers(1, max_size))
    edges = {}
    for i in range(size):
        for j in range(i + 1, size):
            edges[i, j] = draw(st.sampled_from(orders))
    return CoxeterMatrix.from_edges(size, edges)


@st.composite
def words(draw, orders=ALL_ORDERS, min_len=0, max_len=5, max_size=3):
    cm = draw(coxeter_matrices(orders, max_size))
    letters = draw(st.lists(st.integers(0, cm.size - 1), min_size=min_len, max_size=max_len))
    return CoxeterWord(cm, tuple(letters))


def word(m_entries, letters, names=None):
    """Word in a system given by a full matrix, letters as 0-based indices."""
    return CoxeterWord(CoxeterMatrix(tuple(map(tuple, m_entries)), names), tuple(letters))


def dihedral_word(m, letters):
    return CoxeterWord(CoxeterMatrix.dihedral(m), tuple(letters))
