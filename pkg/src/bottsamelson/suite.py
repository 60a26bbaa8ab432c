"""Seeded random words and the cross-validation checks run on each of them."""

from __future__ import annotations

import random

from . import groebner, hodge
from .coxeter import CoxeterMatrix, CoxeterWord
from .demazure import PATHSUM_MAX_LEN, q_entry_pathsum
from .numeric import INF, RATIONAL, float_backend
from .ring import RingElement, build_presentation, invariance_check, is_complement_permutation, mul
from .tensor import ORACLE_MAX_LEN, oracle_structure_constants

ORDERS = (2, 3, 4, 5, 6, INF)
RATIONAL_ORDERS = (2, 3, INF)


def random_matrix(rng, size, orders=ORDERS):
    edges = {}
    for i in range(size):
        for j in range(i + 1, size):
            edges[i, j] = rng.choice(orders)
    return CoxeterMatrix.from_edges(size, edges)


def random_word(rng, max_len, orders=ORDERS, min_len=1):
    """Random ambient system on 1-3 generators and a word that may repeat letters."""
    size = rng.randint(1, 3)
    cm = random_matrix(rng, size, orders)
    n = rng.randint(min_len, max_len)
    return CoxeterWord(cm, tuple(rng.randrange(size) for _ in range(n)))


def random_words(seed, count, max_len, orders=ORDERS, min_len=1):
    rng = random.Random(seed)
    return [random_word(rng, max_len, orders, min_len) for _ in range(count)]


def pick_backend(w, precision_bits=None, tolerance=None):
    if all(RATIONAL.has_cosine(m) for m in w.relevant_orders()):
        return RATIONAL
    kw = {}
    if precision_bits is not None:
        kw["precision_bits"] = precision_bits
    if tolerance is not None:
        kw["tolerance"] = tolerance
    return float_backend(**kw)


def embedded_pair(rng, max_len=6):
    """Two words with equal pairwise orders living in different ambient systems.

    The second system relabels the used generators and adds extra ones with
    random orders, so only the orders between used letters agree.
    """
    w = random_word(rng, max_len, min_len=2)
    cm = w.matrix
    size = cm.size
    extra = rng.randint(1, 2)
    big = size + extra
    perm = list(range(big))
    rng.shuffle(perm)
    edges = {}
    for i in range(big):
        for j in range(i + 1, big):
            edges[i, j] = rng.choice(ORDERS)
    for a in range(size):
        for b in range(a + 1, size):
            i, j = sorted((perm[a], perm[b]))
            edges[i, j] = cm.order(a, b)
    cm2 = CoxeterMatrix.from_edges(big, edges, names=tuple(f"t{i + 1}" for i in range(big)))
    w2 = CoxeterWord(cm2, tuple(perm[s] for s in w.letters))
    return w, w2


def embedded_pairs(seed, count, max_len=6):
    rng = random.Random(seed)
    return [embedded_pair(rng, max_len) for _ in range(count)]


# --- checks ------------------------------------------------------------------


def _result(name, ok, witness=None, **extra):
    out = {"check": name, "verdict": hodge.PASS if ok else hodge.FAIL, **extra}
    if not ok:
        out["witness"] = witness
    return out


def check_oracle(p):
    be = p.backend
    n = p.n
    if n > ORACLE_MAX_LEN:
        return {"check": "oracle", "verdict": "skipped", "reason": "word too long"}
    table = oracle_structure_constants(p.word, be)
    for (I, J), want in sorted(table.items()):
        if I > J:
            continue
        got = mul(p, RingElement.from_mask(n, I, be), RingElement.from_mask(n, J, be))
        if not got.close_to(RingElement(n, want, be)):
            return _result("oracle", False, {
                "I": I, "J": J,
                "oracle": {str(k): be.format(v) for k, v in sorted(want.items())},
                "normal_form": {str(k): be.format(v) for k, v in sorted(got.terms.items())}})
    return _result("oracle", True, pairs=len(table))


def check_qmatrix(p):
    be = p.backend
    w = p.word
    if w.n > PATHSUM_MAX_LEN:
        return {"check": "qmatrix", "verdict": "skipped", "reason": "word too long"}
    for m in range(1, w.n + 1):
        for l in range(1, m):
            a = q_entry_pathsum(w, l, m, be)
            b = p.qmatrix.entry(l, m)
            if not be.is_zero(a - b):
                return _result("qmatrix", False, {"l": l, "m": m, "pathsum": be.format(a),
                                                  "series": be.format(b)})
            bound = be.scalar(2 ** (m - 1 - l))
            mag = b if b >= 0 else -b
            if mag > bound and not be.is_zero(mag - bound):
                return _result("qmatrix", False, {"l": l, "m": m, "q": be.format(b),
                                                  "bound": be.format(bound)})
    return _result("qmatrix", True)


def check_pd(p):
    for k in range(p.n + 1):
        if not is_complement_permutation(p, k):
            return _result("pd", False, {"degree": k})
    return _result("pd", True)


def check_gb(p):
    prior = [groebner.spair_reduce_all(p), groebner.reducedness_check(p)]
    try:
        cert = groebner.ci_koszul_certificate(p, prior)
    except groebner.CertificationRefused as e:
        return _result("gb", False, [{"name": c.name, "witness": c.witness} for c in e.failed])
    if not cert.passed:
        return _result("gb", False, [{"name": c.name, "witness": c.witness} for c in cert.failed()])
    return _result("gb", True, status=cert.metadata["status"])


def check_hodge(w, backend):
    """find_ample plus signature transfer; exact backends only."""
    try:
        res = hodge.find_ample(w, backend)
    except hodge.AmpleSearchError as e:
        return _result("hodge", False, {"message": str(e), "step": e.step})
    rows = hodge.signature_transfer_check(w, res.vector, backend) if w.n else []
    ok = res.report.passed and all(r["verdict"] == hodge.PASS for r in rows)
    return _result("hodge", ok, {"hr": res.report.to_dict(), "transfer": rows},
                   c=res.vector.formatted())


def run_word(w, backend=None, hodge_checks=True):
    be = backend or pick_backend(w)
    p = build_presentation(w, be)
    checks = [check_oracle(p), check_qmatrix(p), check_pd(p), check_gb(p)]
    if hodge_checks and be.exact:
        checks.append(check_hodge(w, be))
    verdict = hodge.combine(c["verdict"] for c in checks if c["verdict"] != "skipped")
    return {**w.descriptor(), **be.describe(), "checks": checks, "verdict": verdict}


def random_suite(seed, count, max_len, precision_bits=None, tolerance=None):
    items = []
    for idx, w in enumerate(random_words(seed, count, max_len)):
        be = pick_backend(w, precision_bits, tolerance)
        items.append({"index": idx, **run_word(w, be)})
    verdict = hodge.combine(it["verdict"] for it in items)
    return {"seed": seed, "count": count, "max_len": max_len, "verdict": verdict, "items": items}


def invariance_pairs(seed, count, max_len=6):
    out = []
    for w1, w2 in embedded_pairs(seed, count, max_len):
        be = pick_backend(w1)
        rep = invariance_check(w1, w2, be)
        out.append((w1, w2, rep))
    return out

