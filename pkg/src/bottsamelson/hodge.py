"""Hard Lefschetz and Hodge-Riemann checks, and the search for a Lefschetz vector.

For ``l = sum c_i x_i`` and ``k <= n/2``:

* HL: multiplication by ``l^(n-2k)`` from degree k to degree n-k is invertible;
* HR: ``(a, b) -> deg(l^(n-2k) a b)`` is ``(-1)^k``-definite on the primitive
  subspace ``P^k = ker(l^(n-2k+1))`` inside degree k.

Float verdicts are three-valued; a sign that does not clear the tolerance
makes the verdict ``"inconclusive"``, never ``"pass"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .numeric import BackendMismatchError, Matrix, det, kernel_basis, ldlt_signature, rank
from .ring import RingElement, basis_masks, build_presentation, pairing_matrix

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
DEFAULT_HALVINGS = 60


class UncertifiedError(ValueError):
    pass


class AmpleSearchError(RuntimeError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


def combine(verdicts):
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


@dataclass(frozen=True)
class LefschetzVector:
    c: tuple
    backend: object

    def __post_init__(self):
        be = self.backend
        c = tuple(be.scalar(x) for x in self.c)
        for i, x in enumerate(c, start=1):
            if not x > 0 or be.is_zero(x):
                raise ValueError(f"Lefschetz coefficient c_{i} = {be.short(x)} is not positive")
        object.__setattr__(self, "c", c)

    @property
    def n(self):
        return len(self.c)

    def element(self, n=None):
        n = self.n if n is None else n
        return RingElement(n, {1 << i: x for i, x in enumerate(self.c)}, self.backend)

    def prefix(self, k):
        return LefschetzVector(self.c[:k], self.backend)

    def extend(self, x):
        return LefschetzVector(self.c + (self.backend.scalar(x),), self.backend)

    def scaled(self, lam):
        lam = self.backend.scalar(lam)
        return LefschetzVector(tuple(lam * x for x in self.c), self.backend)

    def formatted(self):
        return [self.backend.format(x) for x in self.c]


class _Lefschetz:
    """Cached single-step matrices of multiplication by l."""

    def __init__(self, p, lvec):
        if lvec.n != p.n:
            raise ValueError(f"Lefschetz vector of length {lvec.n} for a word of length {p.n}")
        if lvec.backend is not p.backend:
            raise BackendMismatchError("Lefschetz vector and presentation use different backends")
        self.p = p
        self.l = lvec.element()
        self.steps = {}

    def step(self, d):
        """Matrix of l: degree d -> degree d+1."""
        if d not in self.steps:
            p = self.p
            be = p.backend
            n = p.n
            src = basis_masks(n, d)
            dst = basis_masks(n, d + 1)
            cols = []
            for I in src:
                prod = p.table.mul({I: be.one}, self.l.terms)
                cols.append([prod.get(J, be.zero) for J in dst])
            self.steps[d] = Matrix.from_columns(cols, len(dst), be)
        return self.steps[d]

    def power(self, k, t):
        p = self.p
        if k < 0 or t < 0 or k > p.n:
            raise ValueError(f"invalid degree/power k={k}, t={t} for n={p.n}")
        if k + t > p.n:
            return Matrix.zeros(0, comb(p.n, k), p.backend)
        m = Matrix.identity(comb(p.n, k), p.backend)
        for d in range(k, k + t):
            m = self.step(d) @ m
        return m


def lefschetz_power_matrix(p, lvec, k, t):
    """Matrix of multiplication by l^t from degree k to degree k+t (canonical bases)."""
    return _Lefschetz(p, lvec).power(k, t)


def _invertible_verdict(m):
    be = m.backend
    if m.rows != m.cols:
        return FAIL, None
    r = rank(m)
    if r == m.rows:
        return PASS, det(m)
    if be.exact:
        return FAIL, det(m)
    return INCONCLUSIVE, det(m)


def verify_hl(p, lvec, _lf=None):
    lf = _lf or _Lefschetz(p, lvec)
    be = p.backend
    out = []
    for k in range(p.n // 2 + 1):
        m = lf.power(k, p.n - 2 * k)
        verdict, d = _invertible_verdict(m)
        out.append({"k": k, "shape": [m.rows, m.cols], "rank": rank(m),
                    "det": be.format(d) if d is not None else None, "verdict": verdict})
    return out


def primitive_basis(p, lvec, k, _lf=None):
    """Basis of ker(l^(n-2k+1)) in degree k, as ring elements."""
    if not 0 <= k <= p.n // 2:
        raise ValueError(f"primitive degree {k} outside 0..{p.n // 2}")
    lf = _lf or _Lefschetz(p, lvec)
    be = p.backend
    m = lf.power(k, p.n - 2 * k + 1)
    masks = basis_masks(p.n, k)
    if m.rows == 0:
        vecs = [[be.one if i == j else be.zero for j in range(len(masks))] for i in range(len(masks))]
    else:
        vecs = kernel_basis(m)
    return [RingElement(p.n, dict(zip(masks, v)), be) for v in vecs]


def hr_gram(p, lvec, k, _lf=None):
    """Gram matrix of deg(l^(n-2k) a b) on the canonical basis of degree k."""
    lf = _lf or _Lefschetz(p, lvec)
    a = lf.power(k, p.n - 2 * k)
    return a.T @ pairing_matrix(p, p.n - k)


def _definite_verdict(sig, sign, exact):
    wrong = sig.n_neg if sign > 0 else sig.n_pos
    if wrong:
        return FAIL
    if sig.n_zero:
        # a near-zero direction in float mode could go either way
        return FAIL if exact else INCONCLUSIVE
    return PASS


@dataclass
class HodgeReport:
    word: dict
    c: list
    tolerance: object
    degrees: list = field(default_factory=list)

    @property
    def verdict(self):
        return combine(d["verdict"] for d in self.degrees)

    @property
    def passed(self):
        return self.verdict == PASS

    def failing(self):
        return next((d for d in self.degrees if d["verdict"] != PASS), None)

    def to_dict(self):
        return {"word": self.word, "c": self.c, "tolerance": self.tolerance,
                "verdict": self.verdict, "degrees": self.degrees}


def verify_hr(p, lvec):
    """Full per-degree report: HL, primitive dimension, HR signature, consistency checks."""
    lf = _Lefschetz(p, lvec)
    be = p.backend
    n = p.n
    hl = {row["k"]: row for row in verify_hl(p, lvec, lf)}
    report = HodgeReport({**p.word.descriptor(), **be.describe()}, lvec.formatted(),
                         be.tolerance)
    hl_ok_below = True
    for k in range(n // 2 + 1):
        hl_ambiguous = any(hl[j]["verdict"] == INCONCLUSIVE for j in range(k + 1))
        masks = basis_masks(n, k)
        prim = primitive_basis(p, lvec, k, lf)
        g = hr_gram(p, lvec, k, lf)
        if not g.is_symmetric():
            raise ArithmeticError(f"HR Gram matrix at degree {k} is not symmetric")
        gp = _restrict_to(g, prim, masks)
        sig = ldlt_signature(gp)
        sign = 1 if k % 2 == 0 else -1
        hr = _definite_verdict(sig, sign, be.exact)
        expected_dim = comb(n, k) - (comb(n, k - 1) if k else 0)
        dim_ok = len(prim) == expected_dim
        # degree-k space splits as l * (degree k-1) plus the primitive part
        if k:
            lower = lf.step(k - 1)
            cols = [lower.column(j) for j in range(lower.cols)]
            cols += [[v.terms.get(m, be.zero) for m in masks] for v in prim]
            split_rank = rank(Matrix.from_columns(cols, len(masks), be))
        else:
            split_rank = len(prim)
        split_ok = split_rank == len(masks)
        verdicts = [hl[k]["verdict"], hr]
        if hl_ok_below and hl[k]["verdict"] == PASS:
            verdicts.append(PASS if dim_ok else FAIL)
            verdicts.append(PASS if split_ok else FAIL)
        verdict = combine(verdicts)
        if verdict == FAIL and not be.exact and hl_ambiguous:
            # the primitive subspace rests on a rank decision that was itself ambiguous
            verdict = INCONCLUSIVE
        row = {"k": k, "hl": hl[k], "primitive_dim": len(prim), "expected_primitive_dim": expected_dim,
               "split_rank": split_rank, "hr_signature": list(sig.as_tuple()),
               "hr_sign": sign, "hr_verdict": hr, "verdict": verdict}
        if verdict != PASS:
            row["gram_witness"] = [[be.format(x) for x in r] for r in gp.data]
        report.degrees.append(row)
        hl_ok_below = hl_ok_below and hl[k]["verdict"] == PASS
    return report


def _restrict_to(g, vectors, masks):
    be = g.backend
    if not vectors:
        return Matrix([], be, cols=0)
    b = Matrix.from_columns([[v.terms.get(m, be.zero) for m in masks] for v in vectors],
                            len(masks), be)
    return b.T @ g @ b


def schedule(backend, halvings=DEFAULT_HALVINGS):
    return [backend.scalar(Fraction(1, 2 ** t)) for t in range(halvings + 1)]


@dataclass
class AmpleResult:
    vector: LefschetzVector
    log: list
    report: HodgeReport


def find_ample(w, backend, halvings=DEFAULT_HALVINGS, start=None):
    """Inductive search: c_1 = 1, then the largest c_j in 1, 1/2, 1/4, ... that works.

    ``start`` may supply an already certified prefix vector.
    """
    n = w.n
    log = []
    if n == 0:
        lvec = LefschetzVector((), backend)
        return AmpleResult(lvec, log, verify_hr(build_presentation(w, backend), lvec))
    lvec = start if start is not None else LefschetzVector((backend.one,), backend)
    j0 = lvec.n
    report = verify_hr(build_presentation(w.prefix(j0), backend), lvec)
    log.append({"j": j0, "c_j": backend.format(lvec.c[-1]), "tries": 1, "verdict": report.verdict})
    if not report.passed:
        raise AmpleSearchError(f"starting prefix of length {j0} is not certified",
                               report.failing())
    for j in range(j0 + 1, n + 1):
        p = build_presentation(w.prefix(j), backend)
        last = None
        for tries, cj in enumerate(schedule(backend, halvings), start=1):
            cand = lvec.extend(cj)
            rep = verify_hr(p, cand)
            if rep.passed:
                lvec, report = cand, rep
                log.append({"j": j, "c_j": backend.format(cj), "tries": tries, "verdict": PASS})
                break
            last = rep
        else:
            bad = last.failing()
            raise AmpleSearchError(
                f"no c_{j} in the halving schedule worked (last verdict {last.verdict} at degree "
                f"{bad['k']})", {"j": j, "degree": bad})
    return AmpleResult(lvec, log, report)


def signature_transfer_check(w, lvec, backend):
    """Signature on all of degree k for w versus on P^k for the prefix of length n-1."""
    n = w.n
    if n == 0:
        raise ValueError("signature transfer needs a word of length >= 1")
    p = build_presentation(w, backend)
    pp = build_presentation(w.prefix(n - 1), backend)
    lp = lvec.prefix(n - 1)
    full = verify_hr(p, lvec)
    pref = verify_hr(pp, lp)
    if not full.passed or not pref.passed:
        raise UncertifiedError("signature transfer requires certified vectors for w and its prefix")
    lf = _Lefschetz(p, lvec)
    lfp = _Lefschetz(pp, lp)
    rows = []
    for k in range(n // 2 + 1):
        left = ldlt_signature(hr_gram(p, lvec, k, lf))
        if k <= (n - 1) // 2:
            prim = primitive_basis(pp, lp, k, lfp)
            gp = _restrict_to(hr_gram(pp, lp, k, lfp), prim, basis_masks(n - 1, k))
            right = ldlt_signature(gp)
        else:
            # P^k of the shorter word is ker of l^0, i.e. zero
            right = ldlt_signature(Matrix([], backend, cols=0))
        ok = left.value == right.value
        row = {"k": k, "full_signature": left.value, "full_inertia": list(left.as_tuple()),
               "primitive_signature": right.value, "primitive_inertia": list(right.as_tuple()),
               "verdict": PASS if ok else FAIL}
        if 2 * k == n:
            row["middle_degree_zero"] = left.value == 0 and right.value == 0
            if not row["middle_degree_zero"]:
                row["verdict"] = FAIL
        rows.append(row)
    return rows
