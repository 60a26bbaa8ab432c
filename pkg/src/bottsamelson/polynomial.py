"""Sparse commutative polynomials in x1..xn with lex order x_n > ... > x_1.

A polynomial is a dict from exponent tuples to backend scalars.  The lex key
of an exponent vector compares x_n first, so ``lex_key(e) = e[::-1]``.
"""

from __future__ import annotations

from .numeric import same_backend


def lex_key(e):
    return e[::-1]


class Poly:
    __slots__ = ("n", "terms", "backend")

    def __init__(self, n, terms, backend):
        self.n = n
        self.backend = backend
        self.terms = {tuple(e): backend.scalar(c) for e, c in terms.items() if c}

    @classmethod
    def zero(cls, n, backend):
        return cls(n, {}, backend)

    @classmethod
    def monomial(cls, e, c, backend):
        return cls(len(e), {tuple(e): c}, backend)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        z = self.backend.is_zero
        return all(z(c) for c in self.terms.values())

    def __eq__(self, other):
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def leading(self):
        """(exponents, coefficient) of the lex-largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lex_key)
        return e, self.terms[e]

    def __add__(self, other):
        same_backend(self.backend, other.backend)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, self.backend.zero) + c
        return Poly(self.n, out, self.backend)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = self.backend.scalar(c)
        return Poly(self.n, {e: c * v for e, v in self.terms.items()}, self.backend)

    def shift(self, e, c):
        """c * x^e * self."""
        c = self.backend.scalar(c)
        return Poly(self.n, {tuple(a + b for a, b in zip(e, f)): c * v
                             for f, v in self.terms.items()}, self.backend)

    def __mul__(self, other):
        same_backend(self.backend, other.backend)
        out = {}
        zero = self.backend.zero
        for e, a in self.terms.items():
            for f, b in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                out[g] = out.get(g, zero) + a * b
        return Poly(self.n, out, self.backend)

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def spoly(f, g):
    ef, cf = f.leading()
    eg, cg = g.leading()
    m = lcm(ef, eg)
    one = f.backend.one
    return f.shift(sub_exp(m, ef), one / cf) - g.shift(sub_exp(m, eg), one / cg)


def divide(f, divisors):
    """Multivariate division; returns (quotients, remainder).

    Divisors are tried in list order at every step.  In float mode a leading
    coefficient below tolerance is discarded as zero.
    """
    be = f.backend
    lead = [g.leading() for g in divisors]
    quotients = [dict() for _ in divisors]
    p = dict(f.terms)
    rem = {}
    while p:
        e = max(p, key=lex_key)
        c = p[e]
        if be.is_zero(c):
            del p[e]
            continue
        for i, (eg, cg) in enumerate(lead):
            if divides(eg, e):
                q = sub_exp(e, eg)
                factor = c / cg
                quotients[i][q] = quotients[i].get(q, be.zero) + factor
                for f2, v in divisors[i].terms.items():
                    t = tuple(a + b for a, b in zip(q, f2))
                    p[t] = p.get(t, be.zero) - factor * v
                if e in p and (not p[e] or be.is_zero(p[e])):
                    del p[e]
                break
        else:
            rem[e] = c
            del p[e]
    n = f.n
    return [Poly(n, q, be) for q in quotients], Poly(n, rem, be)


def format_monomial(e):
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "".join(parts) or "1"


def format_terms(items, backend):
    """Render ``[(exps, coeff), ...]`` in order as ``x4^2 - 3/8 x1x2 + ...``."""
    out = []
    for e, c in items:
        neg = c < 0
        mag = -c if neg else c
        mon = format_monomial(e)
        if mag == 1 and mon != "1":
            body = mon
        elif mon == "1":
            body = backend.short(mag)
        else:
            body = f"{backend.short(mag)} {mon}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out) if out else "0"


def format_poly(p):
    items = sorted(p.terms.items(), key=lambda t: lex_key(t[0]), reverse=True)
    return format_terms(items, p.backend)
