"""Pure-Python hot loops.  ``_ckernels.pyx`` mirrors this module line for line.

Masks are ints with bit ``k`` standing for the variable x_{k+1}; positions
here are 0-based.  Coefficients are opaque backend scalars.
"""


class MulTable:
    """Multiplication by single variables in a square-free normal-form basis.

    ``tails[k]`` lists ``(a, b, c)`` with ``a < b < k`` such that
    ``x_k^2 = sum c * x_a * x_b`` modulo the ideal.  Products ``x_k * x^M``
    are memoised; the recursion only ever calls smaller variables, so it is
    well founded.
    """

    def __init__(self, n, tails, one):
        self.n = n
        self.tails = [tuple(t) for t in tails]
        self.one = one
        self._memo = {}

    def times_var(self, k, mask):
        key = (k, mask)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        bit = 1 << k
        if not mask & bit:
            out = {mask | bit: self.one}
        else:
            base = mask ^ bit
            out = {}
            for a, b, c in self.tails[k]:
                for m1, c1 in self.times_var(a, base).items():
                    for m2, c2 in self.times_var(b, m1).items():
                        v = out.get(m2)
                        out[m2] = c * c1 * c2 if v is None else v + c * c1 * c2
            out = {m: v for m, v in out.items() if v}
        self._memo[key] = out
        return out

    def apply_var(self, k, vec):
        out = {}
        for mask, c in vec.items():
            for m2, c2 in self.times_var(k, mask).items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return {m: v for m, v in out.items() if v}

    def mul(self, a, b):
        out = {}
        for jmask, cb in b.items():
            cur = a
            k = 0
            j = jmask
            while j:
                if j & 1:
                    cur = self.apply_var(k, cur)
                    if not cur:
                        break
                j >>= 1
                k += 1
            for m, c in cur.items():
                v = out.get(m)
                out[m] = c * cb if v is None else v + c * cb
        return {m: v for m, v in out.items() if v}


def expand_squares(exps, coeff, carries):
    """Reduce the tensor ``coeff * prod alpha^{exps[i]}`` to square-free patterns.

    ``carries[m]`` lists ``(l, d)``: alpha_{s_m} moved left from slot m leaves
    ``d * alpha_{s_l}`` in slot l.  A square alpha_{s_m}^2 is wall-m invariant,
    so it crosses as two independent carries.  Terms are bucketed by their
    rightmost square and processed right to left so equal patterns merge.
    """
    n = len(exps)
    buckets = [dict() for _ in range(n)]
    out = {}

    def push(e, c):
        for m in range(n - 1, -1, -1):
            if e[m] >= 2:
                d = buckets[m]
                v = d.get(e)
                d[e] = c if v is None else v + c
                return
        mask = 0
        for i in range(n):
            if e[i]:
                mask |= 1 << i
        v = out.get(mask)
        out[mask] = c if v is None else v + c

    push(tuple(exps), coeff)
    for m in range(n - 1, -1, -1):
        bucket = buckets[m]
        carry = carries[m]
        while bucket:
            e, c = bucket.popitem()
            if not c:
                continue
            base = list(e)
            base[m] -= 2
            for l1, d1 in carry:
                base[l1] += 1
                c1 = c * d1
                for l2, d2 in carry:
                    base[l2] += 1
                    push(tuple(base), c1 * d2)
                    base[l2] -= 1
                base[l1] -= 1
    return {m: v for m, v in out.items() if v}
