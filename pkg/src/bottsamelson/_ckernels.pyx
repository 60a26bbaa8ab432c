# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same API, C-typed masks and loop indices."""


cdef class MulTable:
    cdef public int n
    cdef public list tails
    cdef public object one
    cdef dict _memo

    def __init__(self, int n, tails, one):
        self.n = n
        self.tails = [tuple(t) for t in tails]
        self.one = one
        self._memo = {}

    cpdef dict times_var(self, int k, long long mask):
        cdef tuple key = (k, mask)
        cdef object hit = self._memo.get(key)
        if hit is not None:
            return <dict>hit
        cdef long long bit = (<long long>1) << k
        cdef long long base, m1, m2
        cdef int a, b
        cdef dict out, t1, t2
        cdef object c, c1, c2, v, cc
        if not (mask & bit):
            out = {mask | bit: self.one}
        else:
            base = mask ^ bit
            out = {}
            for a, b, c in <tuple>self.tails[k]:
                t1 = self.times_var(a, base)
                for m1, c1 in t1.items():
                    t2 = self.times_var(b, m1)
                    cc = c * c1
                    for m2, c2 in t2.items():
                        v = out.get(m2)
                        if v is None:
                            out[m2] = cc * c2
                        else:
                            out[m2] = v + cc * c2
            out = {m: v for m, v in out.items() if v}
        self._memo[key] = out
        return out

    cpdef dict apply_var(self, int k, dict vec):
        cdef dict out = {}
        cdef long long mask, m2
        cdef object c, c2, v
        for mask, c in vec.items():
            for m2, c2 in self.times_var(k, mask).items():
                v = out.get(m2)
                if v is None:
                    out[m2] = c * c2
                else:
                    out[m2] = v + c * c2
        return {m: v for m, v in out.items() if v}

    cpdef dict mul(self, dict a, dict b):
        cdef dict out = {}
        cdef dict cur
        cdef long long jmask, j, m
        cdef int k
        cdef object cb, c, v
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
                if v is None:
                    out[m] = c * cb
                else:
                    out[m] = v + c * cb
        return {m: v for m, v in out.items() if v}


def expand_squares(exps, coeff, carries):
    cdef int n = len(exps)
    cdef list buckets = [dict() for _ in range(n)]
    cdef dict out = {}
    cdef dict bucket
    cdef list carry, base
    cdef int m, i, l1, l2
    cdef object c, c1, d1, d2, v
    cdef tuple e

    def push(tuple e, object c):
        cdef int mm, ii
        cdef long long mask
        cdef dict d
        for mm in range(n - 1, -1, -1):
            if e[mm] >= 2:
                d = buckets[mm]
                v = d.get(e)
                d[e] = c if v is None else v + c
                return
        mask = 0
        for ii in range(n):
            if e[ii]:
                mask |= (<long long>1) << ii
        v = out.get(mask)
        out[mask] = c if v is None else v + c

    push(tuple(exps), coeff)
    for m in range(n - 1, -1, -1):
        bucket = buckets[m]
        carry = list(carries[m])
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
