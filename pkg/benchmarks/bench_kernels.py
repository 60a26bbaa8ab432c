"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Runs the same workloads (normal-form multiplication tables and tensor-oracle
square reduction) through both implementations and prints median timings.
"""

import argparse
import statistics
import time

from bottsamelson import _pykernels, suite
from bottsamelson.numeric import RATIONAL, float_backend
from bottsamelson.ring import build_presentation
from bottsamelson.tensor import TensorOracle

try:
    from bottsamelson import _ckernels
except ImportError:
    _ckernels = None


def tails(p):
    return [[(i - 1, j - 1, c) for (i, j), c in sorted(p.reduced[k - 1].items())]
            for k in range(1, p.n + 1)]


def full_table(mod, p):
    t = mod.MulTable(p.n, tails(p), p.backend.one)
    one = p.backend.one
    size = 1 << p.n
    for i in range(size):
        for j in range(i, size):
            t.mul({i: one}, {j: one})


def oracle_table(mod, carries, n, one):
    size = 1 << n
    for i in range(size):
        for j in range(i, size):
            mod.expand_squares([(i >> t & 1) + (j >> t & 1) for t in range(n)], one, carries)


def timed(fn, repeat):
    out = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--length", type=int, default=8)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is available")
    mods = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    jobs = [(w, RATIONAL) for w in suite.random_words(
        args.seed, 3, args.length, orders=suite.RATIONAL_ORDERS, min_len=args.length)]
    jobs += [(w, float_backend()) for w in suite.random_words(
        args.seed + 1, 3, args.length, min_len=args.length)]
    print(f"{'workload':<44}{'backend':<10}" + "".join(f"{name:>10}" for name, _ in mods) + "   speedup")
    for w, be in jobs:
        p = build_presentation(w, be)
        carries = TensorOracle(w, be).carries
        label = " ".join(w.names())
        for kind, fn in (("mul", lambda m: full_table(m, p)),
                         ("oracle", lambda m: oracle_table(m, carries, w.n, be.one))):
            times = [timed(lambda m=m: fn(m), args.repeat) for _, m in mods]
            speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
            print(f"{kind + ' ' + label:<44}{be.name:<10}"
                  + "".join(f"{t * 1e3:8.1f}ms" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
