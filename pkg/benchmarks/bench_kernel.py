"""Compare the pure and compiled finite-wreath kernels.

Times conjugacy_class_table (the dominant kernel workload) and a batch
of single conjugations on a few group shapes, checking that both
backends return identical results. Run from the repository root:

    python3 benchmarks/bench_kernel.py
"""

import random
import time

from wreathconj import _purekernel

try:
    from wreathconj import _speedups
except ImportError:
    _speedups = None

SHAPES = [
    ("Z/2 wr Z/4", (2,), (4,)),
    ("Z/3 wr Z/3", (3,), (3,)),
    ("Z/2 wr Z/2+Z/2+Z/2", (2,), (2, 2, 2)),
    ("Z/2 wr Z/8", (2,), (8,)),
]


def time_table(kern):
    t = time.perf_counter()
    table = kern.conjugacy_class_table()
    return table, time.perf_counter() - t


def time_conjugations(kern, count=200000):
    rng = random.Random(11)
    pairs = [
        (rng.randrange(kern.order), rng.randrange(kern.order))
        for _ in range(count)
    ]
    t = time.perf_counter()
    acc = 0
    for g, z in pairs:
        acc ^= kern.conjugate(g, z)
    return acc, time.perf_counter() - t


def main():
    if _speedups is None:
        print("compiled kernel not built; showing pure timings only")
    for name, a, b in SHAPES:
        pure = _purekernel.FiniteWreathKernel(a, b)
        print(f"{name} (order {pure.order})")
        table_p, t_p = time_table(pure)
        acc_p, c_p = time_conjugations(pure)
        print(f"  pure:     class table {t_p:8.3f}s   200k conjugations {c_p:6.3f}s")
        if _speedups is not None:
            comp = _speedups.FiniteWreathKernel(a, b)
            table_c, t_c = time_table(comp)
            acc_c, c_c = time_conjugations(comp)
            assert table_p == table_c, f"{name}: backends disagree on the class table"
            assert acc_p == acc_c, f"{name}: backends disagree on conjugation"
            print(f"  compiled: class table {t_c:8.3f}s   200k conjugations {c_c:6.3f}s")
            print(f"  speedup:  {t_p / t_c:8.1f}x                        {c_p / c_c:6.1f}x")


if __name__ == "__main__":
    main()
