"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import statistics
import time

from palinwidth import kernels
from palinwidth.genset import catalog_group, sigma_class_genset
from palinwidth.group import closure
from palinwidth.palindromes import palindrome_set, palindromic_width


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def cases():
    a8, _ = catalog_group("A8")
    a9, _ = catalog_group("A9")
    s6, _ = sigma_class_genset(6)
    s7, _ = sigma_class_genset(7)
    yield "closure A8 (20160)", lambda b: closure(list(a8.perms), backend=b)
    yield "closure A9 (181440)", lambda b: closure(list(a9.perms), backend=b)
    for label, gens in (("sigma A6", s6), ("sigma A7", s7)):
        tables = {b: closure(list(gens.perms), backend=b) for b in ("python", "cython")}
        yield f"wrap_closure {label}", lambda b, g=gens, t=tables: palindrome_set(g, t[b])
        yield f"product_layers {label}", lambda b, g=gens, t=tables: palindromic_width(g, t[b])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.COMPILED:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    print(f"{'case':32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases():
        py, _ = best_of(lambda: fn("python"), args.repeat)
        cy, _ = best_of(lambda: fn("cython"), args.repeat)
        print(f"{name:32} {py:10.4f} {cy:10.4f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
