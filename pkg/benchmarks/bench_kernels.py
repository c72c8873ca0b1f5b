"""Compare the numpy and numba kernel backends on the hot paths.

The workloads are the ones the package actually runs: the Frobenius power
y^p mod H_p that splits the Deuring polynomial, the brute F_{p^2} root grid,
and the pairwise norm matrix behind the pairing table.  Numba is compiled
once before timing so the JIT cost never pollutes a measurement; pass
--include-compile to see that cost too.

Usage: python3 benchmarks/bench_kernels.py [--prime P] [--repeat N]
"""

import argparse
import time

import numpy as np

from padic_periods import backend
from padic_periods.kernels import implementation
from padic_periods.supersingular import deuring_polynomial


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(ops, p):
    h = np.array(deuring_polynomial(p), dtype=np.int64)
    y = np.array([0, 1], dtype=np.int64)
    m = (p - 1) // 2
    rng = np.random.default_rng(p)
    la = rng.integers(0, p, size=m).astype(np.int64)
    lb = rng.integers(0, p, size=m).astype(np.int64)
    small = np.array(deuring_polynomial(min(p, 97)), dtype=np.int64)
    return {
        "powmod y^p mod H_p": lambda: ops.powmod(y, p, h),
        "fp2 root grid": lambda: ops.fp2_root_mask(small, 2),
        "norm pair matrix": lambda: ops.norm_pair_matrix(la, lb, 2),
        "eval on F_p": lambda: ops.eval_fp(h),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--prime", type=int, default=499)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--include-compile", action="store_true",
                        help="also report the one-off numba compilation time")
    args = parser.parse_args()
    p = args.prime

    numpy_ops = implementation("numpy")(p)
    rows = {name: [best_of(args.repeat, fn)]
            for name, fn in workloads(numpy_ops, p).items()}

    if backend.numba is None:
        print("numba not importable; numpy timings only\n")
        numba_ops = None
    else:
        t0 = time.perf_counter()
        numba_ops = implementation("numba")(p)
        for fn in workloads(numba_ops, p).values():
            fn()
        compile_time = time.perf_counter() - t0
        if args.include_compile:
            print("numba compile + first call: %.2f s\n" % compile_time)
        for name, fn in workloads(numba_ops, p).items():
            rows[name].append(best_of(args.repeat, fn))

    print("p = %d, best of %d" % (p, args.repeat))
    header = "%-22s %12s %12s %9s" % ("kernel", "numpy", "numba", "ratio")
    print(header)
    print("-" * len(header))
    for name, times in rows.items():
        if len(times) == 2 and times[1] > 0:
            ratio = "%8.2fx" % (times[0] / times[1])
            print("%-22s %10.3f ms %10.3f ms %s" % (name, times[0] * 1e3, times[1] * 1e3, ratio))
        else:
            print("%-22s %10.3f ms %12s %9s" % (name, times[0] * 1e3, "-", "-"))


if __name__ == "__main__":
    main()
