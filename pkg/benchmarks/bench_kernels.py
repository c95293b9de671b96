"""Compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints the median time per call for each kernel and the speedup.  Both
implementations are checked for agreement before timing.
"""
import argparse
import statistics
import timeit

import numpy as np

from sscosamp import _kernels_py
from sscosamp.dictionary import build

try:
    from sscosamp import _kernels as _compiled
except ImportError:
    _compiled = None


def cases():
    big = np.ascontiguousarray(build(256, 1024).gram_profile)
    small = np.ascontiguousarray(build(8, 24).gram_profile)
    rng = np.random.default_rng(0)
    z = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    a = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    return [
        ("eta_dp n=256 d=1024 k=8 h=16", lambda K: K.eta_dp(big, 16, 8)),
        ("eta_prime_dp n=256 d=1024 k=8 h=16", lambda K: K.eta_prime_dp(big, 16, 8)),
        ("eta_dp n=256 d=1024 k=16 h=4", lambda K: K.eta_dp(big, 4, 16)),
        ("enumerate_separated n=8 d=24 k=4 h=2", lambda K: K.enumerate_separated(small, 2, 4)),
        ("dr_update d=1024", lambda K: K.dr_update(z.copy(), a, 0.05, 1.8)),
    ]


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(u, v) for u, v in zip(x, y))
    return np.allclose(x, y, rtol=1e-12, atol=1e-14)


def median_time(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    runs = timer.repeat(repeat=repeat, number=number)
    return statistics.median(runs) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':40s} {'numpy':>12s} {'compiled':>12s} {'speedup':>8s}")
    for name, call in cases():
        t_py = median_time(lambda: call(_kernels_py), args.repeat)
        if _compiled is None:
            print(f"{name:40s} {t_py * 1e6:10.1f}us {'-':>12s} {'-':>8s}")
            continue
        if not _same(call(_kernels_py), call(_compiled)):
            raise SystemExit(f"{name}: implementations disagree")
        t_c = median_time(lambda: call(_compiled), args.repeat)
        print(f"{name:40s} {t_py * 1e6:10.1f}us {t_c * 1e6:10.1f}us {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
