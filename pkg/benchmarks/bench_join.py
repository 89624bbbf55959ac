#!/usr/bin/env python3
"""Benchmark the compiled join kernel against the pure numpy fallback.

The workload is the package's hot loop: enumerate every word of the
dependency window, compute its itinerary and Markov measure, and group
measure mass by itinerary class.  Word counts double with each row; use
--max-exp to push further than the default 2^20.

Example:
    python benchmarks/bench_join.py --max-exp 22
"""

import argparse
import math
import sys
import time

import numpy as np

from lcaentropy import LocalRule, available_backends, make_markov
from lcaentropy import _kernels


def time_backend(impl, rule, mu, base_lo, base_hi, steps, repeat):
    best = math.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = _kernels.join_stats(
            rule.m, rule.l, rule.r, rule.coeffs, base_lo, base_hi, steps,
            mu.pi, mu.P.entries, cap=1 << 62, impl=impl,
        )
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-exp", type=int, default=20,
                        help="largest word count 2^N to benchmark (default 20)")
    parser.add_argument("--min-exp", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=2,
                        help="timing repetitions, best-of (default 2)")
    args = parser.parse_args(argv)

    rule = LocalRule(2, 1, 1, (1, 0, 1))
    mu = make_markov([[0.9, 0.1], [0.8, 0.2]], (8 / 9, 1 / 9))
    has_cy = "cython" in available_backends()
    if not has_cy:
        print("compiled kernel not built: timing the pure kernel only", file=sys.stderr)

    print(f"{'words':>12} {'depth':>6} {'pure [s]':>12} {'cython [s]':>12} {'speedup':>9}  agree")
    for exp in range(args.min_exp, args.max_exp + 1, 2):
        # window width exp: base window [-1,0] widened to exp cells
        steps = (exp - 2) // 2 + 1
        t_py, res_py = time_backend("pure", rule, mu, -1, 0, steps, args.repeat)
        if has_cy:
            t_cy, res_cy = time_backend("cython", rule, mu, -1, 0, steps, args.repeat)
            agree = (res_py[1] == res_cy[1]
                     and math.isclose(res_py[0], res_cy[0], rel_tol=1e-11, abs_tol=1e-12))
            print(f"{2**exp:>12} {steps:>6} {t_py:>12.4f} {t_cy:>12.4f} "
                  f"{t_py / t_cy:>8.1f}x  {'yes' if agree else 'NO'}")
        else:
            print(f"{2**exp:>12} {steps:>6} {t_py:>12.4f} {'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
