"""Gap between the Wald and exact p-values over effect in [0, 3·k/(n-1)].

Usage: python scripts/wald_gap_study.py [--k 3] [--n 50 200 500 1000 5000]
"""

import argparse

import numpy as np

from pillaireg.inference import exact_p_value, null_moments, wald_test


def gap(n: int, k: int, points: int = 1201) -> tuple[float, float]:
    grid = np.linspace(0.0, 3 * k / (n - 1), points)
    diffs = np.array([wald_test(e, n, k).p - exact_p_value(e, n, k) for e in grid])
    i = int(np.argmax(np.abs(diffs)))
    return float(abs(diffs[i])), float(grid[i])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--n", type=int, nargs="+", default=[50, 200, 500, 1000, 5000])
    args = ap.parse_args()
    print(f"{'n':>6} {'mean':>10} {'sd':>10} {'max gap':>9} {'at effect':>10}")
    for n in args.n:
        mean, sd = null_moments(n, args.k)
        g, where = gap(n, args.k)
        print(f"{n:6d} {mean:10.6f} {sd:10.6f} {g:9.4f} {where:10.6f}")


if __name__ == "__main__":
    main()
