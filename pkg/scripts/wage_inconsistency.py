"""Sweep the wage bill and report the worker propensity the uniform-rate
equilibrium would require, alongside the capitalist propensity implied by
a fixed worker propensity.

Higher wages at a fixed profit share for workers push the required worker
propensity down, which is the inconsistency this sweep makes visible.
"""

import argparse

import numpy as np

from distdyn import core_model as cm


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s-c", type=float, default=0.5)
    parser.add_argument("--s-w", type=float, default=0.05)
    parser.add_argument("--P-w", type=float, default=5.0)
    parser.add_argument("--wages", type=float, nargs=3, default=(10.0, 1000.0, 12), metavar=("LO", "HI", "N"))
    args = parser.parse_args(argv)

    lo, hi, n = args.wages
    print(f"{'W':>10} {'required s_w':>14} {'implied s_c':>12} {'feasible':>9}")
    for W in np.geomspace(lo, hi, int(n)):
        s_w = cm.implied_worker_propensity(args.s_c, W, args.P_w)
        s_c = cm.implied_capitalist_propensity(args.s_w, W, args.P_w)
        print(f"{W:>10.2f} {s_w:>14.6g} {s_c.value:>12.6g} {str(s_c.feasible):>9}")


if __name__ == "__main__":
    main()
