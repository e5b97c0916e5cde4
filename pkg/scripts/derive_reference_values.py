"""Recompute the frozen reference-scenario values with the exact oracle.

Uses the independent rational-arithmetic simulator in tests/oracles.py,
so the regression constants in the acceptance suite can be re-derived
without touching the library.
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from oracles import simulate_exact  # noqa: E402


def main():
    args = dict(T=50, K_w=0, K_c=800, r=Fraction(1, 20), W=100, s_w=Fraction(1, 20), s_c=Fraction(1, 2))
    for carry in (True, False):
        rows, (kw, kc) = simulate_exact(R=Fraction(1, 5), carryover=carry, **args)
        _, (kw_u, kc_u) = simulate_exact(**args)
        us = sum(r["US_w"] + r["US_c"] for r in rows)
        print(f"carryover={carry}")
        print(f"  K_contract(50)={float(kw + kc)!r} (K_w={float(kw)!r}, K_c={float(kc)!r})")
        print(f"  K_unconstrained(50)={float(kw_u + kc_u)!r}")
        print(f"  cumulative_US={float(us)!r}")


if __name__ == "__main__":
    main()
