"""Command-line entry point.

Exit codes: 0 success, 1 a verification or appendix mismatch, 2 usage,
file, or scenario errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from .contract import ContractRatio, SavingsCapacity, capacity_ratio, conditional_m1, conditional_m2, restrict
from .core_model import DEFAULT_TOL
from .dynamics import ScenarioConfig, compare_growth, simulate
from .errors import ConfigError
from .scenario_io import ProportionalScenario, emit_trajectory, parse_scenario
from .verification import DEFAULT_SEED, run_all

log = logging.getLogger("distdyn")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# (label, FCS_w, FCS_c, R, expected (S_w, S_c, US_w, US_c))
APPENDIX_EXAMPLES = (
    ("Example-1", 5, 20, Fraction(1, 5), (4, 20, 1, 0)),
    ("Example-2", 4, 20, Fraction(1, 4), (4, 16, 0, 4)),
)


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read scenario {path!r}: {exc.strerror}") from None
    try:
        return parse_scenario(data)
    except ConfigError as exc:
        raise UsageError(f"invalid scenario {path!r}: {exc}") from None


def _write_csv(traj, path: str) -> None:
    if path == "-":
        emit_trajectory(traj, sys.stdout)
        return
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            emit_trajectory(traj, fh)
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc.strerror}") from None


def cmd_run(args) -> int:
    target = _load(args.scenario)
    traj = target.run() if isinstance(target, ProportionalScenario) else simulate(target)
    _write_csv(traj, args.out)
    log.info("wrote %d periods to %s", len(traj), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    target = _load(args.scenario)
    if not isinstance(target, ScenarioConfig) or target.mode != "contract":
        raise UsageError("compare needs a 'scenario' document with mode 'contract'")
    cmp = compare_growth(target)
    _write_csv(cmp.unconstrained, f"{args.out_prefix}_unconstrained.csv")
    _write_csv(cmp.contract, f"{args.out_prefix}_contract.csv")
    T = target.horizon
    print(
        f"K_unconstrained({T})={cmp.K_unconstrained:.17g} "
        f"K_contract({T})={cmp.K_contract:.17g} "
        f"cumulative_US={cmp.cumulative_US:.17g}"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all(samples=args.samples, seed=args.seed, tol=args.tol)
    for res in results:
        print(res.line())
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed (seed={args.seed})")
    return EXIT_FAIL if failed else EXIT_OK


def _fmt_exact(x: float) -> str:
    return f"{x:g}"


def cmd_appendix(args) -> int:
    ok = True
    for label, fcs_w, fcs_c, R, expected in APPENDIX_EXAMPLES:
        cap = SavingsCapacity(fcs_w, fcs_c)
        R1 = Fraction(fcs_w, fcs_c)
        rs = restrict(cap, ContractRatio(R))
        got = (rs.S_w, rs.S_c, rs.US_w, rs.US_c)
        match = got == tuple(float(e) for e in expected)
        ok &= match
        print(
            f"{label}: R={R} FCS_w={fcs_w} FCS_c={fcs_c} R_1={R1} "
            f"M1={conditional_m1(R1, R)} M2={conditional_m2(R1, R)}"
        )
        print("  computed: " + " ".join(f"{k}={_fmt_exact(v)}" for k, v in zip(("S_w", "S_c", "US_w", "US_c"), got)))
        print("  expected: " + " ".join(f"{k}={v}" for k, v in zip(("S_w", "S_c", "US_w", "US_c"), expected)))
        print(f"  {'OK' if match else 'MISMATCH'} (capacity ratio {capacity_ratio(cap):g})")
    return EXIT_OK if ok else EXIT_FAIL


def _default_seed() -> int:
    raw = os.environ.get("DISTDYN_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DISTDYN_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distdyn",
        description="Two-class distribution models, contract-restricted savings, and capital dynamics.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate a scenario file and write the trajectory CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True, help="CSV path, or - for stdout")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="run a contract scenario with and without its contract")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out-prefix", required=True, help="writes <prefix>_unconstrained.csv and <prefix>_contract.csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the seeded identity and property checks")
    p.add_argument("--samples", type=int, default=10_000, help="random draws per sampled check")
    p.add_argument("--seed", type=int, default=None, help="defaults to $DISTDYN_SEED, then a fixed seed")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("appendix", help="reproduce the two worked restriction examples")
    p.set_defaults(func=cmd_appendix)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except UsageError as exc:
        print(f"distdyn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
