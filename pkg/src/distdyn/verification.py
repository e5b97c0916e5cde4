"""Seeded identity and property checks run by ``distdyn verify``."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import core_model as cm
from .contract import ContractRatio, SavingsCapacity, capacity_ratio, restrict
from .dynamics import (
    GeometricPath,
    ProportionalSavingsSpec,
    ScenarioConfig,
    compare_growth,
    simulate,
    simulate_proportional,
)
from .scenario_io import emit_trajectory, read_trajectory

DEFAULT_SEED = 20240611
SCALES = (1e-6, 1e3, 1e9)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def rel_err(a: float, b: float) -> float:
    """Strict relative difference; zero when both are zero."""
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def reference_contract_scenario(carryover: bool = True) -> ScenarioConfig:
    """Constant-rate contract scenario used by the growth-reduction check.

    Initial stocks are chosen so that period 0 has worker/capitalist
    capacities 5 and 20, the first appendix example.
    """
    return ScenarioConfig(
        horizon=50,
        initial_K_w=0.0,
        initial_K_c=800.0,
        profit_rate_path=0.05,
        wage_path=100.0,
        propensities=cm.Propensities(s_w=0.05, s_c=0.5),
        mode="contract",
        contract_R=0.2,
        carryover=carryover,
    )


def _log_uniform(rng: np.random.Generator, lo: float, hi: float, n: int) -> np.ndarray:
    return 10.0 ** rng.uniform(math.log10(lo), math.log10(hi), n)


def check_appendix() -> list[CheckResult]:
    out = []
    cases = [
        ("appendix example 1", 5, 20, Fraction(1, 5), (4.0, 20.0, 1.0, 0.0)),
        ("appendix example 2", 4, 20, Fraction(1, 4), (4.0, 16.0, 0.0, 4.0)),
    ]
    for name, fw, fc, R, want in cases:
        rs = restrict(SavingsCapacity(fw, fc), ContractRatio(R))
        got = (rs.S_w, rs.S_c, rs.US_w, rs.US_c)
        out.append(CheckResult(name, got == want, f"(S_w, S_c, US_w, US_c) = {got}, expected {want}"))
    return out


def check_ratio_enforcement(rng: np.random.Generator, n: int, tol: float) -> CheckResult:
    fcs_w = _log_uniform(rng, 1e-3, 1e3, n)
    fcs_c = _log_uniform(rng, 1e-3, 1e3, n)
    R = _log_uniform(rng, 1e-2, 1e1, n)
    worst_ratio = worst_cons = 0.0
    two_sided = 0
    for fw, fc, r in zip(fcs_w, fcs_c, R):
        rs = restrict(SavingsCapacity(fw, fc), ContractRatio(r))
        if rs.S_c > 0:
            worst_ratio = max(worst_ratio, rel_err(rs.S_w / rs.S_c, r))
        worst_cons = max(worst_cons, rel_err(rs.S_w + rs.US_w, fw), rel_err(rs.S_c + rs.US_c, fc))
        two_sided += rs.US_w * rs.US_c != 0
    ok = worst_ratio <= tol and worst_cons <= tol and two_sided == 0
    return CheckResult(
        "ratio enforcement",
        ok,
        f"{n} samples, max ratio err {worst_ratio:.2e}, max conservation err {worst_cons:.2e}, "
        f"two-sided restrictions {two_sided}",
    )


def check_final_equation_equivalence(rng: np.random.Generator, n: int, tol: float) -> list[CheckResult]:
    W = rng.uniform(0, 1000, n)
    P_w = _log_uniform(rng, 1e-3, 1e3, n)
    s_w = rng.uniform(1e-3, 1.0, n)
    I = _log_uniform(rng, 1e-2, 1e3, n)
    K = _log_uniform(rng, 1.0, 1e5, n)
    worst = 0.0
    mismatched_bits = 0
    for w, pw, sw, i, k in zip(W, P_w, s_w, I, K):
        s_c = cm.implied_capitalist_propensity(sw, w, pw).value
        worst = max(worst, rel_err(cm.pasinetti_profit_rate(s_c, i, k), cm.pasinetti_profit_rate_alt(sw, pw, w, i, k)))
        mismatched_bits += s_c != cm.contract_capitalist_propensity(sw, w, pw).value
    return [
        CheckResult("final-equation equivalence", worst <= tol, f"{n} samples, max rel err {worst:.2e}"),
        CheckResult(
            "propensity relation, two derivations",
            mismatched_bits == 0,
            f"{n} samples, {mismatched_bits} not bit-identical",
        ),
    ]


def check_proportional_equilibrium(rng: np.random.Generator, tol: float, pairs: int = 100, T: int = 200) -> CheckResult:
    worst = 0.0
    for _ in range(pairs):
        C, D = rng.uniform(0.0, 10.0, 2)
        for f in (1.0, GeometricPath(1.0, 1.05), tuple(rng.uniform(0.01, 10.0, T))):
            traj = simulate_proportional(ProportionalSavingsSpec(C, D, f), T)
            worst = max(worst, float(np.max(np.abs(traj.column("ratio_S") - traj.column("ratio_K")))))
    return CheckResult(
        "proportional-savings equilibrium",
        worst < tol,
        f"{pairs} (C, D) pairs x 3 multiplier paths, T={T}, max |S_w/S - K_w/K| {worst:.2e}",
    )


def check_growth_reduction(tol: float) -> CheckResult:
    cmp = compare_growth(reference_contract_scenario())
    unrestricted_periods = 0
    missing_us = []
    for rec in cmp.contract:
        R1 = rec.FCS_w / rec.FCS_c
        if abs(R1 - 0.2) <= tol * max(R1, 0.2):
            unrestricted_periods += 1
        elif not rec.US > 0:
            missing_us.append(rec.t)
    ok = cmp.K_contract < cmp.K_unconstrained and not missing_us
    return CheckResult(
        "capital-growth reduction",
        ok,
        f"K_contract(50)={cmp.K_contract:.10g} vs K_unconstrained(50)={cmp.K_unconstrained:.10g}, "
        f"cumulative US {cmp.cumulative_US:.10g}, unbinding periods {unrestricted_periods}, "
        f"periods with R_1 != R but US = 0: {missing_us or 'none'}",
    )


def check_worker_limit() -> CheckResult:
    s_c, W = 0.5, 100.0
    seq = [cm.implied_worker_propensity(s_c, W, 10.0 ** -k) for k in range(1, 7)]
    decreasing = all(a > b for a, b in zip(seq, seq[1:]))
    ok = decreasing and seq[-1] < 1e-7 * s_c
    return CheckResult("worker-propensity limit", ok, f"s_w at P_w=1e-1..1e-6: {', '.join(f'{v:.3g}' for v in seq)}")


def check_kaldor_reduction(rng: np.random.Generator, n: int) -> CheckResult:
    s_c = rng.uniform(1e-3, 1.0, n)
    W = rng.uniform(0, 1000, n)
    I = rng.uniform(0, 1000, n)
    K = _log_uniform(rng, 1e-2, 1e5, n)
    bad = sum(
        cm.kaldor_profit_rate(sc, 0.0, w, i, k) != cm.kaldor_profit_rate_classic(sc, i, k)
        for sc, w, i, k in zip(s_c, W, I, K)
    )
    return CheckResult("Kaldor reduction", bad == 0, f"{n} samples, {bad} inexact")


def _scale_cases(rng: np.random.Generator) -> list[tuple[str, Callable[[float], tuple], tuple[bool, ...]]]:
    W, P_w, P_c, K_w, K_c, I = rng.uniform(1.0, 100.0, 6)
    s_w, s_c = rng.uniform(0.01, 0.5), rng.uniform(0.5, 1.0)
    fw, fc = rng.uniform(0.0, 100.0), rng.uniform(1.0, 100.0)
    R = rng.uniform(0.05, 2.0)
    props = cm.Propensities(s_w, s_c)

    def state(lam):
        return cm.EconomyState(lam * W, lam * P_w, lam * P_c, lam * K_w, lam * K_c, lam * I)

    def savings(lam):
        sv = cm.savings(state(lam), props)
        return sv.S_w, sv.S_c, sv.S

    def residuals(lam):
        st = state(lam)
        return (cm.pasinetti_condition_residual(st, cm.savings(st, props)), *cm.uniform_profit_rate_residual(st))

    def restricted(lam):
        # exact scaling: the unsaved amounts are differences and would amplify input rounding
        lam = Fraction(lam)
        rs = restrict(SavingsCapacity(lam * Fraction(fw), lam * Fraction(fc)), ContractRatio(R))
        return rs.S_w, rs.S_c, rs.US_w, rs.US_c

    # (name, output function of lambda, per-output flag: True = currency, scales with lambda)
    return [
        ("savings", savings, (True, True, True)),
        ("condition residuals", residuals, (False, False, False)),
        ("pasinetti_profit_rate", lambda lam: (cm.pasinetti_profit_rate(s_c, lam * I, lam * K_w),), (False,)),
        ("pasinetti_profit_rate_alt", lambda lam: (cm.pasinetti_profit_rate_alt(s_w, lam * P_w, lam * W, lam * I, lam * K_w),), (False,)),
        ("kaldor_profit_rate", lambda lam: (cm.kaldor_profit_rate(s_c, s_w, lam * W, lam * (I + W), lam * K_w),), (False,)),
        ("kaldor_profit_rate_classic", lambda lam: (cm.kaldor_profit_rate_classic(s_c, lam * I, lam * K_w),), (False,)),
        ("implied_capitalist_propensity", lambda lam: (cm.implied_capitalist_propensity(s_w, lam * W, lam * P_w).value,), (False,)),
        ("implied_worker_propensity", lambda lam: (cm.implied_worker_propensity(s_c, lam * W, lam * P_w),), (False,)),
        ("capacity_ratio", lambda lam: (capacity_ratio(SavingsCapacity(lam * fw, lam * fc)),), (False,)),
        ("restrict", restricted, (True, True, True, True)),
    ]


def check_scale_invariance(rng: np.random.Generator, tol: float, draws: int = 200) -> CheckResult:
    failures = []
    for _ in range(draws):
        for name, fn, currency in _scale_cases(rng):
            base = fn(1.0)
            for lam in SCALES:
                scaled = fn(lam)
                for b, s, cur in zip(base, scaled, currency):
                    ok = rel_err(s, lam * b) <= tol if cur else cm.isclose(s, b, tol)
                    if not ok:
                        failures.append(f"{name} at lambda={lam:g}")
    return CheckResult(
        "scale invariance",
        not failures,
        f"{draws} draws x lambda in {SCALES}; failures: {sorted(set(failures)) or 'none'}",
    )


def check_stock_flow(T: int = 10_000) -> CheckResult:
    cfg = ScenarioConfig(
        horizon=T, initial_K_w=10.0, initial_K_c=90.0, profit_rate_path=0.0005, wage_path=1.0,
        propensities=cm.Propensities(0.1, 0.6), mode="contract", contract_R=0.3, carryover=True,
    )
    traj = simulate(cfg)
    worst = 0.0
    K_w, K_c, S_w, S_c = (traj.column(c) for c in ("K_w", "K_c", "S_w", "S_c"))
    # exact running sums, independent of the simulator's float accumulation
    acc_w, acc_c = Fraction(10), Fraction(90)
    for t in range(T):
        worst = max(worst, rel_err(K_w[t], float(acc_w)), rel_err(K_c[t], float(acc_c)))
        acc_w += Fraction(S_w[t])
        acc_c += Fraction(S_c[t])
    return CheckResult("stock-flow consistency", worst <= 1e-9, f"T={T}, max rel err {worst:.2e}")


def check_csv_roundtrip() -> CheckResult:
    traj = simulate(reference_contract_scenario())
    buf = io.StringIO()
    emit_trajectory(traj, buf)
    back = read_trajectory(buf.getvalue())
    same = len(back) == len(traj) and all(a == b for a, b in zip(back, traj))
    return CheckResult("CSV round trip", same, f"{len(traj)} records")


def run_all(samples: int = 10_000, seed: int = DEFAULT_SEED, tol: float = cm.DEFAULT_TOL) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = check_appendix()
    results.append(check_ratio_enforcement(rng, samples, tol))
    results.extend(check_final_equation_equivalence(rng, samples, tol))
    results.append(check_proportional_equilibrium(rng, tol))
    results.append(check_growth_reduction(tol))
    results.append(check_worker_limit())
    results.append(check_kaldor_reduction(rng, samples))
    results.append(check_scale_invariance(rng, tol))
    results.append(check_stock_flow())
    results.append(check_csv_roundtrip())
    return results
