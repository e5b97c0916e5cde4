"""Exit criteria for the build, one test per criterion.

Each test records a PASS/FAIL line (shown in the pytest summary) before
asserting. Tolerances are fixed here and not tuned.
"""

import time
import warnings
from fractions import Fraction

import numpy as np

from acceptance_log import record
from distdyn import core_model as cm
from distdyn.contract import ContractRatio, SavingsCapacity, capacity_ratio, restrict
from distdyn.dynamics import GeometricPath, ProportionalSavingsSpec, ScenarioConfig, compare_growth, simulate_proportional
from oracles import restrict_case_split, simulate_exact

SEED = 20240611
TOL = 1e-12
SCALES = (1e-6, 1e3, 1e9)

# Frozen from oracles.simulate_exact (exact rationals, case-split restriction):
# r = 1/20, W = 100, s_w = 1/20, s_c = 1/2, R = 1/5, carry-over on, T = 50,
# K_w(0) = 0, K_c(0) = 800 (period-0 capacities 5 and 20).
REF_K_CONTRACT_50 = 2394.4108495436553
REF_K_UNCONSTRAINED_50 = 3015.6303896533714
REF_CUMULATIVE_US = 5796.665365344032


def rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def test_c1_appendix_example_1():
    rs = restrict(SavingsCapacity(5, 20), ContractRatio(Fraction(1, 5)))
    got = (rs.S_w, rs.S_c, rs.US_w, rs.US_c)
    ok = got == (4.0, 20.0, 1.0, 0.0)
    record("C1", ok, f"appendix example 1 (S_w, S_c, US_w, US_c) = {got}, exact match required")
    assert ok


def test_c2_appendix_example_2():
    rs = restrict(SavingsCapacity(4, 20), ContractRatio(Fraction(1, 4)))
    got = (rs.S_w, rs.S_c, rs.US_w, rs.US_c)
    ok = got == (4.0, 16.0, 0.0, 4.0)
    record("C2", ok, f"appendix example 2 (S_w, S_c, US_w, US_c) = {got}, exact match required")
    assert ok


def test_c3_ratio_enforcement():
    rng = np.random.default_rng(SEED)
    n = 10_000
    fw = 10.0 ** rng.uniform(-3, 3, n)
    fc = 10.0 ** rng.uniform(-3, 3, n)
    R = 10.0 ** rng.uniform(-2, 1, n)
    start = time.perf_counter()
    results = [restrict(SavingsCapacity(a, b), ContractRatio(r)) for a, b, r in zip(fw, fc, R)]
    elapsed = time.perf_counter() - start
    ratio_err = max(rel(rs.S_w / rs.S_c, r) for rs, r in zip(results, R))
    cons_err = max(max(rel(rs.S_w + rs.US_w, a), rel(rs.S_c + rs.US_c, b)) for rs, a, b in zip(results, fw, fc))
    two_sided = sum(rs.US_w * rs.US_c != 0 for rs in results)
    # independent route: case-split restriction in exact arithmetic
    oracle_err = max(
        rel(float(want_w), rs.S_w) for rs, a, b, r in zip(results[:2000], fw, fc, R)
        for want_w in [restrict_case_split(a, b, r)[0]]
    )
    ok = ratio_err <= TOL and cons_err <= TOL and two_sided == 0 and oracle_err <= TOL and elapsed < 1.0
    record(
        "C3", ok,
        f"{n} samples: max |S_w/S_c - R| rel {ratio_err:.1e}, conservation {cons_err:.1e}, "
        f"two-sided {two_sided}, vs case-split oracle {oracle_err:.1e}, {elapsed:.2f}s (tol {TOL}, < 1 s)",
    )
    assert ok


def test_c4_final_equation_equivalence():
    rng = np.random.default_rng(SEED + 1)
    n = 10_000
    W = rng.uniform(0, 1000, n)
    P_w = 10.0 ** rng.uniform(-3, 3, n)
    s_w = rng.uniform(1e-3, 1.0, n)
    I = 10.0 ** rng.uniform(-2, 3, n)
    K = 10.0 ** rng.uniform(0, 5, n)
    start = time.perf_counter()
    worst = 0.0
    not_bitwise = 0
    for w, pw, sw, i, k in zip(W, P_w, s_w, I, K):
        s_c = cm.implied_capitalist_propensity(sw, w, pw).value
        worst = max(worst, rel(cm.pasinetti_profit_rate(s_c, i, k), cm.pasinetti_profit_rate_alt(sw, pw, w, i, k)))
        not_bitwise += s_c != cm.contract_capitalist_propensity(sw, w, pw).value
    elapsed = time.perf_counter() - start
    ok = worst <= TOL and not_bitwise == 0 and elapsed < 1.0
    record(
        "C4", ok,
        f"{n} samples: max rel gap between the two final equations {worst:.1e}; "
        f"{not_bitwise} propensity pairs not bit-identical; {elapsed:.2f}s",
    )
    assert ok


def test_c5_proportional_equilibrium():
    rng = np.random.default_rng(SEED + 2)
    T = 200
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        C, D = rng.uniform(0.01, 10.0, 2)
        for f in (1.0, GeometricPath(1.0, 1.05), tuple(rng.uniform(0.01, 10.0, T))):
            traj = simulate_proportional(ProportionalSavingsSpec(C, D, f), T)
            worst = max(worst, float(np.max(np.abs(traj.column("ratio_S") - traj.column("ratio_K")))))
    elapsed = time.perf_counter() - start
    ok = worst < TOL and elapsed < 1.0
    record("C5", ok, f"100 (C, D) x 3 paths, T={T}: max |S_w/S - K_w/K| {worst:.1e} (< {TOL}), {elapsed:.2f}s")
    assert ok


def test_c6_capital_growth_reduction():
    cfg = ScenarioConfig(
        horizon=50, initial_K_w=0.0, initial_K_c=800.0, profit_rate_path=0.05, wage_path=100.0,
        propensities=cm.Propensities(0.05, 0.5), mode="contract", contract_R=0.2, carryover=True,
    )
    start = time.perf_counter()
    cmp = compare_growth(cfg)
    elapsed = time.perf_counter() - start

    # oracle recomputation, exact, must still reproduce the frozen numbers
    args = dict(T=50, K_w=0, K_c=800, r=Fraction(1, 20), W=100, s_w=Fraction(1, 20), s_c=Fraction(1, 2))
    rows, (kw_c, kc_c) = simulate_exact(R=Fraction(1, 5), carryover=True, **args)
    _, (kw_u, kc_u) = simulate_exact(**args)
    oracle = (float(kw_c + kc_c), float(kw_u + kc_u), float(sum(r["US_w"] + r["US_c"] for r in rows)))
    frozen = (REF_K_CONTRACT_50, REF_K_UNCONSTRAINED_50, REF_CUMULATIVE_US)
    oracle_ok = all(rel(a, b) <= 1e-15 for a, b in zip(oracle, frozen))

    got = (cmp.K_contract, cmp.K_unconstrained, cmp.cumulative_US)
    regression_ok = all(rel(a, b) <= TOL for a, b in zip(got, frozen))

    missing = []
    for rec in cmp.contract:
        R1 = capacity_ratio(SavingsCapacity(rec.FCS_w, rec.FCS_c))
        if R1 != 0.2 and not rec.US > 0:
            missing.append(rec.t)
    ok = cmp.K_contract < cmp.K_unconstrained and not missing and regression_ok and oracle_ok and elapsed < 1.0
    record(
        "C6", ok,
        f"K_contract(50)={cmp.K_contract:.12g} < K_unconstrained(50)={cmp.K_unconstrained:.12g}; "
        f"cumulative US {cmp.cumulative_US:.12g}; periods with R_1 != R and US = 0: {missing or 'none'}; "
        f"frozen regression within {TOL}: {regression_ok}; oracle reproduces frozen: {oracle_ok}; {elapsed:.2f}s",
    )
    assert ok


def test_c7_worker_propensity_limit():
    s_c, W = 0.5, 100.0
    seq = [cm.implied_worker_propensity(s_c, W, 10.0 ** -k) for k in range(1, 7)]
    decreasing = all(a > b for a, b in zip(seq, seq[1:]))
    ok = decreasing and seq[-1] < 1e-7 * s_c
    record("C7", ok, f"s_w at P_w = 1e-1..1e-6: {[f'{v:.3g}' for v in seq]}; last < {1e-7 * s_c:g}")
    assert ok


def test_c8_kaldor_reduction():
    rng = np.random.default_rng(SEED + 3)
    n = 10_000
    s_c = rng.uniform(1e-3, 1.0, n)
    W = rng.uniform(0, 1000, n)
    I = rng.uniform(0, 1000, n)
    K = 10.0 ** rng.uniform(-2, 5, n)
    start = time.perf_counter()
    bad = sum(
        cm.kaldor_profit_rate(a, 0.0, w, i, k) != cm.kaldor_profit_rate_classic(a, i, k)
        for a, w, i, k in zip(s_c, W, I, K)
    )
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 1.0
    record("C8", ok, f"{n} samples, {bad} not exactly equal, {elapsed:.2f}s")
    assert ok


def test_c9_scale_invariance():
    """Currency outputs must scale by lambda, rate and ratio outputs must not move.

    Rates and ratios are compared with the library's comparison rule
    (relative, floored at 1); currency outputs with strict relative error.
    Contract inputs are scaled exactly since the unsaved amounts are
    differences that would otherwise amplify the rounding of lambda * x.
    """
    rng = np.random.default_rng(SEED + 4)
    failures = []
    checked = 0

    def rate(name, base, scaled):
        nonlocal checked
        checked += 1
        if not cm.isclose(base, scaled, TOL):
            failures.append(name)

    def money(name, base, scaled, lam):
        nonlocal checked
        checked += 1
        if rel(scaled, lam * base) > TOL:
            failures.append(name)

    for _ in range(300):
        W, P_w, P_c, K_w, K_c, I = rng.uniform(1.0, 1000.0, 6)
        s_w, s_c = rng.uniform(0.01, 1.0, 2)
        fw, fc = rng.uniform(0.0, 1000.0), rng.uniform(1e-3, 1000.0)
        R = 10.0 ** rng.uniform(-2, 1)
        props = cm.Propensities(s_w, s_c)
        st0 = cm.EconomyState(W, P_w, P_c, K_w, K_c, I)
        sv0 = cm.savings(st0, props)
        rs0 = restrict(SavingsCapacity(fw, fc), ContractRatio(R))
        for lam in SCALES:
            st1 = cm.EconomyState(*(lam * x for x in (W, P_w, P_c, K_w, K_c, I)))
            sv1 = cm.savings(st1, props)
            for f in ("S_w", "S_c", "S"):
                money(f"savings.{f}", getattr(sv0, f), getattr(sv1, f), lam)
            rate("condition residual", cm.pasinetti_condition_residual(st0, sv0), cm.pasinetti_condition_residual(st1, sv1))
            for a, b in zip(cm.uniform_profit_rate_residual(st0), cm.uniform_profit_rate_residual(st1)):
                rate("uniform rate residual", a, b)
            rate("pasinetti_profit_rate", cm.pasinetti_profit_rate(s_c, I, K_c), cm.pasinetti_profit_rate(s_c, lam * I, lam * K_c))
            rate("pasinetti_profit_rate_alt", cm.pasinetti_profit_rate_alt(s_w, P_w, W, I, K_c),
                 cm.pasinetti_profit_rate_alt(s_w, lam * P_w, lam * W, lam * I, lam * K_c))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", cm.NegativeProfitWarning)
                rate("kaldor_profit_rate", cm.kaldor_profit_rate(s_c, s_w, W, I, K_c),
                     cm.kaldor_profit_rate(s_c, s_w, lam * W, lam * I, lam * K_c))
            rate("kaldor_profit_rate_classic", cm.kaldor_profit_rate_classic(s_c, I, K_c),
                 cm.kaldor_profit_rate_classic(s_c, lam * I, lam * K_c))
            rate("implied_capitalist_propensity", cm.implied_capitalist_propensity(s_w, W, P_w).value,
                 cm.implied_capitalist_propensity(s_w, lam * W, lam * P_w).value)
            rate("contract_capitalist_propensity", cm.contract_capitalist_propensity(s_w, W, P_w).value,
                 cm.contract_capitalist_propensity(s_w, lam * W, lam * P_w).value)
            rate("implied_worker_propensity", cm.implied_worker_propensity(s_c, W, P_w),
                 cm.implied_worker_propensity(s_c, lam * W, lam * P_w))
            exact_lam = Fraction(lam)
            cap1 = SavingsCapacity(exact_lam * Fraction(fw), exact_lam * Fraction(fc))
            rate("capacity_ratio", capacity_ratio(SavingsCapacity(fw, fc)), capacity_ratio(cap1))
            rs1 = restrict(cap1, ContractRatio(R))
            for f in ("S_w", "S_c", "US_w", "US_c"):
                money(f"restrict.{f}", float(exact_lam * Fraction(getattr(rs0, f))), getattr(rs1, f), 1.0)
    ok = not failures
    record("C9", ok, f"{checked} comparisons over lambda in {SCALES}; failing operations: {sorted(set(failures)) or 'none'}")
    assert ok
