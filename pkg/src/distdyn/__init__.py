"""Kaldor and Pasinetti two-class distribution models with contract-restricted savings."""

from .contract import (
    ContractRatio,
    RestrictedSavings,
    SavingsCapacity,
    capacity_ratio,
    conditional_m1,
    conditional_m2,
    restrict,
)
from .core_model import (
    EconomyState,
    ImpliedPropensity,
    Propensities,
    SavingsBreakdown,
    contract_capitalist_propensity,
    implied_capitalist_propensity,
    implied_worker_propensity,
    kaldor_profit_rate,
    kaldor_profit_rate_classic,
    pasinetti_condition_residual,
    pasinetti_profit_rate,
    pasinetti_profit_rate_alt,
    savings,
    uniform_profit_rate_residual,
)
from .dynamics import (
    GeometricPath,
    GrowthComparison,
    PeriodRecord,
    ProportionalSavingsSpec,
    ScenarioConfig,
    Trajectory,
    compare_growth,
    equilibrium_residual_series,
    full_capacities,
    incomes_from_capital,
    initial_period,
    simulate,
    simulate_proportional,
    step,
)
from .errors import (
    ConfigError,
    DegenerateInputError,
    ModelInputError,
    NegativeProfitWarning,
    SingularityError,
)
from .scenario_io import ProportionalScenario, emit_trajectory, parse_scenario, read_trajectory

__version__ = "0.1.0"
