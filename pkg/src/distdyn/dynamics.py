"""Discrete-time capital accumulation for the two-class economy.

One period is one unit of time. In period ``t`` each class earns profit at the
common rate ``r(t)`` on the capital it holds at the start of the period, forms
its full capacity to save, possibly has that capacity cut by a contract ratio,
and adds what it actually saves to its capital stock::

    K_x(t + 1) = K_x(t) + S_x(t)

so stocks are initial stocks plus prefix sums of savings. Investment equals
saving in every period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Iterator, Literal, Sequence, Union

import numpy as np

from .contract import ContractRatio, RestrictedSavings, SavingsCapacity, restrict
from .core_model import Propensities
from .errors import ConfigError, DegenerateInputError, ModelInputError


@dataclass(frozen=True)
class GeometricPath:
    """``start * ratio**t``."""

    start: float
    ratio: float

    def values(self, T: int) -> tuple[float, ...]:
        return tuple(self.start * self.ratio**t for t in range(T))


PathSpec = Union[float, int, Sequence[float], GeometricPath]


def expand_path(spec: PathSpec, T: int, name: str) -> tuple[float, ...]:
    """Turn a constant, geometric, or explicit path into ``T`` floats."""
    if isinstance(spec, GeometricPath):
        values = spec.values(T)
    elif isinstance(spec, (int, float)) and not isinstance(spec, bool):
        values = (float(spec),) * T
    else:
        try:
            values = tuple(float(v) for v in spec)
        except (TypeError, ValueError):
            raise ConfigError(f"expected a number, list, or geometric path, got {spec!r}", name)
        if len(values) != T:
            raise ConfigError(f"has {len(values)} entries, horizon is {T}", name)
    for v in values:
        if not math.isfinite(v) or v < 0:
            raise ConfigError(f"entries must be finite and non-negative, got {v!r}", name)
    return values


def _check_stock(name: str, value: float) -> None:
    if not math.isfinite(value) or value < 0:
        raise ConfigError(f"must be finite and non-negative, got {value!r}", name)


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to run :func:`simulate`.

    ``profit_rate_path`` and ``wage_path`` accept a constant, a list of length
    ``horizon``, or a :class:`GeometricPath`; they are stored expanded.
    ``contract_R`` may be a ``Fraction`` for exact restriction arithmetic.
    """

    horizon: int
    initial_K_w: float
    initial_K_c: float
    profit_rate_path: PathSpec
    wage_path: PathSpec
    propensities: Propensities
    mode: Literal["unconstrained", "contract"] = "unconstrained"
    contract_R: Union[float, Fraction, None] = None
    carryover: bool = False
    investment_closure: Literal["S=I"] = "S=I"

    def __post_init__(self):
        if isinstance(self.horizon, bool) or not isinstance(self.horizon, int) or self.horizon < 1:
            raise ConfigError(f"must be an integer >= 1, got {self.horizon!r}", "horizon")
        _check_stock("initial_K_w", self.initial_K_w)
        _check_stock("initial_K_c", self.initial_K_c)
        object.__setattr__(
            self, "profit_rate_path", expand_path(self.profit_rate_path, self.horizon, "profit_rate_path")
        )
        object.__setattr__(self, "wage_path", expand_path(self.wage_path, self.horizon, "wage_path"))
        if not isinstance(self.propensities, Propensities):
            raise ConfigError("must be a Propensities instance", "propensities")
        if self.mode not in ("unconstrained", "contract"):
            raise ConfigError(f"must be 'unconstrained' or 'contract', got {self.mode!r}", "mode")
        if self.mode == "contract":
            if self.contract_R is None:
                raise ConfigError("required when mode is 'contract'", "contract_R")
            try:
                ContractRatio(self.contract_R)
            except ValueError as exc:
                raise ConfigError(str(exc), "contract_R") from None
        if not isinstance(self.carryover, bool):
            raise ConfigError("must be a boolean", "carryover")
        if self.investment_closure != "S=I":
            raise ConfigError("only the 'S=I' closure is supported", "investment_closure")


@dataclass(frozen=True)
class PeriodRecord:
    t: int
    K_w: float
    K_c: float
    K: float
    W: float
    P_w: float
    P_c: float
    P: float
    FCS_w: float
    FCS_c: float
    S_w: float
    S_c: float
    S: float
    US_w: float
    US_c: float
    US: float
    ratio_K: float
    ratio_S: float
    equilibrium_residual: float


RECORD_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(PeriodRecord))


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else math.nan


def _make_record(t, K_w, K_c, W, P_w, P_c, FCS_w, FCS_c, S_w, S_c, US_w, US_c) -> PeriodRecord:
    K = K_w + K_c
    S = S_w + S_c
    ratio_K = _ratio(K_w, K)
    ratio_S = _ratio(S_w, S)
    return PeriodRecord(
        t=t, K_w=K_w, K_c=K_c, K=K, W=W, P_w=P_w, P_c=P_c, P=P_w + P_c,
        FCS_w=FCS_w, FCS_c=FCS_c, S_w=S_w, S_c=S_c, S=S,
        US_w=US_w, US_c=US_c, US=US_w + US_c,
        ratio_K=ratio_K, ratio_S=ratio_S, equilibrium_residual=ratio_S - ratio_K,
    )


@dataclass(frozen=True)
class Trajectory:
    """Per-period records in time order.

    ``stock_timing`` says whether a record's capital is held at the start of
    the period (income-driven runs) or after the period's saving has been
    added (proportional runs).
    """

    records: tuple[PeriodRecord, ...]
    stock_timing: Literal["start", "end"] = "start"
    cumulative_US: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        ts = [r.t for r in self.records]
        if ts != list(range(len(ts))):
            raise ValueError("record times must run 0, 1, ..., T-1")
        object.__setattr__(self, "cumulative_US", math.fsum(r.US for r in self.records))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[PeriodRecord]:
        return iter(self.records)

    def __getitem__(self, i) -> PeriodRecord:
        return self.records[i]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    def terminal_capital(self) -> tuple[float, float]:
        """``(K_w, K_c)`` after the last period's saving."""
        last = self.records[-1]
        if self.stock_timing == "end":
            return last.K_w, last.K_c
        return last.K_w + last.S_w, last.K_c + last.S_c

    @property
    def terminal_K(self) -> float:
        return sum(self.terminal_capital())


def incomes_from_capital(K_w: float, K_c: float, r: float, W: float) -> tuple[float, float]:
    """Profits at the uniform rate ``r``; the wage does not enter."""
    if not r >= 0:
        raise ModelInputError(f"profit rate must be non-negative, got {r!r}")
    return r * K_w, r * K_c


def full_capacities(props: Propensities, W: float, P_w: float, P_c: float) -> SavingsCapacity:
    """Unrestricted saving of each class: propensity times class income."""
    return SavingsCapacity(FCS_w=props.s_w * (W + P_w), FCS_c=props.s_c * P_c)


def _period(
    t: int, K_w: float, K_c: float, config: ScenarioConfig, carried_w: float, carried_c: float
) -> tuple[PeriodRecord, float, float]:
    W = config.wage_path[t]
    P_w, P_c = incomes_from_capital(K_w, K_c, config.profit_rate_path[t], W)
    base = full_capacities(config.propensities, W, P_w, P_c)
    FCS_w = base.FCS_w + carried_w
    FCS_c = base.FCS_c + carried_c
    if config.mode == "contract":
        rs = restrict(SavingsCapacity(FCS_w, FCS_c), ContractRatio(config.contract_R))
    else:
        rs = RestrictedSavings(S_w=FCS_w, S_c=FCS_c, US_w=0.0, US_c=0.0)
    rec = _make_record(t, K_w, K_c, W, P_w, P_c, FCS_w, FCS_c, rs.S_w, rs.S_c, rs.US_w, rs.US_c)
    if config.carryover:
        return rec, rs.US_w, rs.US_c
    return rec, 0.0, 0.0


def initial_period(config: ScenarioConfig) -> tuple[PeriodRecord, float, float]:
    """Period 0 record and the unsaved amounts it carries into period 1."""
    return _period(0, float(config.initial_K_w), float(config.initial_K_c), config, 0.0, 0.0)


def step(
    record: PeriodRecord, config: ScenarioConfig, carried_US_w: float, carried_US_c: float
) -> tuple[PeriodRecord, float, float]:
    """Advance one period.

    Capital grows by the actual savings in ``record``; ``carried_US_*`` are
    added to the next period's capacities. Returns the new record and the
    amounts it carries forward (zero unless ``config.carryover``).
    """
    t = record.t + 1
    if t >= config.horizon:
        raise ValueError(f"period {t} is past the horizon {config.horizon}")
    return _period(t, record.K_w + record.S_w, record.K_c + record.S_c, config, carried_US_w, carried_US_c)


def simulate(config: ScenarioConfig) -> Trajectory:
    rec, cw, cc = initial_period(config)
    records = [rec]
    for _ in range(config.horizon - 1):
        rec, cw, cc = step(rec, config, cw, cc)
        records.append(rec)
    return Trajectory(tuple(records))


@dataclass(frozen=True)
class ProportionalSavingsSpec:
    """Savings that move in lockstep: ``S_w = C f(t)``, ``S_c = D f(t)``."""

    C: float
    D: float
    f: PathSpec = 1.0

    def __post_init__(self):
        for name in ("C", "D"):
            _check_stock(name, getattr(self, name))
        if isinstance(self.f, GeometricPath):
            if not (self.f.start > 0 and self.f.ratio > 0):
                raise ConfigError("geometric start and ratio must be positive", "f")
        elif isinstance(self.f, (int, float)):
            if not (math.isfinite(self.f) and self.f > 0):
                raise ConfigError(f"must be positive, got {self.f!r}", "f")
        else:
            object.__setattr__(self, "f", tuple(float(v) for v in self.f))
            if not all(math.isfinite(v) and v > 0 for v in self.f):
                raise ConfigError("entries must be positive", "f")

    @property
    def E(self) -> float:
        return self.C + self.D

    def multipliers(self, T: int) -> tuple[float, ...]:
        return expand_path(self.f, T, "f")


def simulate_proportional(
    spec: ProportionalSavingsSpec, T: int, initial_K_w: float = 0.0, initial_K_c: float = 0.0
) -> Trajectory:
    """Accumulate prescribed proportional savings, bypassing incomes.

    Records carry end-of-period stocks ``K_x(0) + sum_{u<=t} S_x(u)``, the
    running total the equilibrium ratio is defined on. Incomes are not
    modelled and are recorded as NaN.
    """
    if isinstance(T, bool) or not isinstance(T, int) or T < 1:
        raise ConfigError(f"must be an integer >= 1, got {T!r}", "horizon")
    _check_stock("initial_K_w", initial_K_w)
    _check_stock("initial_K_c", initial_K_c)
    f = spec.multipliers(T)
    K_w, K_c = float(initial_K_w), float(initial_K_c)
    nan = math.nan
    records = []
    for t in range(T):
        S_w = spec.C * f[t]
        S_c = spec.D * f[t]
        K_w += S_w
        K_c += S_c
        records.append(_make_record(t, K_w, K_c, nan, nan, nan, S_w, S_c, S_w, S_c, 0.0, 0.0))
    return Trajectory(tuple(records), stock_timing="end")


def equilibrium_residual_series(traj: Trajectory) -> np.ndarray:
    """``S_w/S - K_w/K`` per period; raises on the first period where it is undefined."""
    out = np.empty(len(traj))
    for i, rec in enumerate(traj):
        if not rec.S > 0:
            raise DegenerateInputError(f"period t={rec.t}: total saving is zero")
        if not rec.K > 0:
            raise DegenerateInputError(f"period t={rec.t}: total capital is zero")
        out[i] = rec.S_w / rec.S - rec.K_w / rec.K
    return out


@dataclass(frozen=True)
class GrowthComparison:
    K_unconstrained: float
    K_contract: float
    cumulative_US: float
    US_series: np.ndarray
    unconstrained: Trajectory
    contract: Trajectory

    @property
    def gap(self) -> float:
        return self.K_unconstrained - self.K_contract


def compare_growth(config: ScenarioConfig, tol: float = 1e-12) -> GrowthComparison:
    """Run ``config`` with and without its contract and compare terminal capital.

    Raises ``RuntimeError`` if the contract run ends with more capital than
    the unconstrained run, which cannot happen for a correct simulation.
    """
    if config.mode != "contract":
        raise ConfigError("compare_growth needs a contract-mode scenario", "mode")
    contract = simulate(config)
    free = simulate(replace(config, mode="unconstrained"))
    K_free, K_contract = free.terminal_K, contract.terminal_K
    if K_contract > K_free * (1 + tol):
        raise RuntimeError(f"contract run out-grew the unconstrained run: {K_contract!r} > {K_free!r}")
    return GrowthComparison(
        K_unconstrained=K_free,
        K_contract=K_contract,
        cumulative_US=contract.cumulative_US,
        US_series=contract.column("US"),
        unconstrained=free,
        contract=contract,
    )
