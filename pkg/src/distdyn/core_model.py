"""Single-period two-class distribution algebra.

Workers earn the wage ``W`` plus a profit share ``P_w`` on the capital they own;
capitalists earn ``P_c``. Each class saves a fixed fraction of its income. The
functions here cover the saving decomposition, the Pasinetti and Kaldor
profit-rate closures, and the propensity relation that the Pasinetti
equilibrium condition forces on the two classes.

All rates are per-period fractions and every function is pure.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    DegenerateInputError,
    ModelInputError,
    NegativeProfitWarning,
    SingularityError,
)

DEFAULT_TOL = 1e-12


def isclose(a: float, b: float, tol: float = DEFAULT_TOL) -> bool:
    """``|a - b| <= tol * max(1, |a|, |b|)``."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _check_nonneg(name: str, value: float) -> None:
    if not math.isfinite(value) or value < 0:
        raise ModelInputError(f"{name} must be finite and non-negative, got {value!r}")


def _check_fraction(name: str, value: float, allow_zero: bool = True) -> None:
    if not math.isfinite(value) or value > 1 or value < 0 or (value == 0 and not allow_zero):
        bounds = "[0, 1]" if allow_zero else "(0, 1]"
        raise ModelInputError(f"{name} must lie in {bounds}, got {value!r}")


@dataclass(frozen=True)
class EconomyState:
    """Stocks and flows of one period."""

    W: float
    P_w: float
    P_c: float
    K_w: float
    K_c: float
    I: float = 0.0

    def __post_init__(self):
        for name in ("W", "P_w", "P_c", "K_w", "K_c", "I"):
            _check_nonneg(name, getattr(self, name))

    @property
    def P(self) -> float:
        return self.P_c + self.P_w

    @property
    def K(self) -> float:
        return self.K_w + self.K_c


@dataclass(frozen=True)
class Propensities:
    s_w: float
    s_c: float

    def __post_init__(self):
        _check_fraction("s_w", self.s_w)
        # every closure divides by s_c
        _check_fraction("s_c", self.s_c, allow_zero=False)


@dataclass(frozen=True)
class SavingsBreakdown:
    S_w: float
    S_c: float

    def __post_init__(self):
        _check_nonneg("S_w", self.S_w)
        _check_nonneg("S_c", self.S_c)

    @property
    def S(self) -> float:
        return self.S_w + self.S_c


class ImpliedPropensity(NamedTuple):
    """A propensity solved from the equilibrium relation.

    ``feasible`` is False when the value exceeds one; the raw value is kept.
    """

    value: float
    feasible: bool


def savings(state: EconomyState, props: Propensities) -> SavingsBreakdown:
    """Saving of each class: ``S_c = s_c P_c`` and ``S_w = s_w (P_w + W)``."""
    return SavingsBreakdown(
        S_w=props.s_w * (state.P_w + state.W),
        S_c=props.s_c * state.P_c,
    )


def pasinetti_condition_residual(state: EconomyState, saving: SavingsBreakdown) -> float:
    """Signed gap ``S_w/S - K_w/K``; zero exactly when the condition holds."""
    if saving.S == 0:
        raise DegenerateInputError("total saving S is zero")
    if state.K == 0:
        raise DegenerateInputError("total capital K is zero")
    return saving.S_w / saving.S - state.K_w / state.K


def uniform_profit_rate_residual(state: EconomyState) -> tuple[float, float]:
    """Return ``(P_w/K_w - P/K, P_c/K_c - P/K)``."""
    if state.K_w == 0 or state.K_c == 0:
        raise DegenerateInputError("both capital stocks must be positive")
    r = state.P / state.K
    return state.P_w / state.K_w - r, state.P_c / state.K_c - r


def _check_rate_args(s: float, s_name: str, K: float, I: float) -> None:
    if not math.isfinite(s) or s <= 0:
        raise DegenerateInputError(f"{s_name} must be positive, got {s!r}")
    if not math.isfinite(K) or K <= 0:
        raise DegenerateInputError(f"K must be positive, got {K!r}")
    _check_nonneg("I", I)


def pasinetti_profit_rate(s_c: float, I: float, K: float) -> float:
    """Profit rate ``(1/s_c) (I/K)``, independent of the workers' propensity."""
    _check_rate_args(s_c, "s_c", K, I)
    return (1.0 / s_c) * (I / K)


def pasinetti_profit_rate_alt(s_w: float, P_w: float, W: float, I: float, K: float) -> float:
    """Profit rate written through the workers' side.

    ``(1/s_w) * P_w/(W + P_w) * (I/K)``; defined only for ``P_w > 0``.
    """
    _check_rate_args(s_w, "s_w", K, I)
    _check_nonneg("W", W)
    if not math.isfinite(P_w) or P_w <= 0:
        raise DegenerateInputError(f"P_w must be positive, got {P_w!r}")
    return (1.0 / s_w) * (P_w / (W + P_w)) * (I / K)


def kaldor_profit_rate(s_c: float, s_w: float, W: float, I: float, K: float) -> float:
    """Kaldor closure with no worker profits: ``(1/s_c) (I - s_w W)/K``.

    Warns with :class:`NegativeProfitWarning` and returns the negative rate when
    investment falls short of workers' saving.
    """
    _check_rate_args(s_c, "s_c", K, I)
    _check_nonneg("W", W)
    _check_fraction("s_w", s_w)
    net = I - s_w * W
    if net < 0:
        warnings.warn(
            f"I={I!r} < s_w*W={s_w * W!r}: capitalists' profit is negative",
            NegativeProfitWarning,
            stacklevel=2,
        )
    return (1.0 / s_c) * (net / K)


def kaldor_profit_rate_classic(s_c: float, I: float, K: float) -> float:
    """Kaldor closure with workers saving nothing: ``(1/s_c) (I/K)``."""
    _check_rate_args(s_c, "s_c", K, I)
    return (1.0 / s_c) * (I / K)


def _check_implied_args(s_w: float, W: float, P_w: float) -> None:
    _check_fraction("s_w", s_w)
    _check_nonneg("W", W)
    _check_nonneg("P_w", P_w)
    if P_w == 0:
        raise SingularityError(
            "P_w = 0: the capitalists' propensity is unbounded unless s_w -> 0"
        )


def implied_capitalist_propensity(s_w: float, W: float, P_w: float) -> ImpliedPropensity:
    """Capitalist propensity forced by the equilibrium condition, ``s_w (1 + W/P_w)``.

    Evaluated in exact rational arithmetic and rounded once, so the result is
    the correctly rounded value of the formula.
    """
    _check_implied_args(s_w, W, P_w)
    value = float(Fraction(s_w) * (1 + Fraction(W) / Fraction(P_w)))
    return ImpliedPropensity(value, value <= 1.0)


def contract_capitalist_propensity(s_w: float, W: float, P_w: float) -> ImpliedPropensity:
    """The same relation reached from the fixed-ratio contract, ``s_w (W + P_w)/P_w``.

    Kept as its own code path so the two derivations can be checked against
    each other bit for bit.
    """
    _check_implied_args(s_w, W, P_w)
    value = float(Fraction(s_w) * ((Fraction(W) + Fraction(P_w)) / Fraction(P_w)))
    return ImpliedPropensity(value, value <= 1.0)


def implied_worker_propensity(s_c: float, W: float, P_w: float) -> float:
    """Workers' propensity compatible with ``s_c``: ``s_c P_w / (W + P_w)``."""
    _check_fraction("s_c", s_c)
    _check_nonneg("W", W)
    _check_nonneg("P_w", P_w)
    if W + P_w == 0:
        raise DegenerateInputError("worker income W + P_w is zero")
    return s_c * P_w / (W + P_w)
