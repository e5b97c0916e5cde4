"""Savings restricted by a fixed worker/capitalist saving ratio.

Each class has a full capacity to save (FCS). A contract fixes the ratio
``R = S_w / S_c`` of actual savings. Whichever class would save
proportionally more is cut back and the shortfall is recorded as unsaved
capacity.

The formulas are evaluated on exact rationals built from the inputs and
rounded to float once per output. Passing ``fractions.Fraction`` values
(e.g. ``Fraction(1, 5)`` for R) therefore gives exact results whenever the
true outputs are representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .core_model import DEFAULT_TOL
from .errors import DegenerateInputError, ModelInputError

Number = Union[float, int, Fraction]


def _exact(name: str, value: Number) -> Fraction:
    if not isinstance(value, Rational) and not math.isfinite(value):
        raise ModelInputError(f"{name} must be finite, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class SavingsCapacity:
    FCS_w: Number
    FCS_c: Number

    def __post_init__(self):
        for name in ("FCS_w", "FCS_c"):
            if _exact(name, getattr(self, name)) < 0:
                raise ModelInputError(f"{name} must be non-negative")


@dataclass(frozen=True)
class ContractRatio:
    R: Number

    def __post_init__(self):
        if _exact("R", self.R) <= 0:
            raise ModelInputError(f"contract ratio R must be positive, got {self.R!r}")


@dataclass(frozen=True)
class RestrictedSavings:
    S_w: float
    S_c: float
    US_w: float
    US_c: float

    @property
    def US(self) -> float:
        return self.US_w + self.US_c


def capacity_ratio(cap: SavingsCapacity) -> float:
    """``R_1 = FCS_w / FCS_c``."""
    if cap.FCS_c == 0:
        raise DegenerateInputError("capitalists' capacity FCS_c is zero")
    return float(Fraction(cap.FCS_w) / Fraction(cap.FCS_c))


def conditional_m1(R1: Number, R: Number) -> Number:
    """``max(R1 - R, 0)``: positive when workers would over-save."""
    return max(R1 - R, 0)


def conditional_m2(R1: Number, R: Number) -> Number:
    """``max(R - R1, 0)``: positive when capitalists would over-save."""
    return max(R - R1, 0)


def restrict(cap: SavingsCapacity, contract: ContractRatio, tol: float = DEFAULT_TOL) -> RestrictedSavings:
    """Actual and unsaved amounts for both classes under ``contract``.

    In the general case::

        S_w  = FCS_w - FCS_c * M1
        S_c  = FCS_w / (M2 + R_1)
        US_w = FCS_c * M1
        US_c = FCS_c * M2 / (M2 + R_1)

    A capacity ratio within ``tol`` (relative) of R counts as equal, so
    nothing is restricted. Zero capacities are handled without error:

    * ``FCS_c == 0``: no positive ratio can be honoured, both actual
      savings are zero and all of ``FCS_w`` is unsaved.
    * ``FCS_w == 0``: the formulas give ``S_c = 0`` and ``US_c = FCS_c``.
    """
    fcs_w = Fraction(cap.FCS_w)
    fcs_c = Fraction(cap.FCS_c)
    R = Fraction(contract.R)

    if fcs_c == 0:
        return RestrictedSavings(S_w=0.0, S_c=0.0, US_w=float(fcs_w), US_c=0.0)

    R1 = fcs_w / fcs_c
    if abs(R1 - R) <= Fraction(tol) * max(R1, R):
        M1 = M2 = Fraction(0)
    else:
        M1 = conditional_m1(R1, R)
        M2 = conditional_m2(R1, R)

    S_w = fcs_w - fcs_c * M1
    S_c = fcs_w / (M2 + R1)
    US_w = fcs_c * M1
    US_c = fcs_c * M2 / (M2 + R1)
    return RestrictedSavings(float(S_w), float(S_c), float(US_w), float(US_c))
