"""JSON scenario files and CSV trajectories.

A scenario file holds ``schema_version`` and exactly one of ``scenario`` (an
income-driven run) or ``proportional`` (prescribed proportional savings)::

    {"schema_version": 1,
     "scenario": {"horizon": 50, "initial_K_w": 0, "initial_K_c": 800,
                  "profit_rate_path": 0.05,
                  "wage_path": {"start": 100, "growth": 0.02},
                  "propensities": {"s_w": 0.05, "s_c": 0.5},
                  "mode": "contract", "contract_R": "1/5", "carryover": true}}

Paths are a number (constant), a list with one entry per period, or an object
with ``start`` and either ``ratio`` or ``growth`` (ratio = 1 + growth).
``contract_R`` may be a number or a ``"p/q"`` string read as an exact fraction.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Any, Union

from .core_model import Propensities
from .dynamics import (
    RECORD_FIELDS,
    GeometricPath,
    PeriodRecord,
    ProportionalSavingsSpec,
    ScenarioConfig,
    Trajectory,
    simulate_proportional,
)
from .errors import ConfigError

SCHEMA_VERSION = 1

_SCENARIO_KEYS = {
    "horizon", "initial_K_w", "initial_K_c", "profit_rate_path", "wage_path",
    "propensities", "mode", "contract_R", "carryover", "investment_closure",
}
_SCENARIO_REQUIRED = {"horizon", "initial_K_w", "initial_K_c", "profit_rate_path", "wage_path", "propensities"}
_PROPORTIONAL_KEYS = {"C", "D", "f", "horizon", "initial_K_w", "initial_K_c"}
_PROPORTIONAL_REQUIRED = {"C", "D", "horizon"}


class ScenarioParseError(ConfigError):
    """The scenario document is not well-formed JSON."""


@dataclass(frozen=True)
class ProportionalScenario:
    spec: ProportionalSavingsSpec
    horizon: int
    initial_K_w: float = 0.0
    initial_K_c: float = 0.0

    def __post_init__(self):
        if isinstance(self.horizon, bool) or not isinstance(self.horizon, int) or self.horizon < 1:
            raise ConfigError(f"must be an integer >= 1, got {self.horizon!r}", "horizon")
        for name in ("initial_K_w", "initial_K_c"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ConfigError(f"must be finite and non-negative, got {value!r}", name)
        self.spec.multipliers(self.horizon)

    def run(self) -> Trajectory:
        return simulate_proportional(self.spec, self.horizon, self.initial_K_w, self.initial_K_c)


def _check_keys(obj: Any, allowed: set, required: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError("must be a JSON object", where)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) {', '.join(unknown)}", where)
    missing = sorted(required - set(obj))
    if missing:
        raise ConfigError(f"missing required key(s) {', '.join(missing)}", where)


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", where)
    return float(value)


def _path(value: Any, where: str):
    if isinstance(value, dict):
        _check_keys(value, {"start", "ratio", "growth"}, {"start"}, where)
        if ("ratio" in value) == ("growth" in value):
            raise ConfigError("give exactly one of 'ratio' or 'growth'", where)
        start = _number(value["start"], where)
        ratio = _number(value["ratio"], where) if "ratio" in value else 1.0 + _number(value["growth"], where)
        if ratio < 0:
            raise ConfigError("geometric ratio must be non-negative", where)
        return GeometricPath(start, ratio)
    if isinstance(value, list):
        return [_number(v, where) for v in value]
    return _number(value, where)


def _ratio_value(value: Any, where: str) -> Union[float, Fraction]:
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"cannot read {value!r} as a fraction", where) from None
    return _number(value, where)


def _rebadge(exc: ConfigError, prefix: str) -> ConfigError:
    field = f"{prefix}.{exc.field}" if exc.field else prefix
    msg = str(exc)
    if exc.field and msg.startswith(exc.field + ": "):
        msg = msg[len(exc.field) + 2:]
    return ConfigError(msg, field)


def _scenario_config(obj: Any) -> ScenarioConfig:
    _check_keys(obj, _SCENARIO_KEYS, _SCENARIO_REQUIRED, "scenario")
    props = obj["propensities"]
    _check_keys(props, {"s_w", "s_c"}, {"s_w", "s_c"}, "scenario.propensities")
    try:
        propensities = Propensities(_number(props["s_w"], "s_w"), _number(props["s_c"], "s_c"))
    except ConfigError as exc:
        raise _rebadge(exc, "scenario.propensities") from None
    except ValueError as exc:
        raise ConfigError(str(exc), "scenario.propensities") from None
    horizon = obj["horizon"]
    if isinstance(horizon, bool) or not isinstance(horizon, int):
        raise ConfigError(f"must be an integer, got {horizon!r}", "scenario.horizon")
    contract_R = obj.get("contract_R")
    try:
        return ScenarioConfig(
            horizon=horizon,
            initial_K_w=_number(obj["initial_K_w"], "initial_K_w"),
            initial_K_c=_number(obj["initial_K_c"], "initial_K_c"),
            profit_rate_path=_path(obj["profit_rate_path"], "profit_rate_path"),
            wage_path=_path(obj["wage_path"], "wage_path"),
            propensities=propensities,
            mode=obj.get("mode", "unconstrained"),
            contract_R=None if contract_R is None else _ratio_value(contract_R, "contract_R"),
            carryover=obj.get("carryover", False),
            investment_closure=obj.get("investment_closure", "S=I"),
        )
    except ConfigError as exc:
        raise _rebadge(exc, "scenario") from None


def _proportional(obj: Any) -> ProportionalScenario:
    _check_keys(obj, _PROPORTIONAL_KEYS, _PROPORTIONAL_REQUIRED, "proportional")
    try:
        spec = ProportionalSavingsSpec(
            C=_number(obj["C"], "C"),
            D=_number(obj["D"], "D"),
            f=_path(obj.get("f", 1.0), "f"),
        )
        return ProportionalScenario(
            spec,
            obj["horizon"],
            _number(obj.get("initial_K_w", 0.0), "initial_K_w"),
            _number(obj.get("initial_K_c", 0.0), "initial_K_c"),
        )
    except ConfigError as exc:
        raise _rebadge(exc, "proportional") from None


def parse_scenario(text: Union[bytes, str]) -> Union[ScenarioConfig, ProportionalScenario]:
    """Parse and validate a scenario document."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScenarioParseError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        line = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise ScenarioParseError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}\n  {line}"
        ) from None
    _check_keys(doc, {"schema_version", "scenario", "proportional"}, {"schema_version"}, "document")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ConfigError(f"unsupported version {doc['schema_version']!r}", "schema_version")
    if ("scenario" in doc) == ("proportional" in doc):
        raise ConfigError("exactly one of 'scenario' or 'proportional' is required", "document")
    if "scenario" in doc:
        return _scenario_config(doc["scenario"])
    return _proportional(doc["proportional"])


def _fmt(value: float) -> str:
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return "nan"
    return format(value, ".17g")


def emit_trajectory(traj: Trajectory, sink: IO[str]) -> int:
    """Write ``traj`` as CSV to a text sink; returns the number of characters written."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for rec in traj:
        writer.writerow([_fmt(getattr(rec, name)) for name in RECORD_FIELDS])
    data = buf.getvalue()
    sink.write(data)
    return len(data)


def trajectory_to_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    emit_trajectory(traj, buf)
    return buf.getvalue()


def read_trajectory(text: str, stock_timing: str = "start") -> Trajectory:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != RECORD_FIELDS:
        raise ValueError("trajectory CSV header does not match the record layout")
    records = []
    for row in rows[1:]:
        values = dict(zip(RECORD_FIELDS, row))
        kwargs = {name: float(values[name]) for name in RECORD_FIELDS[1:]}
        records.append(PeriodRecord(t=int(values["t"]), **kwargs))
    return Trajectory(tuple(records), stock_timing=stock_timing)
