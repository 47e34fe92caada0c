"""
掃引設定（JSON）の読み込みと検証

スキーマ:
    N (int), J (number, 既定 1), a (number, 既定 1), delta (number),
    lambda ({min, max, step} またはスカラー), time ({min, max, step}),
    grid ("paper" | "antiperiodic", 既定 "paper"), outputs ([{format, path}])
未知のキーは拒否する。
"""
import json
import numbers
from enum import Enum
from pathlib import Path
from typing import List, NamedTuple, Optional

import numpy as np

from ..errors import ChainParameterError, ConfigError
from ..model.chain_params import ChainParams, GridConvention, uniform_grid

ALLOWED_KEYS = {"N", "J", "a", "delta", "lambda", "time", "grid", "outputs"}
REQUIRED_KEYS = {"N", "delta", "lambda", "time"}
RANGE_KEYS = {"min", "max", "step"}


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


class OutputSpec(NamedTuple):
    format: OutputFormat
    path: str


class GridRange(NamedTuple):
    """等間隔格子 {min, max, step}。step が None なら min = max の一点"""
    start: float
    stop: float
    step: Optional[float] = None

    @property
    def is_single_point(self) -> bool:
        return self.step is None

    def values(self) -> np.ndarray:
        if self.is_single_point:
            return np.array([self.start])
        return uniform_grid(self.start, self.stop, self.step)

    def to_json(self):
        if self.is_single_point:
            return self.start
        return {"min": self.start, "max": self.stop, "step": self.step}


class SweepConfig:
    """(λ, t) 掃引の完全に解決された設定"""

    def __init__(self, params_base: ChainParams, lambda_grid: GridRange, time_grid: GridRange,
                 convention: GridConvention = GridConvention.PAPER_INTEGER,
                 outputs: Optional[List[OutputSpec]] = None):
        _check_range("lambda", lambda_grid, allow_single=True)
        _check_range("time", time_grid, allow_single=False)
        outputs = list(outputs or [])
        paths = [spec.path for spec in outputs]
        if len(set(paths)) != len(paths):
            raise ConfigError(f"output paths must be distinct, got {paths}")

        self._params_base = params_base.with_changes(lam=lambda_grid.start)
        self._lambda_grid = lambda_grid
        self._time_grid = time_grid
        self._convention = convention
        self._outputs = outputs

    @property
    def params_base(self) -> ChainParams:
        return self._params_base

    @property
    def lambda_grid(self) -> GridRange:
        return self._lambda_grid

    @property
    def time_grid(self) -> GridRange:
        return self._time_grid

    @property
    def convention(self) -> GridConvention:
        return self._convention

    @property
    def outputs(self) -> List[OutputSpec]:
        return list(self._outputs)

    def lambdas(self) -> np.ndarray:
        return self._lambda_grid.values()

    def times(self) -> np.ndarray:
        return self._time_grid.values()

    def with_outputs(self, outputs: List[OutputSpec]) -> "SweepConfig":
        return SweepConfig(self._params_base, self._lambda_grid, self._time_grid,
                           self._convention, outputs)

    def to_dict(self) -> dict:
        params = self._params_base
        return {
            "N": params.N,
            "J": params.J,
            "a": params.a,
            "delta": params.delta,
            "lambda": self._lambda_grid.to_json(),
            "time": self._time_grid.to_json(),
            "grid": self._convention.value,
            "outputs": [{"format": spec.format.value, "path": spec.path} for spec in self._outputs],
        }


def _check_range(name: str, grid: GridRange, allow_single: bool) -> None:
    if grid.is_single_point:
        if not allow_single:
            raise ConfigError(f"{name} grid needs min, max and step")
        if grid.start != grid.stop:
            raise ConfigError(f"{name} grid without step must have min == max")
        return
    if not grid.step > 0:
        raise ConfigError(f"{name} grid step must be > 0, got {grid.step}")
    if not grid.start < grid.stop:
        raise ConfigError(f"{name} grid needs min < max, got [{grid.start}, {grid.stop}]")


def _number(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    return float(value)


def _parse_range(name: str, value) -> GridRange:
    if isinstance(value, dict):
        unknown = set(value) - RANGE_KEYS
        if unknown:
            raise ConfigError(f"unknown keys in {name}: {sorted(unknown)}")
        if "min" not in value or "max" not in value:
            raise ConfigError(f"{name} needs both min and max")
        start = _number(f"{name}.min", value["min"])
        stop = _number(f"{name}.max", value["max"])
        step = value.get("step")
        return GridRange(start, stop, None if step is None else _number(f"{name}.step", step))
    point = _number(name, value)
    return GridRange(point, point, None)


def _parse_outputs(value) -> List[OutputSpec]:
    if not isinstance(value, list):
        raise ConfigError("outputs must be an array of {format, path}")
    outputs = []
    for entry in value:
        if not isinstance(entry, dict) or set(entry) != {"format", "path"}:
            raise ConfigError(f"each output needs exactly format and path, got {entry!r}")
        try:
            output_format = OutputFormat(str(entry["format"]).lower())
        except ValueError:
            raise ConfigError(f"unknown output format {entry['format']!r}") from None
        outputs.append(OutputSpec(output_format, str(entry["path"])))
    return outputs


def config_from_dict(data: dict) -> SweepConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - ALLOWED_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = REQUIRED_KEYS - set(data)
    if missing:
        raise ConfigError(f"missing config keys: {sorted(missing)}")

    n_sites = data["N"]
    if isinstance(n_sites, bool) or not isinstance(n_sites, numbers.Integral):
        raise ConfigError(f"N must be an integer, got {n_sites!r}")
    try:
        convention = GridConvention(data.get("grid", GridConvention.PAPER_INTEGER.value))
    except ValueError:
        raise ConfigError(f"grid must be 'paper' or 'antiperiodic', got {data['grid']!r}") from None

    lambda_grid = _parse_range("lambda", data["lambda"])
    try:
        params = ChainParams(
            N=int(n_sites),
            lam=lambda_grid.start,
            delta=_number("delta", data["delta"]),
            J=_number("J", data.get("J", 1.0)),
            a=_number("a", data.get("a", 1.0)),
        )
    except ChainParameterError as error:
        raise ConfigError(str(error)) from error

    return SweepConfig(
        params_base=params,
        lambda_grid=lambda_grid,
        time_grid=_parse_range("time", data["time"]),
        convention=convention,
        outputs=_parse_outputs(data.get("outputs", [])),
    )


def read_config_file(path) -> dict:
    """JSON を読むだけ（検証は config_from_dict）"""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as error:
        raise ConfigError(f"cannot read config {path}: {error.strerror}") from error
    except json.JSONDecodeError as error:
        raise ConfigError(f"malformed JSON in {path}: {error}") from error


def load_config(path) -> SweepConfig:
    return config_from_dict(read_config_file(path))
