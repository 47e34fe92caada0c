"""
(λ, t) 掃引エンジン

各 λ 行は独立に計算され、行のインデックスで確保済みの面に置かれる。
完了順は出力に影響しないので、ワーカー数に関係なくビット単位で同じ面になる。
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np

from .. import __version__
from ..errors import ConfigError
from ..model.chain_params import ChainParams, GridConvention
from ..model.echo import loschmidt_echo
from ..model.spectrum import momentum_grid
from .config import SweepConfig
from .progress import SweepProgress

logger = logging.getLogger(__name__)


def _sweep_row(task) -> np.ndarray:
    # プロセス間で渡すので引数は素のデータだけ
    params_dict, lam, convention_value, times = task
    params = ChainParams(**{**params_dict, "lam": lam})
    grid = momentum_grid(params, GridConvention(convention_value))
    return np.asarray(loschmidt_echo(params, grid, times), dtype=float)


class SweepResult:
    """掃引結果：設定、格子、L(λ, t) の面、メタデータ"""

    def __init__(self, config: SweepConfig, lambdas: np.ndarray, times: np.ndarray,
                 surface: np.ndarray, metadata: dict):
        surface = np.array(surface, dtype=float)
        if surface.shape != (lambdas.size, times.size):
            raise ValueError(
                f"surface shape {surface.shape} does not match grids ({lambdas.size}, {times.size})"
            )
        surface.setflags(write=False)
        self._config = config
        self._lambdas = np.array(lambdas, dtype=float)
        self._times = np.array(times, dtype=float)
        self._surface = surface
        self._metadata = dict(metadata)

    @property
    def config(self) -> SweepConfig:
        return self._config

    @property
    def lambdas(self) -> np.ndarray:
        return self._lambdas

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def surface(self) -> np.ndarray:
        return self._surface

    @property
    def metadata(self) -> dict:
        return dict(self._metadata)

    def row(self, lam: float) -> np.ndarray:
        """λ に最も近い格子点の行"""
        return self._surface[int(np.argmin(np.abs(self._lambdas - lam)))]

    def to_dict(self) -> dict:
        return {
            "config": self._config.to_dict(),
            "lambda": self._lambdas.tolist(),
            "t": self._times.tolist(),
            "surface": self._surface.tolist(),
            "metadata": self.metadata,
        }


def run_sweep(config: SweepConfig, workers: int = 1,
              progress: Optional[SweepProgress] = None) -> SweepResult:
    """
    設定の格子全体で L を評価する

    Args:
        config: 検証済みの掃引設定
        workers: プロセス数。1 ならプロセスプールを使わない
        progress: 行ごとの通知先
    """
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    lambdas = config.lambdas()
    times = config.times()
    base = config.params_base.to_dict()
    tasks = [(base, float(lam), config.convention.value, times) for lam in lambdas]

    logger.info("sweep start: %d lambda x %d t points, N=%d, grid=%s, workers=%d",
                lambdas.size, times.size, config.params_base.N, config.convention.value, workers)
    started = time.perf_counter()
    surface = np.empty((lambdas.size, times.size))
    if workers == 1:
        rows = map(_sweep_row, tasks)
        _place_rows(surface, lambdas, rows, progress)
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # map は入力順に返す
            _place_rows(surface, lambdas, executor.map(_sweep_row, tasks), progress)
    wall_time = time.perf_counter() - started
    logger.info("sweep finished in %.3f s", wall_time)

    metadata = {
        "tool_version": __version__,
        "wall_time": wall_time,
        "grid_convention": config.convention.value,
    }
    return SweepResult(config, lambdas, times, surface, metadata)


def _place_rows(surface: np.ndarray, lambdas: np.ndarray, rows, progress: Optional[SweepProgress]):
    for index, row in enumerate(rows):
        surface[index] = row
        if progress is not None:
            progress.row_completed(index, float(lambdas[index]), row, lambdas.size)
