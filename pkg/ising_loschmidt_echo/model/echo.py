"""
Loschmidt エコー L(λ, t) = Π_{k>0} F_k(t)

積は常に対数領域で ln F_k = log1p(-sin²(2α_k) sin²(ε_e t)) の和として取り、最後に一度だけ指数を取る。
N = 2500 の臨界点付近では直接積が倍精度でアンダーフローするため。
"""
import logging
from typing import List, Optional

import numpy as np

from ..errors import SamplingError, ScalingError
from .chain_params import ChainParams, GridConvention, MomentumGrid
from .spectrum import ArrayLike, ModeData, grid_modes, momentum_grid

logger = logging.getLogger(__name__)

DEFAULT_REVIVAL_THRESHOLD = 0.5
DEFAULT_TIME_STEP = 0.05
# 1 ステップあたりの最大位相回転（ラジアン）
MAX_PHASE_STEP = 0.5


def _log_product(modes: ModeData, t: ArrayLike) -> ArrayLike:
    t = np.asarray(t, dtype=float)
    phase = np.sin(np.multiply.outer(t, modes.eps_e))
    with np.errstate(divide="ignore"):
        # F_k = 0 のときだけ -inf になり、L は厳密に 0
        terms = np.log1p(-modes.sin2_2alpha * phase ** 2)
    return terms.sum(axis=-1)[()]


def log_loschmidt_echo(params: ChainParams, grid: MomentumGrid, t: ArrayLike) -> ArrayLike:
    """ln L(t)。t はスカラーでも配列でもよい"""
    return _log_product(grid_modes(params, grid), t)


def loschmidt_echo(params: ChainParams, grid: MomentumGrid, t: ArrayLike) -> ArrayLike:
    """L(t) = Π_{k>0} F_k(t)"""
    return np.exp(log_loschmidt_echo(params, grid, t))[()]


def partial_log_echo(params: ChainParams, grid: MomentumGrid, k_cutoff: float,
                     t: ArrayLike) -> ArrayLike:
    """部分和 S(λ, t) = ln L_c(λ, t)、k ≤ K_c のモードのみ"""
    truncated = grid.restricted_to(k_cutoff)
    if truncated is None:
        # 空積
        return np.zeros_like(np.asarray(t, dtype=float))[()]
    return log_loschmidt_echo(params, truncated, t)


def partial_echo(params: ChainParams, grid: MomentumGrid, k_cutoff: float,
                 t: ArrayLike) -> ArrayLike:
    """部分積 L_c(λ, t) ≥ L(λ, t)"""
    return np.exp(partial_log_echo(params, grid, k_cutoff, t))[()]


def quadratic_decay_coefficient(params: ChainParams, grid: MomentumGrid) -> float:
    """
    短時間展開 -ln L(t) = Γ₂ t² + O(t⁴) の係数
    Γ₂ = Σ_{k>0} sin²(2α_k) (ε_e^k)²
    """
    modes = grid_modes(params, grid)
    return float(np.sum(modes.sin2_2alpha * modes.eps_e ** 2))


class EchoCurve:
    """
    時間格子上のエコー曲線
    対数値を保持し、値は exp(log_values)
    """

    def __init__(self, params: ChainParams, grid: MomentumGrid, times, log_values):
        times = np.array(times, dtype=float)
        log_values = np.array(log_values, dtype=float)
        if times.shape != log_values.shape or times.ndim != 1:
            raise SamplingError("times and log_values must be 1-D arrays of equal length")
        times.setflags(write=False)
        log_values.setflags(write=False)
        self._params = params
        self._grid = grid
        self._times = times
        self._log_values = log_values

    @property
    def params(self) -> ChainParams:
        return self._params

    @property
    def grid(self) -> MomentumGrid:
        return self._grid

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def log_values(self) -> np.ndarray:
        return self._log_values

    @property
    def values(self) -> np.ndarray:
        return np.exp(self._log_values)

    def __len__(self) -> int:
        return self._times.size


def echo_curve(params: ChainParams, grid: MomentumGrid, times) -> EchoCurve:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise SamplingError("times must be a non-empty 1-D array")
    if np.any(np.diff(times) <= 0.0):
        raise SamplingError("times must be strictly increasing")
    return EchoCurve(params, grid, times, log_loschmidt_echo(params, grid, times))


def initial_decay_end(curve: EchoCurve) -> Optional[int]:
    """
    初期減衰の終わり（最初の極小点）のインデックス
    減衰しない曲線では None
    """
    values = curve.values
    for i in range(1, values.size - 1):
        if values[i] < values[i - 1] and values[i] <= values[i + 1]:
            return i
    return None


def _check_sampling(curve: EchoCurve) -> None:
    if len(curve) < 3:
        raise SamplingError("revival detection needs at least three samples")
    eps_max = float(np.max(grid_modes(curve.params, curve.grid).eps_e))
    step = float(np.max(np.diff(curve.times)))
    if eps_max * step >= MAX_PHASE_STEP:
        raise SamplingError(
            f"time step {step} too coarse: eps_max*dt = {eps_max * step:.3f} rad, "
            f"needs < {MAX_PHASE_STEP}"
        )


def find_revival_times(curve: EchoCurve,
                       threshold: float = DEFAULT_REVIVAL_THRESHOLD) -> List[float]:
    """
    初期減衰の後に threshold を超える L の極大の時刻

    極大は周囲 3 点の二次補間で求める。ピークがなければ空リスト。
    """
    _check_sampling(curve)
    start = initial_decay_end(curve)
    if start is None:
        logger.info("no decay: echo never leaves its initial value on this window")
        return []

    values = curve.values
    times = curve.times
    revivals = []
    for i in range(start + 1, values.size - 1):
        left, centre, right = values[i - 1], values[i], values[i + 1]
        if not (centre > left and centre >= right and centre > threshold):
            continue
        curvature = left - 2.0 * centre + right
        offset = 0.5 * (left - right) / curvature if curvature != 0.0 else 0.0
        revivals.append(float(times[i] + offset * 0.5 * (times[i + 1] - times[i - 1])))
    return revivals


def scaling_compare(base: ChainParams, alpha: float, times,
                    convention: GridConvention = GridConvention.PAPER_INTEGER) -> float:
    """
    スケーリング変換 t → t/α, δ → αδ, N → N/α の下での崩れの最大値

    変換後の系を t/α で直接評価し、基準の系との |ΔL| の最大を返す（補間はしない）
    """
    if not (np.isfinite(alpha) and alpha > 0.0):
        raise ScalingError(f"alpha must be finite and > 0, got {alpha!r}")
    scaled_sites = base.N / alpha
    rounded = int(round(scaled_sites))
    if abs(scaled_sites - rounded) > 1e-9 or rounded % 2 != 0:
        raise ScalingError(
            f"N/alpha must be an even integer, got N={base.N}, alpha={alpha} -> {scaled_sites}"
        )
    scaled = base.with_changes(N=rounded, delta=alpha * base.delta)
    times = np.asarray(times, dtype=float)

    reference = loschmidt_echo(base, momentum_grid(base, convention), times)
    transformed = loschmidt_echo(scaled, momentum_grid(scaled, convention), times / alpha)
    deviation = float(np.max(np.abs(reference - transformed)))
    logger.debug("scaling collapse N=%d -> %d, alpha=%s: max deviation %.6g",
                 base.N, rounded, alpha, deviation)
    return deviation


class AnalyticEcho:
    """解析的な積公式によるエコー評価（EchoEvaluator の実装）"""

    def __init__(self, params: ChainParams, convention: GridConvention = GridConvention.PAPER_INTEGER):
        self._params = params
        self._grid = momentum_grid(params, convention)

    @property
    def label(self) -> str:
        return f"analytic[{self._grid.convention.value}]"

    def echo(self, t: ArrayLike) -> ArrayLike:
        return loschmidt_echo(self._params, self._grid, t)
