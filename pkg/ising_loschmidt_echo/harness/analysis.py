"""
掃引結果とエコー曲線の解析

谷の検出、リバイバル時間の表、短時間ガウス則の検査、スケーリング崩れ、オラクル検査。
各関数は JSON に直列化できる結果を返す（to_dict）。
"""
import logging
import math
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from ..errors import SamplingError, ValleyCoverageError
from ..model.chain_params import ChainParams, GridConvention, uniform_grid
from ..model.echo import (
    DEFAULT_REVIVAL_THRESHOLD, DEFAULT_TIME_STEP, EchoCurve, echo_curve, find_revival_times,
    log_loschmidt_echo, loschmidt_echo, quadratic_decay_coefficient, scaling_compare,
)
from ..model.pair_block import PairBlock, oracle_echo_product, pair_block_echo_factor
from ..model.short_time import short_time_model
from ..model.spectrum import ground_state_energy, mode_data, mode_factor, momentum_grid
from ..model.spin_chain import MAX_DENSE_SITES, SpinChainEvolver
from .sweep import SweepResult

logger = logging.getLogger(__name__)

# 谷の探索区間（掃引はこれを含む必要がある）
VALLEY_WINDOW = (0.8, 1.0)
FLAT_TOLERANCE = 1e-12
# 最初のリバイバルを含む時間窓 t_max = REVIVAL_WINDOW_FACTOR * N / J
REVIVAL_WINDOW_FACTOR = 0.35
GAUSSIAN_FIT_TMAX = 0.2
GAUSSIAN_FIT_SAMPLES = 20
GAUSSIAN_TOLERANCE = 0.01
PAIR_BLOCK_TOLERANCE = 1e-10
MODE_FACTOR_TOLERANCE = 1e-12
SPIN_ED_TOLERANCE = 1e-8
UNITARITY_TOLERANCE = 1e-10
ORACLE_LAMBDAS = (0.5, 0.9, 1.0, 1.5)
ORACLE_DELTAS = (0.01, 0.1)


class ValleyMetric(Enum):
    """λ_min を決める行ごとの指標"""
    MEAN = "mean"    # 時間平均 ⟨L⟩_t
    DEPTH = "depth"  # 時間最小値 min_t L


class ValleyReport(NamedTuple):
    found: bool
    lambda_min: Optional[float]
    depth: Optional[float]
    mean_echo: Optional[float]
    depth_lambda_min: Optional[float]
    metric: ValleyMetric

    def to_dict(self) -> dict:
        return {**self._asdict(), "metric": self.metric.value}


def detect_valley(result: SweepResult, metric: ValleyMetric = ValleyMetric.MEAN) -> ValleyReport:
    """
    面 L(λ, t) の谷を探す

    行ごとに時間最小値（深さ）と時間平均を計算し、metric の最小となる λ を返す。
    同値なら小さい λ。δ = 0 の平坦な面では found=False。

    既定は深さではなく時間平均。N = 200, δ = 0.1 の面では深さの最小は λ = 0.98 で
    臨界点直前の一瞬の落ち込みを拾い、長く低い帯（λ = 0.92）は時間平均だけが捉える。
    深さの λ は depth_lambda_min として常に併記する。
    """
    lambdas = result.lambdas
    low, high = VALLEY_WINDOW
    if lambdas.min() > low + 1e-9 or lambdas.max() < high - 1e-9:
        raise ValleyCoverageError(
            f"lambda grid [{lambdas.min()}, {lambdas.max()}] must contain [{low}, {high}]"
        )
    surface = result.surface
    if np.all(surface >= 1.0 - FLAT_TOLERANCE):
        logger.info("flat surface: no valley")
        return ValleyReport(False, None, None, None, None, metric)

    depth = surface.min(axis=1)
    mean = surface.mean(axis=1)
    # argmin は最初の最小を返すので、昇順の格子では小さい λ が勝つ
    chosen = int(np.argmin(mean if metric is ValleyMetric.MEAN else depth))
    deepest = int(np.argmin(depth))
    return ValleyReport(
        found=True,
        lambda_min=float(lambdas[chosen]),
        depth=float(depth[chosen]),
        mean_echo=float(mean[chosen]),
        depth_lambda_min=float(lambdas[deepest]),
        metric=metric,
    )


class RevivalRow(NamedTuple):
    N: int
    first_revival: Optional[float]
    revival_echo: Optional[float]


class RevivalTable(NamedTuple):
    rows: List[RevivalRow]
    slope: Optional[float]
    r_squared: Optional[float]
    curves: List[EchoCurve]

    def to_dict(self) -> dict:
        return {
            "rows": [row._asdict() for row in self.rows],
            "slope": self.slope,
            "r_squared": self.r_squared,
        }


def fit_through_origin(x, y):
    """
    原点を通る直線 y = s x の最小二乗と決定係数（平均まわり）

    Returns:
        (slope, r_squared)
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope = float(np.dot(x, y) / np.dot(x, x))
    residual = float(np.sum((y - slope * x) ** 2))
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - residual / total if total > 0.0 else 1.0
    return slope, r_squared


def revival_table(sizes: Sequence[int], lam: float, delta: float, J: float = 1.0, a: float = 1.0,
                  dt: float = DEFAULT_TIME_STEP, threshold: float = DEFAULT_REVIVAL_THRESHOLD,
                  convention: GridConvention = GridConvention.PAPER_INTEGER) -> RevivalTable:
    """N ごとの最初のリバイバル時間と、原点を通る直線へのあてはめ"""
    rows = []
    curves = []
    for n_sites in sizes:
        params = ChainParams(N=n_sites, lam=lam, delta=delta, J=J, a=a)
        times = uniform_grid(0.0, REVIVAL_WINDOW_FACTOR * n_sites / J, dt)
        curve = echo_curve(params, momentum_grid(params, convention), times)
        curves.append(curve)
        revivals = find_revival_times(curve, threshold)
        if not revivals:
            logger.warning("no revival above %.3g for N=%d within t <= %.3g",
                           threshold, n_sites, times[-1])
            rows.append(RevivalRow(n_sites, None, None))
            continue
        first = revivals[0]
        rows.append(RevivalRow(n_sites, first, float(loschmidt_echo(params, curve.grid, first))))

    found = [row for row in rows if row.first_revival is not None]
    if len(found) < 2:
        return RevivalTable(rows, None, None, curves)
    slope, r_squared = fit_through_origin([row.N for row in found],
                                          [row.first_revival for row in found])
    logger.info("revival period slope %.6g per site, R^2 = %.6f", slope, r_squared)
    return RevivalTable(rows, slope, r_squared, curves)


class GaussianCheck(NamedTuple):
    fitted: float
    quartic: float
    exact: float
    relative_error: float
    cutoff_gamma: Optional[float]
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return self._asdict()


def gaussian_check(params: ChainParams,
                   convention: GridConvention = GridConvention.PAPER_INTEGER,
                   t_max: float = GAUSSIAN_FIT_TMAX, samples: int = GAUSSIAN_FIT_SAMPLES,
                   k_cutoff: Optional[float] = None,
                   tolerance: float = GAUSSIAN_TOLERANCE) -> GaussianCheck:
    """
    -ln L を (t², t⁴) で最小二乗し、t² の係数を Γ₂ と比べる

    t⁴ 項を入れないと t ≤ 0.2/J でも高次項が係数を数 % ずらす。
    cutoff_gamma は K_c（既定は最小の運動量 2π/(Na)）でのガウス近似の γ。
    """
    if samples < 2:
        raise SamplingError(f"the (t^2, t^4) fit needs at least 2 samples, got {samples}")
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise SamplingError(f"fit window t_max must be finite and > 0, got {t_max!r}")
    grid = momentum_grid(params, convention)
    times = np.linspace(t_max / samples, t_max, samples)
    decay = -np.asarray(log_loschmidt_echo(params, grid, times))
    design = np.column_stack([times ** 2, times ** 4])
    (fitted, quartic), *_ = np.linalg.lstsq(design, decay, rcond=None)
    exact = quadratic_decay_coefficient(params, grid)

    if exact != 0.0:
        relative_error = float((fitted - exact) / exact)
    else:
        relative_error = 0.0 if abs(fitted) <= FLAT_TOLERANCE else math.inf

    if k_cutoff is None:
        k_cutoff = 2.0 * math.pi / (params.N * params.a)
    cutoff = short_time_model(params, k_cutoff)
    return GaussianCheck(
        fitted=float(fitted),
        quartic=float(quartic),
        exact=exact,
        relative_error=relative_error,
        cutoff_gamma=cutoff.gamma,
        tolerance=tolerance,
        passed=abs(relative_error) <= tolerance,
    )


class ScalingReport(NamedTuple):
    N: int
    delta: float
    alpha: float
    scaled_N: int
    scaled_delta: float
    max_deviation: float
    tolerance: Optional[float]
    passed: Optional[bool]

    def to_dict(self) -> dict:
        return self._asdict()


def scaling_report(base: ChainParams, alpha: float, times,
                   convention: GridConvention = GridConvention.PAPER_INTEGER,
                   tolerance: Optional[float] = None) -> ScalingReport:
    """scaling_compare の結果。tolerance が None なら合否は付けない"""
    deviation = scaling_compare(base, alpha, times, convention)
    return ScalingReport(
        N=base.N,
        delta=base.delta,
        alpha=float(alpha),
        scaled_N=int(round(base.N / alpha)),
        scaled_delta=alpha * base.delta,
        max_deviation=deviation,
        tolerance=tolerance,
        passed=None if tolerance is None else deviation <= tolerance,
    )


def _suite(name: str, deviation: float, tolerance: Optional[float], **details) -> dict:
    passed = True if tolerance is None else bool(deviation < tolerance)
    return {"name": name, "max_deviation": deviation, "tolerance": tolerance,
            "passed": passed, **details}


def _mode_factor_suite(rng: np.random.Generator, samples: int) -> dict:
    # λ ∈ [0, 2], δ ∈ [-0.2, 0.2], t ∈ [0, 30] の無作為な点で F_k を比較
    worst = 0.0
    for _ in range(samples):
        params = ChainParams(N=4, lam=rng.uniform(0.0, 2.0), delta=rng.uniform(-0.2, 0.2))
        k = rng.uniform(1e-3, np.pi)
        t = rng.uniform(0.0, 30.0)
        oracle = pair_block_echo_factor(PairBlock(k, params), t)
        analytic = mode_factor(mode_data(k, params), t)
        worst = max(worst, abs(float(oracle) - float(analytic)))
    return _suite("pair-block factor", worst, MODE_FACTOR_TOLERANCE, samples=samples)


def _pair_block_suite(n_sites: int, rng: np.random.Generator, samples: int,
                      convention: GridConvention) -> dict:
    worst = 0.0
    for lam in ORACLE_LAMBDAS:
        for delta in ORACLE_DELTAS:
            params = ChainParams(N=n_sites, lam=lam, delta=delta)
            grid = momentum_grid(params, convention)
            times = rng.uniform(0.0, 30.0 / params.J, samples)
            analytic = loschmidt_echo(params, grid, times)
            oracle = oracle_echo_product(params, grid, times)
            worst = max(worst, float(np.max(np.abs(analytic - oracle))))
    return _suite("pair-block product", worst, PAIR_BLOCK_TOLERANCE,
                  N=n_sites, grid=convention.value, samples=samples)


def _spin_ed_suites(params: ChainParams) -> List[dict]:
    times = uniform_grid(0.0, 10.0 / params.J, 0.1 / params.J)
    evolver = SpinChainEvolver(params)
    result = evolver.evaluate(times)

    suites = []
    antiperiodic = momentum_grid(params, GridConvention.ANTI_PERIODIC)
    deviation = float(np.max(np.abs(result.value - loschmidt_echo(params, antiperiodic, times))))
    suites.append(_suite("spin-ed vs analytic[antiperiodic]", deviation, SPIN_ED_TOLERANCE,
                         N=params.N, degenerate=result.degenerate, parity_gap=result.parity_gap))

    paper = momentum_grid(params, GridConvention.PAPER_INTEGER)
    paper_curve = np.asarray(loschmidt_echo(params, paper, times))
    paper_deviation = np.abs(result.value - paper_curve)
    worst = int(np.argmax(paper_deviation))
    # 周期境界の整数格子は偶パリティ sector と一致しないので、差は報告するだけ
    suites.append(_suite("spin-ed vs analytic[paper]", float(paper_deviation[worst]), None,
                         N=params.N, at_t=float(times[worst])))

    energy_gap = abs(evolver.ground_energy - ground_state_energy(params, antiperiodic, params.lam))
    suites.append(_suite("ground-state energy", energy_gap, SPIN_ED_TOLERANCE, N=params.N))
    suites.append(_suite("unitarity", result.max_norm_deviation, UNITARITY_TOLERANCE, N=params.N))
    return suites


def oracle_check(params: ChainParams, seed: int = 0, samples: int = 100,
                 convention: GridConvention = GridConvention.PAPER_INTEGER) -> dict:
    """
    解析式を二つのオラクルと照合した報告

    - 対ブロック：単一モード因子の無作為検査と、全積の λ, δ 格子での検査
    - スピン鎖の厳密対角化（N ≤ MAX_DENSE_SITES のときのみ）
    """
    if samples < 1:
        raise SamplingError(f"oracle suites need at least 1 sample, got {samples}")
    rng = np.random.default_rng(seed)
    suites = [
        _mode_factor_suite(rng, samples),
        _pair_block_suite(params.N, rng, samples, convention),
    ]
    if params.N <= MAX_DENSE_SITES:
        suites.extend(_spin_ed_suites(params))
    else:
        logger.info("skipping spin-ed suites: N=%d exceeds %d", params.N, MAX_DENSE_SITES)

    passed = all(suite["passed"] for suite in suites)
    for suite in suites:
        logger.info("%s: max deviation %.3g (%s)", suite["name"], suite["max_deviation"],
                    "pass" if suite["passed"] else "FAIL")
    return {
        "params": params.to_dict(),
        "seed": seed,
        "suites": suites,
        "passed": passed,
    }
