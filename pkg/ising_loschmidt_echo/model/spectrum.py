"""
自由フェルミオン化した横磁場イジング鎖のモード別スペクトル

Jordan-Wigner 変換と Fourier 変換の結果だけを、スカラー量（角度 θ、準粒子エネルギー ε、
混合角 α_k、単一モード因子 F_k）として扱う。演算子そのものはデータとして持たない。
エネルギーは J 単位、時間は 1/J 単位。
"""
from typing import NamedTuple, Tuple, Union

import numpy as np

from .chain_params import ChainParams, GridConvention, MomentumGrid

ArrayLike = Union[float, np.ndarray]


class ModeData(NamedTuple):
    """
    運動量 k ごとの導出量
    k が配列なら各フィールドも同じ形の配列になる
    """
    k: ArrayLike
    theta_g: ArrayLike      # θ(k; λ)
    theta_e: ArrayLike      # θ(k; λ+δ)
    eps_g: ArrayLike        # ε(k; λ)
    eps_e: ArrayLike        # ε(k; λ+δ)
    alpha: ArrayLike        # α_k = (θ_g - θ_e)/2
    sin2_2alpha: ArrayLike  # sin²(2α_k)


def momentum_grid(params: ChainParams,
                  convention: GridConvention = GridConvention.PAPER_INTEGER) -> MomentumGrid:
    """
    N/2 個の正の運動量を返す

    PAPER_INTEGER: k = 2πn/(Na), n = 1..N/2
    ANTI_PERIODIC: k = (2n-1)π/(Na), n = 1..N/2
    """
    # N の偶奇は ChainParams の生成時に検査済み
    n = np.arange(1, params.N // 2 + 1, dtype=float)
    if convention is GridConvention.PAPER_INTEGER:
        values = 2.0 * np.pi * n / (params.N * params.a)
    elif convention is GridConvention.ANTI_PERIODIC:
        values = (2.0 * n - 1.0) * np.pi / (params.N * params.a)
    else:
        raise TypeError(f"unknown grid convention: {convention!r}")
    return MomentumGrid(values, convention)


def dispersion(k: ArrayLike, coupling: float, params: ChainParams) -> ArrayLike:
    """
    準粒子エネルギー ε(k; g) = 2J sqrt(1 + g² - 2g cos(ka))

    (g - cos ka)² + sin² ka と同値な hypot 形で評価し、臨界点近傍の桁落ちを避ける
    """
    ka = np.asarray(k, dtype=float) * params.a
    return 2.0 * params.J * np.hypot(coupling - np.cos(ka), np.sin(ka))


def bogoliubov_angle(k: ArrayLike, coupling: float, params: ChainParams) -> ArrayLike:
    """
    Bogoliubov 角 θ(k; g)、tanθ = -sin(ka)/(cos(ka) - g)

    二引数の arctan で四象限を区別し、値域は (-π, π]。
    物理量は sin²(2α_k) だけなので、θ_g と θ_e に同じ枝を使えばよい。
    k = 0 は格子に含まれないため |g| = 1 の特異点は現れない。
    """
    ka = np.asarray(k, dtype=float) * params.a
    theta = np.arctan2(-np.sin(ka), np.cos(ka) - coupling)
    # ka = π では sin(ka) が -0 側に丸まり -π が出るので π に寄せる
    return np.where(theta <= -np.pi, theta + 2.0 * np.pi, theta)[()]


def pair_amplitudes(theta: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """BCS 係数 (u, v) = (cos(θ/2), sin(θ/2))"""
    half = 0.5 * np.asarray(theta, dtype=float)
    return np.cos(half)[()], np.sin(half)[()]


def mode_data(k: ArrayLike, params: ChainParams) -> ModeData:
    """k（スカラーまたは配列）に対する θ_g, θ_e, ε_g, ε_e, α_k, sin²(2α_k) をまとめる"""
    theta_g = bogoliubov_angle(k, params.lam, params)
    theta_e = bogoliubov_angle(k, params.excited_coupling, params)
    alpha = 0.5 * (theta_g - theta_e)
    return ModeData(
        k=np.asarray(k, dtype=float)[()],
        theta_g=theta_g,
        theta_e=theta_e,
        eps_g=dispersion(k, params.lam, params),
        eps_e=dispersion(k, params.excited_coupling, params),
        alpha=alpha,
        # δ = 0 なら θ_g と θ_e は同一計算なので厳密に 0
        sin2_2alpha=np.sin(2.0 * alpha) ** 2,
    )


def grid_modes(params: ChainParams, grid: MomentumGrid) -> ModeData:
    return mode_data(grid.values, params)


def mode_factor(mode: ModeData, t: ArrayLike) -> ArrayLike:
    """単一モードのエコー因子 F_k(t) = 1 - sin²(2α_k) sin²(ε_e t)"""
    phase = np.sin(mode.eps_e * np.asarray(t, dtype=float))
    return (1.0 - mode.sin2_2alpha * phase ** 2)[()]


def ground_state_energy(params: ChainParams, grid: MomentumGrid, coupling: float) -> float:
    """対の真空の基底エネルギー -Σ_{k>0} ε(k; g)"""
    return -float(np.sum(dispersion(grid.values, coupling, params)))


def small_momentum_mixing(k: ArrayLike, params: ChainParams) -> ArrayLike:
    """
    小さな k での近似 sin²(2α_k) ≈ (δka)² / [(1-λ)²(1-λ-δ)²]

    λ = 1 または λ + δ = 1 では発散する（inf を返す）
    """
    ka = np.asarray(k, dtype=float) * params.a
    denominator = (1.0 - params.lam) ** 2 * (1.0 - params.excited_coupling) ** 2
    with np.errstate(divide="ignore"):
        return np.divide((params.delta * ka) ** 2, denominator)[()]


def small_momentum_energy(params: ChainParams) -> float:
    """小さな k での ε_e ≈ 2J|1 - λ - δ|"""
    return 2.0 * params.J * abs(1.0 - params.excited_coupling)
