import math
from typing import Optional

import numpy as np

from ..errors import CutoffError
from .chain_params import ChainParams
from .spectrum import ArrayLike


def nearest_cutoff_index(params: ChainParams, k_cutoff: float) -> int:
    """N_c：N K_c a / 2π に最も近い整数（半整数は切り上げ）"""
    return int(math.floor(params.N * k_cutoff * params.a / (2.0 * math.pi) + 0.5))


def cutoff_energy_sum(n_cutoff: int, n_sites: int) -> float:
    """E(K_c) = 4π² N_c(N_c+1)(2N_c+1) / (6N²)"""
    return 4.0 * math.pi ** 2 * n_cutoff * (n_cutoff + 1) * (2 * n_cutoff + 1) / (6.0 * n_sites ** 2)


class ShortTimeModel:
    """
    カットオフ K_c 以下のモードによる短時間ガウス近似 L_c ≈ exp(-γt²)
    γ = 4J²δ²E(K_c)/(1-λ)²

    λ = 1 では (1-λ)² が消えて γ は定義されない。その場合 gamma は None で
    is_singular が True になる（数値の無限大は出さない）。
    """

    def __init__(self, params: ChainParams, k_cutoff: float):
        k_cutoff = float(k_cutoff)
        zone_edge = math.pi / params.a
        if not (math.isfinite(k_cutoff) and 0.0 < k_cutoff <= zone_edge * (1.0 + 1e-12)):
            raise CutoffError(f"K_c must lie in (0, pi/a] = (0, {zone_edge:.6g}], got {k_cutoff!r}")
        n_cutoff = nearest_cutoff_index(params, k_cutoff)
        if n_cutoff < 1:
            raise CutoffError(
                f"K_c={k_cutoff:.6g} contains no mode: needs K_c >= pi/(Na) = "
                f"{math.pi / (params.N * params.a):.6g}"
            )
        self._params = params
        self._k_cutoff = k_cutoff
        self._n_cutoff = n_cutoff
        self._energy_sum = cutoff_energy_sum(self._n_cutoff, params.N)

        if params.delta == 0.0:
            # 摂動がなければ減衰もない（λ = 1 でも）
            self._gamma: Optional[float] = 0.0
        elif params.lam == 1.0:
            self._gamma = None
        else:
            self._gamma = (4.0 * params.J ** 2 * params.delta ** 2 * self._energy_sum
                           / (1.0 - params.lam) ** 2)

    @property
    def params(self) -> ChainParams:
        return self._params

    @property
    def k_cutoff(self) -> float:
        return self._k_cutoff

    @property
    def n_cutoff(self) -> int:
        return self._n_cutoff

    @property
    def energy_sum(self) -> float:
        return self._energy_sum

    @property
    def gamma(self) -> Optional[float]:
        return self._gamma

    @property
    def is_singular(self) -> bool:
        return self._gamma is None

    def gaussian(self, t: ArrayLike) -> ArrayLike:
        """exp(-γt²)。特異点では γ → ∞ の極限（t = 0 で 1、それ以外 0）"""
        t = np.asarray(t, dtype=float)
        if self._gamma is None:
            return np.where(t == 0.0, 1.0, 0.0)[()]
        return np.exp(-self._gamma * t ** 2)[()]

    def partial_sum_approximation(self, t: ArrayLike) -> ArrayLike:
        """
        小さな K_c での S(λ,t) ≈ -δ²E(K_c) sin²(2Jt|1-λ-δ|) / [(1-λ)²(1-λ-δ)²]

        λ + δ = 1 では sin²(2Jtx)/x² → (2Jt)² の極限を使う
        """
        params = self._params
        t = np.asarray(t, dtype=float)
        if params.delta == 0.0:
            return np.zeros_like(t)[()]
        if self.is_singular:
            return np.where(t == 0.0, 0.0, -np.inf)[()]
        gap = abs(1.0 - params.excited_coupling)
        if gap == 0.0:
            oscillation = (2.0 * params.J * t) ** 2
        else:
            oscillation = np.sin(2.0 * params.J * t * gap) ** 2 / gap ** 2
        return (-params.delta ** 2 * self._energy_sum * oscillation
                / (1.0 - params.lam) ** 2)[()]


def short_time_model(params: ChainParams, k_cutoff: float) -> ShortTimeModel:
    return ShortTimeModel(params, k_cutoff)
