"""
運動量対 (k, -k) ごとの 2×2 ブロックによるオラクル

偶パリティの対基底 {真空, 対励起} で h = 2J[(g - cos ka) Z + sin ka X] を組み、
基底状態を数値対角化で求めてから閉形式の回転で時間発展させる。
角度の枝の取り方に依存しないので、解析式 F_k の独立な検査になる。
"""
import numpy as np

from .chain_params import ChainParams, GridConvention, MomentumGrid
from .spectrum import ArrayLike, momentum_grid

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def pair_block_hamiltonian(k: float, coupling: float, params: ChainParams) -> np.ndarray:
    """h(k; g) = 2J[(g - cos ka) Z + sin ka X]、固有値は ±ε(k; g)"""
    ka = k * params.a
    return 2.0 * params.J * ((coupling - np.cos(ka)) * PAULI_Z + np.sin(ka) * PAULI_X)


class PairBlock:
    """結合 λ と λ+δ での対ブロックのハミルトニアン"""

    def __init__(self, k: float, params: ChainParams):
        self._k = float(k)
        self._h_g = pair_block_hamiltonian(k, params.lam, params)
        self._h_e = pair_block_hamiltonian(k, params.excited_coupling, params)

    @property
    def k(self) -> float:
        return self._k

    @property
    def h_g(self) -> np.ndarray:
        return self._h_g

    @property
    def h_e(self) -> np.ndarray:
        return self._h_e

    def ground_state(self) -> np.ndarray:
        """h_g の最低固有ベクトル"""
        _, vectors = np.linalg.eigh(self._h_g)
        return vectors[:, 0].astype(complex)


def _level(h: np.ndarray) -> float:
    # トレースレスな実対称 2×2 の正の固有値
    return float(np.hypot(h[0, 0], h[0, 1]))


def evolve_pair_state(h: np.ndarray, state: np.ndarray, t: ArrayLike) -> np.ndarray:
    """
    exp(-iht)|ψ⟩ = cos(εt)|ψ⟩ - i sin(εt)/ε h|ψ⟩

    h² = ε² のため行列指数関数を使わずに閉形式で書ける。
    t が配列なら戻り値は (len(t), 2)。
    """
    t = np.asarray(t, dtype=float)
    level = _level(h)
    # sin(εt)/ε = t sinc(εt/π)、ε = 0 でも有限
    rotation = t * np.sinc(level * t / np.pi)
    return (np.multiply.outer(np.cos(level * t), state)
            - 1j * np.multiply.outer(rotation, h @ state))


def pair_block_echo_factor(block: PairBlock, t: ArrayLike) -> ArrayLike:
    """
    |⟨g| exp(+i h_g t) exp(-i h_e t) |g⟩|²

    |g⟩ は h_g の固有状態なので h_g での発展は位相だけだが、定義どおり両分岐とも発展させる
    """
    ground = block.ground_state()
    branch_g = evolve_pair_state(block.h_g, ground, t)
    branch_e = evolve_pair_state(block.h_e, ground, t)
    overlap = np.sum(np.conj(branch_g) * branch_e, axis=-1)
    return (np.abs(overlap) ** 2)[()]


def oracle_echo_product(params: ChainParams, grid: MomentumGrid, t: ArrayLike) -> ArrayLike:
    """全モードの対ブロック因子の積（対数領域で累積）"""
    log_total = np.zeros_like(np.asarray(t, dtype=float))
    for k in grid:
        factor = pair_block_echo_factor(PairBlock(k, params), t)
        with np.errstate(divide="ignore"):
            log_total = log_total + np.log(factor)
    return np.exp(log_total)[()]


class PairBlockOracle:
    """対ブロックの直接時間発展によるエコー評価（EchoEvaluator の実装）"""

    def __init__(self, params: ChainParams, convention: GridConvention = GridConvention.PAPER_INTEGER):
        self._params = params
        self._grid = momentum_grid(params, convention)

    @property
    def label(self) -> str:
        return f"pair-block[{self._grid.convention.value}]"

    def echo(self, t: ArrayLike) -> ArrayLike:
        return oracle_echo_product(self._params, self._grid, t)
