import math
from enum import Enum
from typing import Optional

import numpy as np

from ..errors import ChainParameterError


class GridConvention(Enum):
    """
    運動量の量子化規則
    PAPER_INTEGER は k = 2πn/(Na)、ANTI_PERIODIC は偶パリティ sector の k = (2n-1)π/(Na)
    """
    PAPER_INTEGER = "paper"
    ANTI_PERIODIC = "antiperiodic"


class ChainParams:
    """
    横磁場イジング鎖と中心二準位系の結合パラメータ
    H(λ, δ) = -J Σ (σ^z_j σ^z_{j+1} + λ σ^x_j + δ|e⟩⟨e| σ^x_j)
    """

    def __init__(self, N: int, lam: float, delta: float, J: float = 1.0, a: float = 1.0):
        if isinstance(N, bool) or int(N) != N:
            raise ChainParameterError(f"N must be an integer, got {N!r}")
        N = int(N)
        if N < 4 or N % 2 != 0:
            # (k, -k) の対で積を取るため偶数サイトが必要
            raise ChainParameterError(
                f"N must be even and >= 4 so that modes pair as (k, -k), got N={N}"
            )
        if not (math.isfinite(J) and J > 0):
            raise ChainParameterError(f"J must be finite and > 0, got J={J}")
        if not (math.isfinite(a) and a > 0):
            raise ChainParameterError(f"a must be finite and > 0, got a={a}")
        if not math.isfinite(lam):
            raise ChainParameterError(f"lambda must be finite, got {lam}")
        if not math.isfinite(delta):
            raise ChainParameterError(f"delta must be finite, got {delta}")

        self._N = N
        self._lam = float(lam)
        self._delta = float(delta)
        self._J = float(J)
        self._a = float(a)

    @property
    def N(self) -> int:
        return self._N

    @property
    def lam(self) -> float:
        return self._lam

    @property
    def delta(self) -> float:
        return self._delta

    @property
    def J(self) -> float:
        return self._J

    @property
    def a(self) -> float:
        return self._a

    @property
    def excited_coupling(self) -> float:
        """|e⟩ 分岐の実効横磁場 λ + δ"""
        return self._lam + self._delta

    def with_changes(self, **changes) -> "ChainParams":
        """一部のフィールドだけ差し替えた新しいパラメータを返す"""
        fields = self.to_dict()
        fields.update(changes)
        return ChainParams(**fields)

    def to_dict(self) -> dict:
        return {"N": self._N, "lam": self._lam, "delta": self._delta, "J": self._J, "a": self._a}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainParams):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(tuple(self.to_dict().values()))

    def __repr__(self) -> str:
        return (f"ChainParams(N={self._N}, lam={self._lam!r}, delta={self._delta!r}, "
                f"J={self._J!r}, a={self._a!r})")


class MomentumGrid:
    """正の運動量 k の格子（昇順、(0, π/a] 内）"""

    def __init__(self, values, convention: GridConvention):
        values = np.array(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ChainParameterError("momentum grid must be a non-empty 1-D array")
        if np.any(values <= 0.0):
            # k = 0 はどちらの規則にも含まれない
            raise ChainParameterError("momentum grid must contain only k > 0")
        if np.any(np.diff(values) <= 0.0):
            raise ChainParameterError("momentum grid must be strictly increasing")
        values.setflags(write=False)
        self._values = values
        self._convention = convention

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def convention(self) -> GridConvention:
        return self._convention

    def __len__(self) -> int:
        return self._values.size

    def __iter__(self):
        return iter(self._values.tolist())

    def restricted_to(self, k_cutoff: float) -> Optional["MomentumGrid"]:
        """k ≤ K_c のモードだけを残した格子（空なら None）"""
        # 格子点と K_c の丸め差を吸収する
        kept = self._values[self._values <= k_cutoff * (1.0 + 1e-12)]
        if kept.size == 0:
            return None
        return MomentumGrid(kept, self._convention)


def uniform_grid(start: float, stop: float, step: float) -> np.ndarray:
    """
    start から stop までの等間隔格子 start + i*step
    stop は丸め誤差の範囲で含める
    """
    if not step > 0:
        raise ChainParameterError(f"grid step must be > 0, got {step!r}")
    if stop < start:
        raise ChainParameterError(f"grid stop {stop!r} lies below start {start!r}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count, dtype=float)
