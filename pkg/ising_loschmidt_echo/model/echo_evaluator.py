from typing import Protocol

import numpy as np

from .spectrum import ArrayLike


class EchoEvaluator(Protocol):
    """
    エコー L(t) を評価するもののインターフェース

    解析式（AnalyticEcho）、対ブロックのオラクル（PairBlockOracle）、
    スピン鎖の厳密対角化（SpinChainEvolver）が実装する共通インターフェース。
    検査側はこのインターフェースだけを通じて比較する。
    """

    @property
    def label(self) -> str:
        """
        レポートに出す評価方法の名前

        Returns:
            例: "analytic[antiperiodic]", "spin-ed"
        """
        ...

    def echo(self, t: ArrayLike) -> ArrayLike:
        """
        時刻 t（スカラーまたは配列）でのエコー

        Returns:
            t と同じ形の [0, 1] の値
        """
        ...


def max_echo_deviation(first: EchoEvaluator, second: EchoEvaluator, times) -> float:
    """同じ時刻列での二つの評価の差の最大値"""
    times = np.asarray(times, dtype=float)
    return float(np.max(np.abs(np.asarray(first.echo(times)) - np.asarray(second.echo(times)))))
