class EchoSimulationError(ValueError):
    """シミュレータ全体の基底例外"""


class ChainParameterError(EchoSimulationError):
    """鎖のパラメータが不変条件を満たさない"""


class QubitStateError(EchoSimulationError):
    """中心量子ビットの状態が正規化されていない"""


class EchoRangeError(EchoSimulationError):
    """エコー値が [0, 1] の外にある"""


class SamplingError(EchoSimulationError):
    """時間格子が解析に対して粗すぎる、または不正"""


class ScalingError(EchoSimulationError):
    """スケーリング変換が整数・偶数のサイトに写らない"""


class SystemSizeError(EchoSimulationError):
    """密行列対角化の上限を超えるサイト数"""


class ConfigError(EchoSimulationError):
    """設定ファイルまたはフラグの内容が不正"""


class ValleyCoverageError(EchoSimulationError):
    """掃引の λ 範囲が谷の探索区間を含まない"""


class CutoffError(EchoSimulationError):
    """カットオフ K_c が (0, π/a] の外、または一つのモードも含まない"""
