import logging

import numpy as np

logger = logging.getLogger(__name__)


class SweepProgress:
    """
    掃引の進捗
    λ 行が結果に置かれるたびに登録された観察者へ通知する
    """

    def __init__(self):
        self._observers = []
        self._rows_done = 0

    @property
    def rows_done(self) -> int:
        return self._rows_done

    def register_observer(self, observer):
        """観察者を登録（on_row_completed(index, lam, row, total) を持つもの）"""
        if observer not in self._observers:
            self._observers.append(observer)

    def row_completed(self, index: int, lam: float, row: np.ndarray, total: int):
        self._rows_done += 1
        for observer in self._observers:
            observer.on_row_completed(index, lam, row, total)


class LoggingObserver:
    """行ごとの最小エコーをログに出す"""

    def __init__(self, level: int = logging.INFO):
        self._level = level

    def on_row_completed(self, index: int, lam: float, row: np.ndarray, total: int):
        logger.log(self._level, "row %d/%d lambda=%.6g min L=%.6g",
                   index + 1, total, lam, float(np.min(row)))
