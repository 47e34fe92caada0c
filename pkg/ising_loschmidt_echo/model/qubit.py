import numpy as np

from ..errors import EchoRangeError, QubitStateError

NORMALIZATION_TOLERANCE = 1e-12
ECHO_TOLERANCE = 1e-12


class QubitState:
    """
    中心二準位系の初期状態 c_g|g⟩ + c_e|e⟩
    """

    def __init__(self, c_g: complex, c_e: complex):
        norm = abs(c_g) ** 2 + abs(c_e) ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
            raise QubitStateError(
                f"|c_g|^2 + |c_e|^2 must equal 1 within {NORMALIZATION_TOLERANCE}, got {norm!r}"
            )
        self._c_g = complex(c_g)
        self._c_e = complex(c_e)

    @classmethod
    def equal_superposition(cls) -> "QubitState":
        """(|g⟩ + |e⟩)/√2：純度が最も下がる初期状態"""
        amplitude = np.sqrt(0.5)
        return cls(amplitude, amplitude)

    @property
    def c_g(self) -> complex:
        return self._c_g

    @property
    def c_e(self) -> complex:
        return self._c_e

    def coherence(self, echo: float) -> float:
        """縮約密度行列の非対角成分の大きさ |c_g c_e| √L"""
        return abs(self._c_g) * abs(self._c_e) * np.sqrt(_checked_echo(echo))

    def reduced_density_matrix(self, echo: float) -> np.ndarray:
        """
        環境をトレースアウトした 2×2 密度行列（基底 |g⟩, |e⟩）

        重なり ⟨φ_g|φ_e⟩ の位相は計算しないので、非対角成分は実数の大きさで置く
        """
        off_diagonal = self.coherence(echo)
        return np.array([
            [abs(self._c_g) ** 2, off_diagonal],
            [off_diagonal, abs(self._c_e) ** 2],
        ], dtype=complex)


def _checked_echo(echo: float) -> float:
    if not (-ECHO_TOLERANCE <= echo <= 1.0 + ECHO_TOLERANCE):
        raise EchoRangeError(f"echo must lie in [0, 1], got {echo!r}")
    return min(max(float(echo), 0.0), 1.0)


def purity_from_echo(state: QubitState, echo: float) -> float:
    """
    純度 P = 1 - 2|c_e c_g|² (1 - L)

    L について増加する一次関数で、1 - 2|c_e c_g|² ≤ P ≤ 1
    """
    weight = 2.0 * (abs(state.c_e) * abs(state.c_g)) ** 2
    return 1.0 - weight * (1.0 - _checked_echo(echo))
