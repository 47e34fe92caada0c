from .chain_params import ChainParams, GridConvention, MomentumGrid, uniform_grid
from .spectrum import (
    ModeData, bogoliubov_angle, dispersion, grid_modes, ground_state_energy, mode_data,
    mode_factor, momentum_grid, pair_amplitudes, small_momentum_energy, small_momentum_mixing,
)
from .qubit import QubitState, purity_from_echo
from .echo import (
    AnalyticEcho, EchoCurve, echo_curve, find_revival_times, initial_decay_end,
    log_loschmidt_echo, loschmidt_echo, partial_echo, partial_log_echo,
    quadratic_decay_coefficient, scaling_compare,
)
from .short_time import ShortTimeModel, cutoff_energy_sum, nearest_cutoff_index, short_time_model
from .pair_block import (
    PairBlock, PairBlockOracle, evolve_pair_state, oracle_echo_product, pair_block_echo_factor,
    pair_block_hamiltonian,
)
from .spin_chain import (
    QubitBranch, SpinChainEvolver, SpinChainState, SpinEchoResult, echo_from_states, spin_ed_echo,
    spin_hamiltonian_dense,
)
from .echo_evaluator import EchoEvaluator, max_echo_deviation

__all__ = [
    'ChainParams', 'GridConvention', 'MomentumGrid', 'uniform_grid',
    'ModeData', 'bogoliubov_angle', 'dispersion', 'grid_modes', 'ground_state_energy',
    'mode_data', 'mode_factor', 'momentum_grid', 'pair_amplitudes', 'small_momentum_energy',
    'small_momentum_mixing',
    'QubitState', 'purity_from_echo',
    'AnalyticEcho', 'EchoCurve', 'echo_curve', 'find_revival_times', 'initial_decay_end',
    'log_loschmidt_echo', 'loschmidt_echo', 'partial_echo', 'partial_log_echo',
    'quadratic_decay_coefficient', 'scaling_compare',
    'ShortTimeModel', 'cutoff_energy_sum', 'nearest_cutoff_index', 'short_time_model',
    'PairBlock', 'PairBlockOracle', 'evolve_pair_state', 'oracle_echo_product',
    'pair_block_echo_factor', 'pair_block_hamiltonian',
    'QubitBranch', 'SpinChainEvolver', 'SpinChainState', 'SpinEchoResult', 'echo_from_states',
    'spin_ed_echo', 'spin_hamiltonian_dense',
    'EchoEvaluator', 'max_echo_deviation',
]
