import unittest

import numpy as np

from ....errors import SystemSizeError
from ....model import (
    ChainParams, GridConvention, QubitBranch, SpinChainEvolver, echo_from_states,
    ground_state_energy, loschmidt_echo, momentum_grid, spin_ed_echo, spin_hamiltonian_dense,
    uniform_grid,
)


class TestSpinHamiltonian(unittest.TestCase):
    """σ^z 基底の密行列 H(g)"""

    def test_ferromagnet_ground_energy(self):
        """g = 0 では N 本の結合がすべて揃って -N J"""
        params = ChainParams(N=4, lam=0.0, delta=0.1)
        energies = np.linalg.eigvalsh(spin_hamiltonian_dense(params, 0.0))

        self.assertAlmostEqual(energies[0], -4.0, places=12)
        self.assertAlmostEqual(energies[1], -4.0, places=12)

    def test_paramagnetic_limit(self):
        params = ChainParams(N=4, lam=100.0, delta=0.1)
        ground = np.linalg.eigvalsh(spin_hamiltonian_dense(params, 100.0))[0]

        self.assertAlmostEqual(ground / (-4 * 100.0), 1.0, delta=1e-3)

    def test_golden_ground_energy(self):
        params = ChainParams(N=8, lam=0.9, delta=0.1)
        ground = np.linalg.eigvalsh(spin_hamiltonian_dense(params, 0.9))[0]

        self.assertAlmostEqual(ground, -9.77328765801598, places=9)

    def test_real_symmetric(self):
        params = ChainParams(N=6, lam=0.7, delta=0.1, J=1.3)
        hamiltonian = spin_hamiltonian_dense(params, 0.7)

        self.assertEqual(hamiltonian.shape, (64, 64))
        self.assertTrue(np.isrealobj(hamiltonian))
        np.testing.assert_array_equal(hamiltonian, hamiltonian.T)

    def test_size_bound(self):
        with self.assertRaises(SystemSizeError) as context:
            spin_hamiltonian_dense(ChainParams(N=16, lam=0.9, delta=0.1), 0.9)
        self.assertIn("14", str(context.exception))


class TestSpinChainEcho(unittest.TestCase):
    """厳密対角化によるエコー"""

    def setUp(self):
        self.params = ChainParams(N=8, lam=0.9, delta=0.1)
        self.evolver = SpinChainEvolver(self.params)

    def test_no_perturbation(self):
        result = spin_ed_echo(self.params.with_changes(delta=0.0), np.linspace(0.0, 10.0, 21))
        np.testing.assert_allclose(result.value, 1.0, atol=1e-12)

    def test_initial_value(self):
        self.assertAlmostEqual(self.evolver.echo(0.0), 1.0, places=12)

    def test_matches_antiperiodic_product(self):
        """偶パリティ sector は反周期境界の積と一致"""
        times = uniform_grid(0.0, 10.0, 0.1)
        grid = momentum_grid(self.params, GridConvention.ANTI_PERIODIC)
        deviation = np.max(np.abs(self.evolver.echo(times) - loschmidt_echo(self.params, grid, times)))

        self.assertLess(deviation, 1e-8)

    def test_integer_grid_deviation_is_reported_value(self):
        """整数格子との差は消えない（N = 8 で約 0.0706、t = 2.1）"""
        times = uniform_grid(0.0, 10.0, 0.1)
        deviation = np.abs(self.evolver.echo(times)
                           - loschmidt_echo(self.params, momentum_grid(self.params), times))

        self.assertAlmostEqual(np.max(deviation), 0.0706, delta=5e-4)
        self.assertAlmostEqual(times[np.argmax(deviation)], 2.1, places=9)

    def test_ground_energy_matches_fermion_vacuum(self):
        grid = momentum_grid(self.params, GridConvention.ANTI_PERIODIC)
        self.assertAlmostEqual(self.evolver.ground_energy,
                               ground_state_energy(self.params, grid, self.params.lam), places=10)

    def test_unitarity(self):
        result = self.evolver.evaluate(np.linspace(0.0, 30.0, 61))

        self.assertLess(result.max_norm_deviation, 1e-10)
        self.assertFalse(result.degenerate)

    def test_global_phase_does_not_change_echo(self):
        branch_g = self.evolver.evolve(QubitBranch.GROUND, 3.7)
        branch_e = self.evolver.evolve(QubitBranch.EXCITED, 3.7)
        reference = echo_from_states(branch_g, branch_e)

        self.assertAlmostEqual(echo_from_states(branch_g.with_phase(0.9), branch_e), reference,
                               places=14)
        self.assertAlmostEqual(echo_from_states(branch_g, branch_e.with_phase(-2.1)), reference,
                               places=14)

    def test_ground_branch_only_acquires_phase(self):
        ground = self.evolver.ground_state()
        evolved = self.evolver.evolve(QubitBranch.GROUND, 5.0)

        self.assertEqual(ground.dim, 256)
        self.assertAlmostEqual(abs(ground.overlap(evolved)), 1.0, places=12)

    def test_ground_state_is_spin_flip_symmetric(self):
        amplitudes = self.evolver.ground_state().amplitudes
        flipped = amplitudes[np.arange(256) ^ 255]

        np.testing.assert_allclose(flipped, amplitudes, atol=1e-14)

    def test_degenerate_ferromagnet_is_flagged(self):
        """λ = 0 の二重縮退は警告付きで対称な組み合わせを選ぶ"""
        with self.assertLogs("ising_loschmidt_echo.model.spin_chain", level="WARNING"):
            result = spin_ed_echo(ChainParams(N=4, lam=0.0, delta=0.1), np.array([0.0, 1.0]))

        self.assertTrue(result.degenerate)
        self.assertAlmostEqual(result.value[0], 1.0, places=12)
        self.assertTrue(0.0 <= result.value[1] <= 1.0 + 1e-12)

    def test_label(self):
        self.assertEqual(self.evolver.label, "spin-ed")


if __name__ == '__main__':
    unittest.main()
