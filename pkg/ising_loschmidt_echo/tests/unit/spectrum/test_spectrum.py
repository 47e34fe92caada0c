import unittest

import numpy as np

from ....model import (
    ChainParams, GridConvention, ModeData, bogoliubov_angle, dispersion, grid_modes,
    ground_state_energy, mode_data, mode_factor, momentum_grid, pair_amplitudes,
    pair_block_hamiltonian, small_momentum_energy, small_momentum_mixing,
)


class TestDispersion(unittest.TestCase):
    """準粒子エネルギー ε(k; g)"""

    def setUp(self):
        self.params = ChainParams(N=200, lam=0.9, delta=0.1)

    def test_zero_field_is_flat(self):
        """g = 0 では ε = 2J"""
        k = np.linspace(0.1, np.pi, 7)
        np.testing.assert_allclose(dispersion(k, 0.0, self.params), 2.0, rtol=1e-15)

    def test_zone_boundary_at_critical_field(self):
        self.assertAlmostEqual(dispersion(np.pi, 1.0, self.params), 4.0, places=14)

    def test_matches_pair_block_levels(self):
        """対ブロックの固有値差 = 2ε"""
        k = np.pi / 100
        levels = np.linalg.eigvalsh(pair_block_hamiltonian(k, 0.9, self.params))

        self.assertAlmostEqual(levels[1] - levels[0], 2.0 * dispersion(k, 0.9, self.params),
                               places=12)

    def test_symmetric_in_momentum(self):
        k = np.linspace(0.05, 3.0, 11)
        np.testing.assert_allclose(dispersion(k, 0.7, self.params),
                                   dispersion(-k, 0.7, self.params), rtol=0, atol=0)

    def test_gap_bound(self):
        """ε ≥ 2J|1 - g|"""
        k = np.linspace(1e-4, np.pi, 500)
        for coupling in (0.0, 0.5, 0.9, 1.0, 1.1, 2.0):
            with self.subTest(coupling=coupling):
                energies = dispersion(k, coupling, self.params)
                self.assertTrue(np.all(energies >= 2.0 * abs(1.0 - coupling) - 1e-15))

    def test_scales_with_coupling_constant(self):
        params = ChainParams(N=8, lam=0.5, delta=0.1, J=2.5)
        self.assertAlmostEqual(dispersion(np.pi / 2, 0.0, params), 5.0, places=14)


class TestBogoliubovAngle(unittest.TestCase):
    """Bogoliubov 角 θ(k; g)"""

    def setUp(self):
        self.params = ChainParams(N=200, lam=0.9, delta=0.1)

    def test_zero_field(self):
        """g = 0 では θ = -ka"""
        k = np.linspace(0.1, 3.0, 9)
        np.testing.assert_allclose(bogoliubov_angle(k, 0.0, self.params), -k, atol=1e-15)

    def test_zone_boundary_maps_to_pi(self):
        """ka = π では -π ではなく π"""
        for coupling in (0.0, 0.5, 0.9, 1.0, 1.5):
            with self.subTest(coupling=coupling):
                self.assertAlmostEqual(bogoliubov_angle(np.pi, coupling, self.params), np.pi,
                                       places=12)

    def test_range(self):
        k = np.linspace(1e-3, np.pi, 300)
        for coupling in (-0.5, 0.0, 0.9, 1.0, 2.0):
            theta = bogoliubov_angle(k, coupling, self.params)
            self.assertTrue(np.all(theta > -np.pi))
            self.assertTrue(np.all(theta <= np.pi))

    def test_small_momentum_limit(self):
        """小さな k では θ ≈ arctan(-ka/(1-g))"""
        k = np.pi / 100
        self.assertAlmostEqual(bogoliubov_angle(k, 0.9, self.params),
                               np.arctan(-k / (1.0 - 0.9)), delta=0.01)

    def test_continuous_in_field(self):
        """0 < ka < π の格子点では g について連続"""
        k = momentum_grid(self.params).values[:-1]
        couplings = np.linspace(0.0, 2.0, 2001)
        angles = np.array([bogoliubov_angle(k, g, self.params) for g in couplings])
        self.assertLess(np.max(np.abs(np.diff(angles, axis=0))), 0.1)

    def test_pair_amplitudes_normalised(self):
        theta = bogoliubov_angle(np.linspace(0.1, 3.0, 5), 0.7, self.params)
        u, v = pair_amplitudes(theta)
        np.testing.assert_allclose(u ** 2 + v ** 2, 1.0, rtol=1e-15)


class TestModeData(unittest.TestCase):
    """モードごとの導出量"""

    def test_no_perturbation_gives_zero_mixing(self):
        """δ = 0 ならビット単位で 0"""
        params = ChainParams(N=200, lam=0.9, delta=0.0)
        modes = grid_modes(params, momentum_grid(params))

        self.assertTrue(np.all(modes.alpha == 0.0))
        self.assertTrue(np.all(modes.sin2_2alpha == 0.0))

    def test_zone_boundary_has_no_mixing(self):
        mode = mode_data(np.pi, ChainParams(N=200, lam=0.9, delta=0.1))
        self.assertAlmostEqual(mode.alpha, 0.0, places=12)

    def test_scalar_and_array_forms(self):
        params = ChainParams(N=8, lam=0.5, delta=0.1)
        scalar = mode_data(0.3, params)
        array = mode_data(np.array([0.3, 0.6]), params)

        self.assertIsInstance(scalar.eps_e, float)
        self.assertEqual(array.eps_e.shape, (2,))
        self.assertAlmostEqual(array.sin2_2alpha[0], scalar.sin2_2alpha, places=15)

    def test_field_invariants(self):
        for lam in (0.0, 0.5, 0.9, 1.0, 1.5):
            params = ChainParams(N=50, lam=lam, delta=0.1)
            modes = grid_modes(params, momentum_grid(params, GridConvention.ANTI_PERIODIC))
            with self.subTest(lam=lam):
                self.assertTrue(np.all(modes.eps_g >= 0.0))
                self.assertTrue(np.all(modes.eps_e >= 0.0))
                self.assertTrue(np.all((modes.sin2_2alpha >= 0.0) & (modes.sin2_2alpha <= 1.0)))

    def test_branch_independent_mixing(self):
        """sin²(2α) = 1 - (cosθ_g cosθ_e + sinθ_g sinθ_e)²"""
        for lam, delta in ((0.5, 0.1), (0.9, 0.1), (1.0, 0.01), (1.5, -0.2)):
            params = ChainParams(N=200, lam=lam, delta=delta)
            modes = grid_modes(params, momentum_grid(params))
            overlap = (np.cos(modes.theta_g) * np.cos(modes.theta_e)
                       + np.sin(modes.theta_g) * np.sin(modes.theta_e))
            with self.subTest(lam=lam, delta=delta):
                np.testing.assert_allclose(modes.sin2_2alpha, 1.0 - overlap ** 2, atol=1e-12)

    def test_small_momentum_mixing_approximant(self):
        """先頭次では (δka)²/[(1-λ)²(1-λ-δ)²]"""
        params = ChainParams(N=200, lam=0.5, delta=0.1)
        k = 2 * np.pi / 200
        exact = mode_data(k, params).sin2_2alpha

        self.assertAlmostEqual(exact / small_momentum_mixing(k, params), 1.0, delta=0.01)

    def test_small_momentum_mixing_diverges_when_excited_branch_is_critical(self):
        """λ + δ = 1 では近似式が発散し、厳密値は有限のまま"""
        params = ChainParams(N=200, lam=0.9, delta=0.1)
        k = 2 * np.pi / 200

        self.assertEqual(small_momentum_mixing(k, params), np.inf)
        self.assertLessEqual(mode_data(k, params).sin2_2alpha, 1.0)

    def test_small_momentum_energy(self):
        params = ChainParams(N=2000, lam=0.5, delta=0.1)
        k = 2 * np.pi / 2000

        self.assertAlmostEqual(small_momentum_energy(params), 0.8, places=14)
        self.assertAlmostEqual(mode_data(k, params).eps_e, 0.8, delta=1e-3)


class TestModeFactor(unittest.TestCase):
    """単一モードのエコー因子 F_k(t)"""

    def test_unmixed_mode(self):
        mode = mode_data(0.4, ChainParams(N=8, lam=0.5, delta=0.0))
        for t in (0.0, 1.0, 17.3):
            self.assertEqual(mode_factor(mode, t), 1.0)

    def test_full_suppression(self):
        mode = ModeData(k=1.0, theta_g=0.0, theta_e=0.0, eps_g=1.0, eps_e=1.0,
                        alpha=np.pi / 4, sin2_2alpha=1.0)
        self.assertAlmostEqual(mode_factor(mode, np.pi / 2), 0.0, places=15)

    def test_bounds_and_initial_value(self):
        """1 - sin²(2α) ≤ F_k ≤ 1、F_k(0) = 1"""
        params = ChainParams(N=200, lam=0.9, delta=0.1)
        modes = grid_modes(params, momentum_grid(params))
        times = np.linspace(0.0, 30.0, 61)
        factors = np.array([mode_factor(modes, t) for t in times])

        self.assertTrue(np.all(factors[0] == 1.0))
        self.assertTrue(np.all(factors <= 1.0))
        self.assertTrue(np.all(factors >= 1.0 - modes.sin2_2alpha - 1e-15))

    def test_even_in_time(self):
        mode = mode_data(np.pi / 3, ChainParams(N=8, lam=0.7, delta=0.2))
        self.assertAlmostEqual(mode_factor(mode, 2.3), mode_factor(mode, -2.3), places=15)


class TestGroundStateEnergy(unittest.TestCase):
    """対の真空のエネルギー -Σ ε"""

    def test_golden_values(self):
        expected = {
            (4, 0.0): -4.0,
            (4, 0.9): -4.97746561145496,
            (4, 1.0): -5.22625185950551,
            (8, 0.0): -8.0,
            (8, 0.9): -9.77328765801598,
            (8, 1.0): -10.251661790966,
        }
        for (n_sites, coupling), energy in expected.items():
            params = ChainParams(N=n_sites, lam=coupling, delta=0.1)
            grid = momentum_grid(params, GridConvention.ANTI_PERIODIC)
            with self.subTest(N=n_sites, g=coupling):
                self.assertAlmostEqual(ground_state_energy(params, grid, coupling), energy,
                                       places=10)


if __name__ == '__main__':
    unittest.main()
