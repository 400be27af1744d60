import unittest
import numpy as np
from kraupy.channel import (DensityMatrix, KrausChannel, apply_channel,
                            complementary_apply, unitary_channel,
                            pauli_channel)
from kraupy.correction import (DilationIsometry, dilate, correction_fidelity,
                               haar_pure_states, simulate_correction)
from kraupy.decompose import (RuDecomposition, pauli_decompose_qubit,
                              generate_random_ru_channel, search_decomposition)
from kraupy.constants import SearchConfig
from kraupy.errors import DimensionError, InconsistentDecompositionError
from kraupy.statistics import make_rng, haar_unitary


class TestDilation(unittest.TestCase):
    def test_unitary(self):
        u = haar_unitary(3, make_rng(1))
        iso = dilate(unitary_channel(u))
        self.assertEqual(iso.r, 1)
        np.testing.assert_allclose(iso.mat, u, atol=1e-12)

    def test_bit_flip(self):
        iso = dilate(pauli_channel([0.5, 0.5, 0, 0]))
        h = np.sqrt(0.5)
        expected_result = np.array([[h, 0], [0, h], [0, h], [h, 0]])
        np.testing.assert_allclose(iso.mat, expected_result, atol=1e-15)

    def test_marginals(self):
        rng = make_rng(6)
        for _ in range(10):
            v = haar_unitary(9, rng)[:, :3]
            ch = KrausChannel(v.reshape(3, 3, 3).transpose(1, 0, 2))
            rho = haar_pure_states(3, 1, rng)[0]
            iso = dilate(ch)
            np.testing.assert_allclose(iso.system_marginal(rho),
                                       apply_channel(ch, rho).mat,
                                       atol=1e-10)
            np.testing.assert_allclose(iso.ancilla_marginal(rho),
                                       complementary_apply(ch, rho).mat,
                                       atol=1e-10)

    def test_non_square(self):
        rng = make_rng(7)
        v = haar_unitary(6, rng)[:, :2]
        ch = KrausChannel(v.reshape(3, 2, 2).transpose(1, 0, 2))
        iso = dilate(ch)
        self.assertEqual((iso.d, iso.d_out, iso.r), (2, 3, 2))
        rho = haar_pure_states(2, 1, rng)[0]
        np.testing.assert_allclose(iso.system_marginal(rho),
                                   apply_channel(ch, rho).mat, atol=1e-10)
        np.testing.assert_allclose(iso.ancilla_marginal(rho),
                                   complementary_apply(ch, rho).mat,
                                   atol=1e-10)

    def test_not_isometry(self):
        with self.assertRaises(InconsistentDecompositionError):
            DilationIsometry(2 * np.eye(2), 2, 1)
        with self.assertRaises(DimensionError):
            DilationIsometry(np.eye(2), 2, 2)


class TestCorrection(unittest.TestCase):
    def test_fidelity(self):
        rho = DensityMatrix.pure([1, 0])
        self.assertAlmostEqual(correction_fidelity(rho, rho), 1.0)
        self.assertAlmostEqual(correction_fidelity(rho, np.eye(2) / 2), 0.5)

    def test_unitary_channel(self):
        u = haar_unitary(2, make_rng(2))
        report = simulate_correction(unitary_channel(u),
                                     RuDecomposition([1.0], [u]),
                                     haar_pure_states(2, 10, seed=3))
        self.assertAlmostEqual(report.worst_fidelity, 1.0, places=12)
        np.testing.assert_array_equal(report.outcome_frequencies, [1.0])

    def test_pauli_channel(self):
        ch = pauli_channel([0.4, 0.3, 0.2, 0.1])
        dec = pauli_decompose_qubit(ch)
        states = haar_pure_states(2, 100, seed=4)
        report = simulate_correction(ch, dec, states, seed=5)
        self.assertEqual(report.n_trials, 100)
        self.assertGreaterEqual(report.worst_fidelity, 1 - 1e-9)
        self.assertLessEqual(report.worst_fidelity,
                             report.mean_fidelity + 1e-12)
        self.assertLessEqual(report.mean_fidelity, 1 + 1e-9)
        self.assertLess(report.max_weight_deviation, 1e-10)
        self.assertAlmostEqual(np.sum(report.outcome_frequencies), 1.0)
        np.testing.assert_allclose(report.expected_probs, dec.probs)

    def test_generated_channels(self):
        for seed in range(5):
            ch, dec = generate_random_ru_channel(3, 1 + seed, seed=seed)
            states = haar_pure_states(3, 20, seed=seed)
            report = simulate_correction(ch, dec, states, seed=seed)
            self.assertGreaterEqual(report.worst_fidelity, 1 - 1e-9)
            self.assertLess(report.max_weight_deviation, 1e-9)

    def test_searched_decomposition(self):
        ch, _ = generate_random_ru_channel(3, 2, seed=20)
        report = search_decomposition(ch, SearchConfig(restarts=5, seed=2))
        result = simulate_correction(ch, report.decomposition,
                                     haar_pure_states(3, 20, seed=1))
        self.assertGreaterEqual(result.worst_fidelity, 1 - 1e-9)
        self.assertLess(result.max_weight_deviation, 1e-9)

    def test_sampling_deterministic(self):
        ch, dec = generate_random_ru_channel(2, 3, seed=8)
        states = haar_pure_states(2, 50, seed=9)
        first = simulate_correction(ch, dec, states, seed=10)
        second = simulate_correction(ch, dec, states, seed=10)
        np.testing.assert_array_equal(first.outcome_frequencies,
                                      second.outcome_frequencies)

    def test_wrong_decomposition(self):
        rng = make_rng(11)
        u1, u2 = haar_unitary(2, rng), haar_unitary(2, rng)
        ch = KrausChannel.from_unitaries([0.2, 0.8], [u1, u2])
        swapped = RuDecomposition([0.8, 0.2], [u1, u2])
        with self.assertRaises(InconsistentDecompositionError):
            simulate_correction(ch, swapped, haar_pure_states(2, 5, seed=1))

    def test_invalid_inputs(self):
        ch = pauli_channel([0.5, 0.5, 0, 0])
        dec = pauli_decompose_qubit(ch)
        with self.assertRaises(ValueError):
            simulate_correction(ch, dec, [])
        with self.assertRaises(DimensionError):
            simulate_correction(ch, RuDecomposition([1.0], [np.eye(3)]),
                                haar_pure_states(2, 1))


if __name__ == '__main__':
    unittest.main()
