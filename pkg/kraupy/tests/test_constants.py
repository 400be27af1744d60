import unittest
from kraupy.constants import (ToleranceConfig, SearchConfig, default_tol,
                              sigma_x, sigma_y, sigma_z)
import numpy as np


class TestConstants(unittest.TestCase):
    def test_tolerances(self):
        self.assertEqual(default_tol.eps_eq, 1e-9)
        self.assertEqual(default_tol.eps_residual, 1e-6)
        loose = default_tol.replace(eps_eq=1e-6, eps_psd=1e-6)
        self.assertEqual(loose.eps_eq, 1e-6)
        self.assertEqual(loose.eps_rank, default_tol.eps_rank)
        self.assertEqual(default_tol.eps_eq, 1e-9)
        with self.assertRaises(ValueError):
            ToleranceConfig(eps_eq=0)
        with self.assertRaises(TypeError):
            default_tol.replace(eps_unknown=1.0)

    def test_schedule(self):
        self.assertEqual(SearchConfig().schedule(2), [2, 3, 4])
        self.assertEqual(SearchConfig().schedule(1), [1])
        self.assertEqual(SearchConfig(n_schedule=[5, 3]).schedule(3), [5, 3])
        with self.assertRaises(ValueError):
            SearchConfig(n_schedule=[2, 5]).schedule(2)

    def test_search_validation(self):
        with self.assertRaises(ValueError):
            SearchConfig(restarts=0)
        with self.assertRaises(ValueError):
            SearchConfig(n_schedule=[])
        with self.assertRaises(ValueError):
            SearchConfig(step=-1)
        with self.assertRaises(ValueError):
            SearchConfig(seed=-1)

    def test_paulis(self):
        np.testing.assert_array_equal(sigma_x @ sigma_y, 1j * sigma_z)
        with self.assertRaises(ValueError):
            sigma_x[0, 0] = 1


if __name__ == '__main__':
    unittest.main()
