import unittest
import numpy as np
from scipy.spatial.transform import Rotation
from kraupy.bloch import (bloch_representation, signed_svd,
                          su2_from_rotation, rotation_from_su2)
from kraupy.channel import identity_channel, amplitude_damping, depolarizing
from kraupy.errors import UnsupportedChannelError


class TestBloch(unittest.TestCase):
    def test_identity(self):
        transfer, shift = bloch_representation(identity_channel(2))
        np.testing.assert_almost_equal(transfer, np.eye(3))
        np.testing.assert_almost_equal(shift, np.zeros(3))

    def test_amplitude_damping(self):
        gamma = 0.36
        transfer, shift = bloch_representation(amplitude_damping(gamma))
        np.testing.assert_almost_equal(transfer, np.diag([0.8, 0.8, 0.64]))
        np.testing.assert_almost_equal(shift, [0, 0, gamma])

    def test_not_qubit(self):
        with self.assertRaises(UnsupportedChannelError):
            bloch_representation(depolarizing(3))

    def test_signed_svd(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            mat = rng.standard_normal((3, 3))
            u, s, vt = signed_svd(mat)
            self.assertAlmostEqual(np.linalg.det(u), 1.0)
            self.assertAlmostEqual(np.linalg.det(vt), 1.0)
            np.testing.assert_allclose(u @ np.diag(s) @ vt, mat, atol=1e-12)
            np.testing.assert_allclose(np.abs(s),
                                       np.linalg.svd(mat, compute_uv=False),
                                       atol=1e-12)

    def test_su2_lift(self):
        rotations = Rotation.random(10, 23).as_matrix()
        for rot in rotations:
            v = su2_from_rotation(rot)
            np.testing.assert_allclose(v @ v.conj().T, np.eye(2), atol=1e-12)
            self.assertAlmostEqual(np.linalg.det(v).real, 1.0)
            np.testing.assert_allclose(rotation_from_su2(v), rot, atol=1e-12)

    def test_su2_lift_half_turn(self):
        # pi about z lifts to -i sigma_z, up to the sign of the cover
        v = su2_from_rotation(np.diag([-1.0, -1.0, 1.0]))
        expected_result = np.array([[-1j, 0], [0, 1j]])
        self.assertTrue(np.allclose(v, expected_result)
                        or np.allclose(v, -expected_result))


if __name__ == '__main__':
    unittest.main()
