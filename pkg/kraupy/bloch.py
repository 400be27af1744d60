#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Bloch Module

Qubit channels as affine maps of the Bloch ball, r -> T r + t, and the
correspondence between rotations of the ball (SO(3)) and qubit unitaries
(SU(2)).
"""

import numpy as np
from scipy.spatial.transform import Rotation
from kraupy.constants import sigma_0, sigma_x, sigma_y, sigma_z
from kraupy.channel import channel_action
from kraupy.errors import UnsupportedChannelError

bloch_axes = (sigma_x, sigma_y, sigma_z)


def bloch_representation(ch):
    """
    Affine Bloch-ball action of a qubit channel
    T[a, b] = 1/2 Tr[sigma_a E(sigma_b)], t[a] = 1/2 Tr[sigma_a E(I)]
    :param ch: KrausChannel Object with d_in = d_out = 2
    :return: T (3x3 real), t (length 3 real)
    """
    if ch.d_in != 2 or ch.d_out != 2:
        raise UnsupportedChannelError('Bloch representation needs a qubit '
                                      'channel')
    images = [channel_action(ch, sigma) for sigma in bloch_axes]
    transfer = np.array([[0.5 * np.trace(sa @ img).real for img in images]
                         for sa in bloch_axes])
    shift = channel_action(ch, sigma_0)
    translation = np.array([0.5 * np.trace(sa @ shift).real
                            for sa in bloch_axes])
    return transfer, translation


def signed_svd(mat):
    """
    Singular value decomposition mat = R_L diag(lam) R_R with both R_L and
    R_R proper rotations (determinant +1); reflections are absorbed into
    the sign of the last entry of lam
    :param mat: 3x3 real matrix
    :return: R_L, lam, R_R
    """
    u, s, vt = np.linalg.svd(mat)
    s = s.copy()
    if np.linalg.det(u) < 0:
        u[:, -1] *= -1
        s[-1] *= -1
    if np.linalg.det(vt) < 0:
        vt[-1, :] *= -1
        s[-1] *= -1
    return u, s, vt


def su2_from_rotation(rot):
    """
    Lift a rotation of the Bloch ball to the qubit unitary V with
    V (n.sigma) V^dag = (R n).sigma. The quaternion sign is fixed by a
    nonnegative scalar part.
    :param rot: 3x3 rotation matrix
    :return: 2x2 unitary of determinant 1
    """
    x, y, z, w = Rotation.from_matrix(rot).as_quat()
    if w < 0:
        x, y, z, w = -x, -y, -z, -w
    return w * sigma_0 - 1j * (x * sigma_x + y * sigma_y + z * sigma_z)


def rotation_from_su2(unitary):
    """
    Rotation of the Bloch ball induced by conjugation with a qubit unitary
    :param unitary: 2x2 unitary
    :return: 3x3 rotation matrix
    """
    unitary = np.asarray(unitary, dtype=complex)
    return np.array([[0.5 * np.trace(sa @ unitary @ sb
                                     @ unitary.conj().T).real
                      for sb in bloch_axes] for sa in bloch_axes])
