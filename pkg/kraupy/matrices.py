#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Matrices Module

Dense complex matrices are plain numpy arrays of dtype complex128. The
helpers below validate them and supply the few operations shared by the
channel, POVM and correction modules.

Vectorisation is row-major throughout: the matrix element [i, k] of an
m x n matrix sits at flat index i * n + k.
"""

import numpy as np
from scipy.linalg import polar


def as_matrix(mat, name='matrix'):
    """
    Validate and copy a 2D complex array
    :param mat: array-like of complex scalars
    :param name: label used in error messages
    :return: read-only complex128 ndarray
    """
    arr = np.array(mat, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f'{name} must be 2-dimensional, got shape '
                         f'{arr.shape}')
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f'{name} must have positive dimensions')
    if not np.all(np.isfinite(arr)):
        raise ValueError(f'{name} has non-finite entries')
    arr.setflags(write=False)
    return arr


def as_vector(vec, name='vector'):
    """
    Validate and copy a 1D complex array
    :param vec: array-like of complex scalars
    :param name: label used in error messages
    :return: read-only complex128 ndarray
    """
    arr = np.array(vec, dtype=complex)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ValueError(f'{name} must be a non-empty 1D array')
    if not np.all(np.isfinite(arr)):
        raise ValueError(f'{name} has non-finite entries')
    arr.setflags(write=False)
    return arr


def dagger(mat):
    return np.conj(np.swapaxes(mat, -1, -2))


def hermitian_part(mat):
    return (mat + dagger(mat)) / 2


def is_hermitian(mat, eps):
    return mat.shape[0] == mat.shape[1] and \
        np.max(np.abs(mat - dagger(mat))) <= eps


def min_eigenvalue(mat):
    """Smallest eigenvalue of the Hermitian part of a square matrix"""
    return float(np.linalg.eigvalsh(hermitian_part(mat))[0])


def is_psd(mat, eps):
    return min_eigenvalue(mat) >= -eps


def is_unitary(mat, eps):
    """
    Unitarity test in the Frobenius norm
    :param mat: square matrix
    :param eps: bound on ||U^dag U - I||_F
    :return: bool
    """
    if mat.shape[0] != mat.shape[1]:
        return False
    ident = np.eye(mat.shape[0])
    return np.linalg.norm(dagger(mat) @ mat - ident) <= eps


def vec(mat):
    """Row-major flattening of a matrix"""
    return np.asarray(mat).reshape(-1)


def unvec(vector, rows, cols):
    """Inverse of vec()"""
    return np.asarray(vector).reshape(rows, cols)


def partial_trace(mat, dims, keep):
    """
    Partial trace of an operator on a bipartite space
    :param mat: (d1*d2) x (d1*d2) matrix, first factor most significant
    :param dims: (d1, d2)
    :param keep: index of the factor kept (0 or 1)
    :return: d_keep x d_keep matrix
    """
    d1, d2 = dims
    if mat.shape != (d1 * d2, d1 * d2):
        raise ValueError(f'Matrix shape {mat.shape} does not match '
                         f'dimensions {dims}')
    tensor = np.asarray(mat).reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.einsum('ikjk->ij', tensor)
    elif keep == 1:
        return np.einsum('kikj->ij', tensor)
    else:
        raise ValueError('keep must be 0 or 1')


def polar_unitary(mat):
    """
    Unitary factor of the polar decomposition, the unitary nearest to mat
    in the Frobenius norm
    """
    unitary, _ = polar(np.asarray(mat, dtype=complex))
    return unitary
