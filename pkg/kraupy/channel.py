#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Channel Module

Kraus, Choi and complementary (ancilla) descriptions of finite-dimensional
channels, with exact conversions between them.

Conventions:
    |Omega> = sum_i |i> (x) |i>, so that ||Omega||^2 = d
    R_E = (E (x) I)|Omega><Omega| = sum_j vec(K_j) vec(K_j)^dag
    vec() is row-major: basis element (i, k) <-> flat index i * d_in + k
    The channel acts on the first tensor factor, the reference system is
    the second.
"""

import warnings
import numpy as np
from kraupy.constants import default_tol, paulis
from kraupy.errors import (RepresentationError, DimensionError,
                           UnsupportedChannelError,
                           InconsistentDecompositionError)
from kraupy.matrices import (as_matrix, as_vector, dagger, hermitian_part,
                             is_hermitian, min_eigenvalue, vec, unvec,
                             partial_trace)


class DensityMatrix(object):
    """
    Density matrix: Hermitian, positive semidefinite and of unit trace
    """
    def __init__(self, mat, tol=default_tol):
        """
        :param mat: d x d array-like
        :param tol: ToleranceConfig Object
        """
        mat = as_matrix(mat, 'density matrix')
        if not is_hermitian(mat, tol.eps_eq):
            raise RepresentationError('Density matrix is not Hermitian')
        if min_eigenvalue(mat) < -tol.eps_psd:
            raise RepresentationError('Density matrix is not positive '
                                      'semidefinite')
        if abs(np.trace(mat) - 1) > tol.eps_eq:
            raise RepresentationError(f'Density matrix trace is '
                                      f'{np.trace(mat).real}, not 1')
        self.mat = mat
        self.d = mat.shape[0]

    def __repr__(self):
        return f'DensityMatrix: d: {self.d}\n{self.mat}'

    @classmethod
    def pure(cls, psi, tol=default_tol):
        """
        Projector onto a state vector (normalised here)
        :param psi: state vector
        :return: DensityMatrix
        """
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), tol)


class KrausChannel(object):
    """
    Channel given by Kraus operators K_j, rho -> sum_j K_j rho K_j^dag.
    Completeness is checked by the operations that need it
    (see is_trace_preserving), so that invalid inputs can be reported.
    """
    def __init__(self, ops):
        """
        :param ops: non-empty sequence of equal-shape d_out x d_in matrices
        """
        ops = [as_matrix(op, 'Kraus operator') for op in ops]
        if not ops:
            raise ValueError('A channel needs at least one Kraus operator')
        shape = ops[0].shape
        if any(op.shape != shape for op in ops):
            raise DimensionError('Kraus operators must share one shape')
        self.d_out, self.d_in = shape
        self.ops = np.array(ops)
        self.ops.setflags(write=False)

    def __repr__(self):
        return (f'KrausChannel: d_in: {self.d_in} d_out: {self.d_out} '
                f'Kraus operators: {len(self)}')

    def __len__(self):
        return self.ops.shape[0]

    @classmethod
    def from_unitaries(cls, probs, unitaries):
        """
        Random-unitary channel sum_i p_i U_i rho U_i^dag
        :param probs: probability vector
        :param unitaries: matching sequence of unitaries
        :return: KrausChannel with operators sqrt(p_i) U_i
        """
        if len(probs) != len(unitaries):
            raise DimensionError('probs and unitaries differ in length')
        return cls([np.sqrt(p) * np.asarray(u)
                    for p, u in zip(probs, unitaries)])

    def is_square(self):
        return self.d_in == self.d_out


class ChoiOperator(object):
    """
    Choi operator R_E of a channel, of size (d_out*d_in) x (d_out*d_in)
    """
    def __init__(self, mat, d_in, d_out, tol=default_tol):
        """
        :param mat: Choi matrix (channel on the first factor)
        :param d_in: input dimension
        :param d_out: output dimension
        :param tol: ToleranceConfig Object
        """
        mat = as_matrix(mat, 'Choi operator')
        size = d_out * d_in
        if mat.shape != (size, size):
            raise DimensionError(f'Choi operator must be {size}x{size} for '
                                 f'd_in={d_in}, d_out={d_out}')
        asym = np.max(np.abs(mat - dagger(mat)))
        if asym > tol.eps_eq:
            raise RepresentationError('Choi operator is not Hermitian')
        if asym > 1e-12:
            warnings.warn(message=f'Choi operator symmetrised '
                                  f'(asymmetry {asym:.3e})',
                          category=UserWarning)
        mat = hermitian_part(mat)
        if min_eigenvalue(mat) < -tol.eps_psd:
            raise RepresentationError('Choi operator is not positive '
                                      'semidefinite')
        ref = partial_trace(mat, (d_out, d_in), keep=1)
        if np.max(np.abs(ref - np.eye(d_in))) > tol.eps_eq:
            raise RepresentationError('Choi operator is not trace '
                                      'preserving (partial trace over the '
                                      'output is not the identity)')
        mat.setflags(write=False)
        self.mat = mat
        self.d_in = int(d_in)
        self.d_out = int(d_out)

    def __repr__(self):
        return f'ChoiOperator: d_in: {self.d_in} d_out: {self.d_out}'


def _check_trace_preserving(ch, tol):
    if not is_trace_preserving(ch, tol):
        raise RepresentationError('Kraus operators violate completeness: '
                                  'sum_j K_j^dag K_j != I')


def _check_input(ch, mat):
    if mat.shape != (ch.d_in, ch.d_in):
        raise DimensionError(f'Input of shape {mat.shape} does not match '
                             f'channel input dimension {ch.d_in}')


def is_trace_preserving(ch, tol=default_tol):
    """
    Completeness sum_j K_j^dag K_j = I
    :param ch: KrausChannel Object
    :param tol: ToleranceConfig Object
    :return: bool
    """
    total = np.einsum('jab,jac->bc', ch.ops.conj(), ch.ops)
    return bool(np.max(np.abs(total - np.eye(ch.d_in))) <= tol.eps_eq)


def is_unital(ch, tol=default_tol):
    """
    Unitality sum_j K_j K_j^dag = I, necessary for a random-unitary channel
    (and sufficient for qubits)
    :param ch: KrausChannel Object
    :param tol: ToleranceConfig Object
    :return: bool
    """
    if not ch.is_square():
        raise UnsupportedChannelError('Unitality needs d_in == d_out')
    total = np.einsum('jab,jcb->ac', ch.ops, ch.ops.conj())
    return bool(np.max(np.abs(total - np.eye(ch.d_out))) <= tol.eps_eq)


def kraus_to_choi(ch, tol=default_tol):
    """
    Choi operator R_E = sum_j vec(K_j) vec(K_j)^dag
    :param ch: KrausChannel Object
    :param tol: ToleranceConfig Object
    :return: ChoiOperator Object
    """
    _check_trace_preserving(ch, tol)
    w = ch.ops.reshape(len(ch), -1).T
    return ChoiOperator(w @ dagger(w), ch.d_in, ch.d_out, tol)


def _choi_spectrum(choi, tol):
    evals, evecs = np.linalg.eigh(hermitian_part(choi.mat))
    if evals[0] < -tol.eps_psd:
        raise RepresentationError('Choi operator is not positive '
                                  'semidefinite')
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    keep = evals > tol.eps_rank * evals[0]
    return evals[keep], evecs[:, keep]


def choi_rank(choi, tol=default_tol):
    """
    Number of eigenvalues above eps_rank times the largest one, i.e. the
    minimal number of Kraus operators of the channel
    :param choi: ChoiOperator Object
    :param tol: ToleranceConfig Object
    :return: rank (int)
    """
    evals, _ = _choi_spectrum(choi, tol)
    return len(evals)


def choi_to_canonical_kraus(choi, tol=default_tol):
    """
    Orthogonal (canonical) Kraus representation from the eigendecomposition
    of the Choi operator, K_j = sqrt(mu_j) unvec(u_j), in decreasing order
    of mu_j
    :param choi: ChoiOperator Object
    :param tol: ToleranceConfig Object
    :return: KrausChannel Object with choi_rank(choi) operators
    """
    evals, evecs = _choi_spectrum(choi, tol)
    # Largest entry of each eigenvector real and positive
    lead = evecs[np.argmax(np.abs(evecs), axis=0), np.arange(len(evals))]
    evecs = evecs * (np.abs(lead) / lead)
    ops = [np.sqrt(mu) * unvec(evecs[:, j], choi.d_out, choi.d_in)
           for j, mu in enumerate(evals)]
    return KrausChannel(ops)


def canonical_kraus(ch, tol=default_tol):
    """Canonical form of a Kraus channel, via its Choi operator"""
    return choi_to_canonical_kraus(kraus_to_choi(ch, tol), tol)


def choi_distance(choi_a, choi_b):
    """
    Frobenius distance between two Choi operators
    :return: float
    """
    if choi_a.mat.shape != choi_b.mat.shape:
        raise DimensionError('Choi operators differ in shape')
    return float(np.linalg.norm(choi_a.mat - choi_b.mat))


def channel_action(ch, mat):
    """
    Linear action sum_j K_j X K_j^dag on an arbitrary d_in x d_in matrix
    :param ch: KrausChannel Object
    :param mat: d_in x d_in array
    :return: d_out x d_out ndarray
    """
    mat = np.asarray(mat, dtype=complex)
    _check_input(ch, mat)
    return np.einsum('jab,bc,jdc->ad', ch.ops, mat, ch.ops.conj())


def apply_channel(ch, rho, tol=default_tol):
    """
    Output state of a channel
    :param ch: KrausChannel Object
    :param rho: DensityMatrix Object
    :param tol: ToleranceConfig Object
    :return: DensityMatrix Object
    """
    return DensityMatrix(channel_action(ch, rho.mat), tol)


def complementary_apply(ch, rho, tol=default_tol):
    """
    Ancilla (complementary) channel with one ancilla level per Kraus
    operator: <j|E~(rho)|l> = Tr[K_j rho K_l^dag]
    :param ch: KrausChannel Object
    :param rho: DensityMatrix Object
    :param tol: ToleranceConfig Object
    :return: m x m DensityMatrix Object
    """
    _check_input(ch, rho.mat)
    k_rho = np.einsum('jab,bc->jac', ch.ops, rho.mat)
    return DensityMatrix(np.einsum('jac,lac->jl', k_rho, ch.ops.conj()), tol)


def dual_apply(ch, alpha):
    """
    Heisenberg picture of the ancilla channel on a rank-one operator,
    E~*(|alpha><alpha|) = A^dag A with A = sum_j conj(alpha_j) K_j.
    Satisfies Tr[E~*(|a><a|) rho] = <a|E~(rho)|a>.
    :param ch: KrausChannel Object
    :param alpha: complex vector of length m (need not be normalised)
    :return: d_in x d_in Hermitian PSD ndarray
    """
    alpha = as_vector(alpha, 'alpha')
    if alpha.shape[0] != len(ch):
        raise DimensionError(f'alpha has length {alpha.shape[0]}, channel '
                             f'has {len(ch)} Kraus operators')
    a = np.einsum('j,jab->ab', alpha.conj(), ch.ops)
    return dagger(a) @ a


def kraus_mixing(ch, ops, tol=default_tol):
    """
    Coefficients expressing another Kraus family of the same channel in
    terms of the operators of ch: E_i = sum_j C[i, j] K_j. The rank-one
    instrument on the ancilla realising the family {E_i} has vectors
    alpha_i = conj(C[i, :]).
    :param ch: KrausChannel Object (reference family, usually canonical)
    :param ops: sequence of d_out x d_in matrices E_i
    :param tol: ToleranceConfig Object (eps_residual bounds the fit)
    :return: complex ndarray C (len(ops) x len(ch))
    """
    basis = ch.ops.reshape(len(ch), -1).T
    targets = np.array([vec(as_matrix(op, 'Kraus operator')) for op in ops])
    if targets.shape[1] != basis.shape[0]:
        raise DimensionError('Kraus families differ in operator shape')
    coeffs, _, _, _ = np.linalg.lstsq(basis, targets.T, rcond=None)
    residual = np.max(np.linalg.norm(basis @ coeffs - targets.T, axis=0))
    if residual > tol.eps_residual:
        raise InconsistentDecompositionError(
            f'Operators are not in the Kraus span of the channel '
            f'(residual {residual:.3e})')
    return coeffs.T


# Standard channels

def identity_channel(d):
    return KrausChannel([np.eye(d)])


def unitary_channel(unitary):
    return KrausChannel([unitary])


def pauli_channel(probs):
    """
    Qubit Pauli channel sum_i p_i sigma_i rho sigma_i, i = 0, x, y, z;
    zero-probability terms are omitted
    :param probs: (p_0, p_x, p_y, p_z)
    :return: KrausChannel Object
    """
    if len(probs) != 4:
        raise ValueError('A Pauli channel needs four probabilities')
    return KrausChannel([np.sqrt(p) * sigma
                         for p, sigma in zip(probs, paulis) if p > 0])


def depolarizing(d):
    """
    Fully depolarizing channel rho -> Tr[rho] I/d, with the d^2 Weyl
    operators X^a Z^b / d as Kraus operators
    """
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    ops = [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
           / d for a in range(d) for b in range(d)]
    return KrausChannel(ops)


def amplitude_damping(gamma):
    """
    Qubit amplitude damping, K_0 = diag(1, sqrt(1-gamma)),
    K_1 = sqrt(gamma)|0><1|
    :param gamma: damping probability in [0, 1]
    """
    if not 0 <= gamma <= 1:
        raise ValueError('gamma must lie in [0, 1]')
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]])
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]])
    return KrausChannel([k0, k1])
