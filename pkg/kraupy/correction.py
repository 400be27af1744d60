#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Correction Module

Environment-assisted correction of random-unitary channels. The channel is
dilated to an isometry into system (x) ancilla, the ancilla is measured with
the rank-one POVM of a decomposition, and outcome i is undone by U_i^dag.
For a valid decomposition the outcome weights equal p_i whatever the input,
and the corrected state equals the input.
"""

import logging
import numpy as np
from kraupy.constants import default_tol
from kraupy.channel import (DensityMatrix, canonical_kraus, kraus_to_choi,
                            choi_distance)
from kraupy.errors import DimensionError, InconsistentDecompositionError
from kraupy.matrices import dagger, partial_trace
from kraupy.povm import povm_from_decomposition
from kraupy.statistics import make_rng, haar_state

_log = logging.getLogger(__name__)


class DilationIsometry(object):
    """
    Isometry V: C^d -> C^d_out (x) C^r, V|psi> = sum_j (K_j|psi>) (x) |j>,
    i.e. the system-ancilla interaction acting on the ancilla state |0>
    """
    def __init__(self, mat, d, r, tol=default_tol, d_out=None):
        d_out = d if d_out is None else d_out
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (d_out * r, d):
            raise DimensionError(f'Isometry must be {d_out * r}x{d}')
        if np.max(np.abs(dagger(mat) @ mat - np.eye(d))) > tol.eps_eq:
            raise InconsistentDecompositionError('V^dag V is not the '
                                                 'identity')
        self.mat = mat
        self.d = d
        self.d_out = d_out
        self.r = r

    def __repr__(self):
        return (f'DilationIsometry: d: {self.d} d_out: {self.d_out} '
                f'r: {self.r}')

    def joint_state(self, rho):
        """V rho V^dag on system (x) ancilla"""
        return self.mat @ rho.mat @ dagger(self.mat)

    def system_marginal(self, rho):
        """Ancilla traced out: the channel output"""
        return partial_trace(self.joint_state(rho), (self.d_out, self.r),
                             keep=0)

    def ancilla_marginal(self, rho):
        """System traced out: the complementary channel output"""
        return partial_trace(self.joint_state(rho), (self.d_out, self.r),
                             keep=1)


class CorrectionReport(object):
    def __init__(self, n_trials, worst_fidelity, mean_fidelity,
                 outcome_frequencies, expected_probs, max_weight_deviation):
        """
        :param n_trials: number of input states
        :param worst_fidelity: smallest fidelity over states and outcomes
        :param mean_fidelity: mean over states of the outcome-averaged
        fidelity
        :param outcome_frequencies: empirical distribution of one sampled
        outcome per state
        :param expected_probs: the decomposition probabilities p_i
        :param max_weight_deviation: largest |Tr[(I (x) |a_i><a_i|) V rho
        V^dag] - p_i| over states and outcomes
        """
        self.n_trials = n_trials
        self.worst_fidelity = worst_fidelity
        self.mean_fidelity = mean_fidelity
        self.outcome_frequencies = np.asarray(outcome_frequencies)
        self.expected_probs = np.asarray(expected_probs)
        self.max_weight_deviation = max_weight_deviation

    def __repr__(self):
        return (f'CorrectionReport: trials: {self.n_trials} worst fidelity: '
                f'{self.worst_fidelity} mean fidelity: {self.mean_fidelity} '
                f'max weight deviation: {self.max_weight_deviation}')


def dilate(ch, tol=default_tol):
    """
    Isometric dilation with one ancilla level per Kraus operator,
    V[i*r + j, k] = K_j[i, k]
    :param ch: KrausChannel Object (d_in and d_out may differ)
    :param tol: ToleranceConfig Object
    :return: DilationIsometry Object
    """
    r, d, d_out = len(ch), ch.d_in, ch.d_out
    mat = ch.ops.transpose(1, 0, 2).reshape(d_out * r, d)
    return DilationIsometry(mat, d, r, tol, d_out)


def correction_fidelity(rho, sigma):
    """
    Fidelity Tr[rho sigma] of a state to a pure reference state rho
    :param rho: DensityMatrix Object (pure)
    :param sigma: DensityMatrix Object or d x d array
    :return: float
    """
    sigma = getattr(sigma, 'mat', sigma)
    return float(np.trace(rho.mat @ sigma).real)


def haar_pure_states(d, n, seed=None):
    """
    List of n Haar-random pure DensityMatrix Objects of dimension d
    """
    rng = make_rng(seed)
    return [DensityMatrix.pure(haar_state(d, rng)) for _ in range(n)]


def simulate_correction(ch, dec, states, seed=None, tol=default_tol):
    """
    Run environment-assisted correction on a list of input states.
    The decomposition must reproduce the channel within eps_residual; the
    POVM on the ancilla of the canonical dilation is recovered from it by
    least squares. For every state and outcome the exact outcome weight
    and the fidelity of the corrected conditional state are computed; one
    outcome per state is also sampled under seed.
    :param ch: KrausChannel Object
    :param dec: RuDecomposition Object
    :param states: non-empty list of DensityMatrix Objects (pure)
    :param seed: seed of the outcome sampling
    :param tol: ToleranceConfig Object
    :return: CorrectionReport Object
    """
    if not states:
        raise ValueError('At least one input state is required')
    if dec.d != ch.d_in:
        raise DimensionError(f'Decomposition dimension {dec.d} does not '
                             f'match channel dimension {ch.d_in}')
    residual = choi_distance(kraus_to_choi(dec.to_channel(), tol),
                             kraus_to_choi(ch, tol))
    if residual > tol.eps_residual:
        raise InconsistentDecompositionError(
            f'Decomposition does not reproduce the channel (Choi distance '
            f'{residual:.3e})')
    canonical = canonical_kraus(ch, tol)
    povm = povm_from_decomposition(canonical, dec, tol)
    iso = dilate(canonical, tol)
    rng = make_rng(seed)

    # Outcomes are the POVM labels: indices into the decomposition
    unitaries = dec.unitaries[povm.labels]
    probs = dec.probs[povm.labels]
    counts = np.zeros(len(dec))
    worst, means, deviation = np.inf, [], 0.0
    for rho in states:
        if rho.d != iso.d:
            raise DimensionError(f'State dimension {rho.d} does not match '
                                 f'channel dimension {iso.d}')
        joint = iso.joint_state(rho).reshape(iso.d_out, iso.r, iso.d_out,
                                             iso.r)
        conditional = np.einsum('ajbk,ij,ik->iab', joint,
                                povm.vectors.conj(), povm.vectors)
        weights = np.trace(conditional, axis1=1, axis2=2).real
        deviation = max(deviation, float(np.max(np.abs(weights - probs))))
        fidelities = np.zeros(len(weights))
        for i, (w, u) in enumerate(zip(weights, unitaries)):
            if w > tol.eps_eq:
                corrected = dagger(u) @ conditional[i] @ u / w
                fidelities[i] = correction_fidelity(rho, corrected)
                worst = min(worst, fidelities[i])
        means.append(float(np.sum(weights * fidelities)))
        sample = rng.choice(len(weights), p=weights / np.sum(weights))
        counts[povm.labels[sample]] += 1

    report = CorrectionReport(len(states), float(worst), float(np.mean(means)),
                              counts / len(states), dec.probs, deviation)
    _log.info('corrected %d states: worst fidelity %.12f, weight deviation '
              '%.3e', len(states), report.worst_fidelity, deviation)
    return report
