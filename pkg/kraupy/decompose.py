#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Decompose Module

Random-unitary decompositions E(rho) = sum_i p_i U_i rho U_i^dag.

A channel is random-unitary exactly when some rank-one POVM {|a_i><a_i|} on
the ancilla of its canonical dilation is mapped by the dual ancilla channel
to a classical dice, E~*(|a_i><a_i|) = p_i I. Then A_i = sum_j conj(a_ij) K_j
satisfies A_i^dag A_i = p_i I, so A_i = sqrt(p_i) U_i. Since such a POVM can
always be replaced by an extremal one, some decomposition has
rank R_E <= K <= (rank R_E)^2 terms.

Qubit channels are random-unitary exactly when unital and are solved in
closed form through their Bloch representation. For larger dimensions the
POVM is searched numerically over co-isometries M (M M^dag = I_r) whose
columns are the vectors a_i.
"""

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from kraupy.constants import default_tol, default_search, paulis
from kraupy.bloch import (bloch_representation, signed_svd,
                          su2_from_rotation, rotation_from_su2)
from kraupy.channel import (KrausChannel, kraus_to_choi,
                            choi_to_canonical_kraus, canonical_kraus,
                            choi_rank, choi_distance,
                            is_unital, is_trace_preserving)
from kraupy.errors import (RepresentationError, DimensionError,
                           UnsupportedChannelError, PreconditionError,
                           NumericalFailure)
from kraupy.matrices import as_matrix, dagger, is_unitary, polar_unitary
from kraupy.povm import RankOnePovm, check_dice_condition, extremal_decompose
from kraupy.statistics import (make_rng, derived_seeds, shannon_entropy,
                               haar_unitary, random_simplex,
                               random_coisometry)

_log = logging.getLogger(__name__)

FOUND = 'found'
NOT_FOUND = 'not_found'
NOT_UNITAL = 'not_unital'

# Restarts ending below POLISH_FACTOR * obj_tol are polished and checked
POLISH_FACTOR = 1e2


class RuDecomposition(object):
    """
    Probabilities p_i and unitaries U_i of a random-unitary decomposition
    """
    def __init__(self, probs, unitaries, tol=default_tol):
        """
        :param probs: probability vector of length K
        :param unitaries: K unitaries of a common dimension d
        :param tol: ToleranceConfig Object
        """
        probs = np.array(probs, dtype=float)
        unitaries = [as_matrix(u, 'unitary') for u in unitaries]
        if probs.ndim != 1 or len(probs) < 1:
            raise ValueError('A decomposition needs at least one term')
        if len(unitaries) != len(probs):
            raise DimensionError('probs and unitaries differ in length')
        shape = unitaries[0].shape
        if any(u.shape != shape for u in unitaries):
            raise DimensionError('Unitaries must share one shape')
        if np.any(probs < -tol.eps_eq):
            raise RepresentationError('Probabilities must be nonnegative')
        if abs(np.sum(probs) - 1) > tol.eps_eq:
            raise RepresentationError(f'Probabilities sum to '
                                      f'{np.sum(probs)}, not 1')
        for u in unitaries:
            if not is_unitary(u, tol.eps_unitary):
                raise RepresentationError('Decomposition operator is not '
                                          'unitary')
        self.probs = np.clip(probs, 0, None)
        self.probs.setflags(write=False)
        self.unitaries = np.array(unitaries)
        self.unitaries.setflags(write=False)
        self.d = shape[0]

    def __repr__(self):
        return f'RuDecomposition: d: {self.d} K: {len(self)} ' \
               f'probs: {self.probs}'

    def __len__(self):
        return len(self.probs)

    def to_channel(self):
        """Kraus form with operators sqrt(p_i) U_i"""
        return KrausChannel.from_unitaries(self.probs, self.unitaries)

    def entropy(self):
        """Shannon entropy H(p) in bits"""
        return shannon_entropy(self.probs)


class SearchReport(object):
    """
    Outcome of a random-unitary decomposition attempt
    """
    def __init__(self, status, decomposition=None, cardinality_bound_low=None,
                 cardinality_bound_high=None, objective_trace=None,
                 residual=None, n_elements=None):
        """
        :param status: FOUND, NOT_FOUND or NOT_UNITAL
        :param decomposition: RuDecomposition Object when found
        :param cardinality_bound_low: rank R_E
        :param cardinality_bound_high: (rank R_E)^2
        :param objective_trace: final objective of every restart, in order
        :param residual: Choi distance between decomposition and channel
        (best objective reached when not found)
        :param n_elements: POVM cardinality at which the search succeeded
        """
        if status not in (FOUND, NOT_FOUND, NOT_UNITAL):
            raise ValueError(f'Unknown search status "{status}"')
        self.status = status
        self.decomposition = decomposition
        self.cardinality_bound_low = cardinality_bound_low
        self.cardinality_bound_high = cardinality_bound_high
        self.objective_trace = list(objective_trace or [])
        self.residual = residual
        self.n_elements = n_elements
        if decomposition is not None:
            self.entropy_bits = decomposition.entropy()
        else:
            self.entropy_bits = None

    def __repr__(self):
        k = None if self.decomposition is None else len(self.decomposition)
        return (f'SearchReport: status: {self.status} K: {k} bounds: '
                f'[{self.cardinality_bound_low}, '
                f'{self.cardinality_bound_high}] '
                f'residual: {self.residual}')


def analyze_channel(ch, tol=default_tol):
    """
    Diagnostics of a channel: Choi rank, unitality, trace preservation, the
    window rank <= K <= rank^2 for a minimal random-unitary decomposition and
    the entropy bound 2 log2(rank)
    :param ch: KrausChannel Object
    :param tol: ToleranceConfig Object
    :return: dict
    """
    tp = is_trace_preserving(ch, tol)
    rank = choi_rank(kraus_to_choi(ch, tol), tol)
    unital = is_unital(ch, tol)
    summary = {'rank': rank,
               'unital': unital,
               'tp': tp,
               'k_low': rank,
               'k_high': rank ** 2,
               'h_bound_bits': 2 * float(np.log2(rank))}
    if not unital:
        summary['note'] = 'not random-unitary: the channel is not unital'
    return summary


def pauli_decompose_qubit(ch, tol=default_tol):
    """
    Closed-form decomposition of a unital qubit channel as a rotated Pauli
    channel, E(rho) = sum_i p_i W_i rho W_i^dag with W_i = V_L sigma_i V_R.
    The Bloch matrix T is factored as R_L diag(lam) R_R with proper
    rotations, the rotations lifted to SU(2) and
        p_0 = (1 + lx + ly + lz)/4    p_x = (1 + lx - ly - lz)/4
        p_y = (1 - lx + ly - lz)/4    p_z = (1 - lx - ly + lz)/4
    Terms with p_i <= eps_eq are dropped, so K equals the Choi rank.
    :param ch: KrausChannel Object (qubit)
    :param tol: ToleranceConfig Object
    :return: RuDecomposition Object
    """
    if ch.d_in != 2 or ch.d_out != 2:
        raise UnsupportedChannelError('Closed form needs a qubit channel')
    if not is_trace_preserving(ch, tol):
        raise RepresentationError('Kraus operators violate completeness')
    if not is_unital(ch, tol):
        raise PreconditionError('A qubit channel is random-unitary if and '
                                'only if it is unital; this one is not')
    transfer, _ = bloch_representation(ch)
    rot_l, lam, rot_r = signed_svd(transfer)
    lx, ly, lz = lam
    probs = np.array([1 + lx + ly + lz,
                      1 + lx - ly - lz,
                      1 - lx + ly - lz,
                      1 - lx - ly + lz]) / 4
    if np.any(probs < -tol.eps_eq):
        raise RepresentationError('Bloch matrix outside the Pauli '
                                  'tetrahedron: the map is not completely '
                                  'positive')
    v_l = su2_from_rotation(rot_l)
    v_r = su2_from_rotation(rot_r)
    for rot, v in ((rot_l, v_l), (rot_r, v_r)):
        if np.max(np.abs(rotation_from_su2(v) - rot)) > tol.eps_unitary:
            raise NumericalFailure('SU(2) lift does not reproduce the '
                                   'Bloch rotation')
    keep = probs > tol.eps_eq
    probs = probs[keep] / np.sum(probs[keep])
    unitaries = [v_l @ sigma @ v_r
                 for sigma, k in zip(paulis, keep) if k]
    return RuDecomposition(probs, unitaries, tol)


def _dice_operators(mat, kraus):
    # A_i = sum_j conj(M[j, i]) K_j for every column i of M
    return np.einsum('ji,jab->iab', mat.conj(), kraus)


def _dice_defects(mat, kraus, d):
    a = _dice_operators(mat, kraus)
    b = np.einsum('iba,ibc->iac', a.conj(), a)
    traces = np.trace(b, axis1=1, axis2=2).real
    c = b - traces[:, None, None] / d * np.eye(d)
    return a, c


def search_objective(mat, kraus, d):
    """
    f(M) = sum_i ||A_i^dag A_i - (Tr[A_i^dag A_i]/d) I||_F^2, zero exactly
    when the columns of M satisfy the classical-dice condition
    :param mat: r x N complex matrix (columns are POVM vectors)
    :param kraus: r x d x d array of Kraus operators
    :param d: system dimension
    :return: float
    """
    _, c = _dice_defects(mat, kraus, d)
    return float(np.sum(np.abs(c) ** 2))


def search_gradient(mat, kraus, d):
    """
    Euclidean gradient of search_objective with respect to the real inner
    product Re Tr[X^dag Y]: G[j, i] = 4 Tr[C_i A_i^dag K_j], so that
    df/dRe M = Re G and df/dIm M = Im G
    :param mat: r x N complex matrix
    :param kraus: r x d x d array of Kraus operators
    :param d: system dimension
    :return: r x N complex matrix
    """
    a, c = _dice_defects(mat, kraus, d)
    c_adag = np.einsum('iab,icb->iac', c, a.conj())
    return 4 * np.einsum('iac,jca->ji', c_adag, kraus)


def _inner(x, y):
    # Real inner product Re Tr[X^dag Y]
    return float(np.real(np.vdot(x, y)))


def _retract(mat):
    # Polar retraction onto the co-isometries M M^dag = I
    return polar_unitary(mat)


def _tangent(mat, grad):
    # Projection onto the tangent space {X : X M^dag skew-Hermitian}
    sym = grad @ dagger(mat)
    sym = (sym + dagger(sym)) / 2
    return grad - sym @ mat


def _armijo(mat, direction, slope, f, kraus, d, step):
    while step > 1e-20:
        trial = _retract(mat + step * direction)
        f_trial = search_objective(trial, kraus, d)
        if f_trial <= f + 1e-4 * step * slope:
            return step, trial, f_trial
        step /= 2
    return None


def _descend(mat, kraus, d, cfg, target, max_iters):
    # Riemannian conjugate gradient (Polak-Ribiere+) with Armijo
    # backtracking, polar retraction and transport by projection. Falls back
    # to the gradient direction whenever the conjugate one fails; stops at
    # target, stagnation or max_iters.
    f = search_objective(mat, kraus, d)
    grad = _tangent(mat, search_gradient(mat, kraus, d))
    direction = -grad
    step = cfg.step
    period = 2 * mat.size
    for it in range(max_iters):
        if f < target:
            break
        norm2 = _inner(grad, grad)
        if norm2 == 0:
            break
        slope = _inner(grad, direction)
        steepest = slope >= 0 or it % period == 0
        if steepest:
            direction, slope = -grad, -norm2
        accepted = _armijo(mat, direction, slope, f, kraus, d, step)
        if accepted is None and not steepest:
            direction, slope = -grad, -norm2
            accepted = _armijo(mat, direction, slope, f, kraus, d, step)
        if accepted is None:
            break
        step, mat, f = accepted
        new_grad = _tangent(mat, search_gradient(mat, kraus, d))
        beta = _inner(new_grad, new_grad - _tangent(mat, grad)) / norm2
        direction = -new_grad + max(beta, 0.0) * _tangent(mat, direction)
        grad = new_grad
        step = min(step * 2, 1e3)
    return mat, f


def _restart(seed, r, n, kraus, d, cfg):
    mat = random_coisometry(r, n, make_rng(seed))
    mat, f = _descend(mat, kraus, d, cfg, cfg.obj_tol, cfg.max_iters)
    if f < POLISH_FACTOR * cfg.obj_tol:
        mat, f = _descend(mat, kraus, d, cfg, cfg.polish_tol, cfg.max_iters)
    return f, mat


def decomposition_from_povm(ch, povm, tol=default_tol):
    """
    Random-unitary decomposition from a classical-dice POVM:
    A_i = sum_j conj(a_ij) K_j, p_i = Tr[A_i^dag A_i]/d, U_i the unitary
    polar factor of A_i (A_i / sqrt(p_i) when the dice condition is exact).
    Terms with p_i <= eps_eq are dropped.
    :param ch: KrausChannel Object whose operators index the ancilla
    :param povm: RankOnePovm Object on that ancilla
    :param tol: ToleranceConfig Object
    :return: RuDecomposition Object
    """
    if povm.r != len(ch):
        raise DimensionError(f'POVM lives on dimension {povm.r}, the '
                             f'channel ancilla has dimension {len(ch)}')
    ops = _dice_operators(povm.columns(), ch.ops)
    probs = np.einsum('iab,iab->i', ops.conj(), ops).real / ch.d_in
    keep = probs > tol.eps_eq
    unitaries = [polar_unitary(a) for a in ops[keep]]
    return RuDecomposition(probs[keep] / np.sum(probs[keep]), unitaries, tol)


def search_decomposition(ch, cfg=None, tol=default_tol):
    """
    Numerical search for a random-unitary decomposition. Non-unital
    channels are rejected at once. Otherwise, for each cardinality N of the
    schedule, independent restarts minimise search_objective over r x N
    co-isometries by Riemannian conjugate gradient with polar retraction.
    Restarts are examined in seed order and the first one whose
    decomposition reproduces the channel within eps_residual is returned.
    not_found is not a proof that the channel is not random-unitary.
    :param ch: KrausChannel Object with d_in = d_out
    :param cfg: SearchConfig Object (None: defaults)
    :param tol: ToleranceConfig Object
    :return: SearchReport Object
    """
    if not ch.is_square():
        raise UnsupportedChannelError('Random-unitary decomposition needs '
                                      'd_in == d_out')
    choi = kraus_to_choi(ch, tol)
    r = choi_rank(choi, tol)
    if not is_unital(ch, tol):
        return SearchReport(NOT_UNITAL, cardinality_bound_low=r,
                            cardinality_bound_high=r ** 2)
    cfg = default_search if cfg is None else cfg
    canonical = choi_to_canonical_kraus(choi, tol)
    kraus, d = canonical.ops, ch.d_in
    schedule = cfg.schedule(r)
    seeds = derived_seeds(cfg.seed, len(schedule) * cfg.restarts)
    trace, best = [], np.inf
    pool = (ThreadPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1
            else None)
    try:
        for s, n in enumerate(schedule):
            _log.info('searching N=%d (rank %d, %d restarts)', n, r,
                      cfg.restarts)
            batch = seeds[s * cfg.restarts:(s + 1) * cfg.restarts]

            def run(seed, n=n):
                return _restart(seed, r, n, kraus, d, cfg)

            # Restarts are judged in seed order so the winner does not
            # depend on the number of workers
            for start in range(0, len(batch), cfg.workers):
                chunk = batch[start:start + cfg.workers]
                results = (list(pool.map(run, chunk)) if pool is not None
                           else [run(seed) for seed in chunk])
                for i, (f, mat) in enumerate(results, start):
                    trace.append(f)
                    best = min(best, f)
                    _log.debug('N=%d restart %d objective %.3e', n, i, f)
                    if f >= POLISH_FACTOR * cfg.obj_tol:
                        continue
                    dec = decomposition_from_povm(
                        canonical, RankOnePovm.from_columns(mat), tol)
                    residual = choi_distance(
                        kraus_to_choi(dec.to_channel(), tol), choi)
                    if residual <= tol.eps_residual:
                        _log.info('found K=%d at N=%d (residual %.3e)',
                                  len(dec), n, residual)
                        return SearchReport(FOUND, dec, r, r ** 2, trace,
                                            residual, n)
    finally:
        if pool is not None:
            pool.shutdown()

    warnings.warn(message=f'No random-unitary decomposition found (best '
                          f'objective {best:.3e}); this does not show that '
                          f'the channel is not random-unitary',
                  category=UserWarning)
    return SearchReport(NOT_FOUND, None, r, r ** 2, trace, best)


def decompose_channel(ch, cfg=None, tol=default_tol):
    """
    Decomposition by the best available method: closed form for qubits,
    numerical search otherwise
    :param ch: KrausChannel Object
    :param cfg: SearchConfig Object (search only)
    :param tol: ToleranceConfig Object
    :return: SearchReport Object
    """
    if ch.d_in == 2 and ch.d_out == 2:
        choi = kraus_to_choi(ch, tol)
        r = choi_rank(choi, tol)
        if not is_unital(ch, tol):
            return SearchReport(NOT_UNITAL, cardinality_bound_low=r,
                                cardinality_bound_high=r ** 2)
        dec = pauli_decompose_qubit(ch, tol)
        residual = choi_distance(kraus_to_choi(dec.to_channel(), tol), choi)
        return SearchReport(FOUND, dec, r, r ** 2, [], residual, len(dec))
    return search_decomposition(ch, cfg, tol)


def reduce_cardinality(ch, povm, tol=default_tol):
    """
    Shrink a classical-dice POVM to an extremal one (at most r^2 elements)
    and turn it into a random-unitary decomposition. The POVM is read on
    the ancilla of the canonical dilation of ch; a POVM built for the Kraus
    operators of ch as given is accepted as well. The extremal component
    of largest weight is used; every component satisfies the dice condition.
    :param ch: KrausChannel Object, any Kraus representation
    :param povm: RankOnePovm Object satisfying the dice condition
    :param tol: ToleranceConfig Object
    :return: RuDecomposition Object with K <= r^2
    """
    canonical = canonical_kraus(ch, tol)
    families = [fam for fam in (canonical, ch) if len(fam) == povm.r]
    if not families:
        raise DimensionError(f'POVM lives on dimension {povm.r}, the '
                             f'channel ancilla has dimension {len(canonical)}')
    for family in families:
        if check_dice_condition(family, povm, tol) is not None:
            split = extremal_decompose(povm, tol)
            component = split.components[int(np.argmax(split.weights))]
            return decomposition_from_povm(family, component, tol)
    raise PreconditionError('POVM does not satisfy the classical-dice '
                            'condition for this channel')


def entropy_and_bounds(dec, choi, tol=default_tol):
    """
    Entropy of the mixing distribution against the bounds
    H <= 2 log2(rank R_E) and H <= 4 log2(d). The first bound is guaranteed
    for decompositions with K <= rank^2 only.
    :param dec: RuDecomposition Object
    :param choi: ChoiOperator Object of the channel
    :param tol: ToleranceConfig Object
    :return: H (bits), rank bound (bits), dimension bound (bits), ok (bool)
    """
    h_bits = dec.entropy()
    bound_rank = 2 * float(np.log2(choi_rank(choi, tol)))
    bound_dim = 4 * float(np.log2(choi.d_in))
    return h_bits, bound_rank, bound_dim, bool(h_bits <= bound_rank
                                               + tol.eps_eq)


def generate_random_ru_channel(d, k, seed=None):
    """
    Random-unitary test channel: p from the flat simplex and k independent
    Haar unitaries; deterministic per seed
    :param d: dimension
    :param k: number of unitaries, 1 <= k <= d^2
    :param seed: seed or numpy Generator
    :return: KrausChannel Object, ground-truth RuDecomposition Object
    """
    if not 1 <= k <= d ** 2:
        raise ValueError(f'k must lie in [1, {d ** 2}] for d={d}, got {k}')
    rng = make_rng(seed)
    probs = random_simplex(k, rng)
    unitaries = [haar_unitary(d, rng) for _ in range(k)]
    dec = RuDecomposition(probs, unitaries)
    return dec.to_channel(), dec
