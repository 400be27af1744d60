#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
POVM Module

Rank-one POVMs {|a_i><a_i|} on an ancilla of dimension r, their
extremality, and their convex decomposition into extremal rank-one POVMs.

A rank-one POVM is extremal exactly when its elements are linearly
independent as Hermitian operators, so an extremal one never has more than
r^2 elements. A linear dependence sum_i c_i |a_i><a_i| = 0 (c real) lets the
POVM be split into two POVMs whose elements are nonnegative multiples of
the original ones, each with at least one element fewer.
"""

import logging
import numpy as np
from kraupy.constants import default_tol
from kraupy.channel import dual_apply, kraus_mixing
from kraupy.errors import (RepresentationError, DimensionError,
                           InconsistentDecompositionError, NumericalFailure)
from kraupy.statistics import make_rng, random_coisometry

_log = logging.getLogger(__name__)


class RankOnePovm(object):
    """
    Rank-one POVM given by its vectors a_i (elements |a_i><a_i|; the norm
    of a_i carries the weight of the element)
    """
    def __init__(self, vectors, labels=None, prune_tol=0.0):
        """
        :param vectors: N x r array-like, one vector per row
        :param labels: index of each element in the POVM this one was
        derived from (default 0..N-1)
        :param prune_tol: elements with squared norm <= prune_tol are
        dropped (exact zeros always are)
        """
        vectors = np.array(vectors, dtype=complex)
        if vectors.ndim != 2 or vectors.shape[1] < 1:
            raise ValueError('POVM vectors must form an N x r array')
        if not np.all(np.isfinite(vectors)):
            raise ValueError('POVM vectors have non-finite entries')
        if labels is None:
            labels = np.arange(vectors.shape[0])
        labels = np.array(labels, dtype=int)
        if labels.shape != (vectors.shape[0],):
            raise DimensionError('One label per POVM vector is required')
        weights = np.sum(np.abs(vectors) ** 2, axis=1)
        keep = weights > prune_tol
        if not keep.any():
            raise RepresentationError('POVM has no nonzero element')
        self.vectors = vectors[keep]
        self.labels = labels[keep]
        self.vectors.setflags(write=False)
        self.labels.setflags(write=False)
        self.r = vectors.shape[1]

    def __repr__(self):
        return f'RankOnePovm: r: {self.r} elements: {len(self)}'

    def __len__(self):
        return self.vectors.shape[0]

    @classmethod
    def from_columns(cls, mat, labels=None):
        """POVM whose vectors are the columns of an r x N matrix"""
        return cls(np.asarray(mat).T, labels=labels)

    def columns(self):
        """r x N matrix with the POVM vectors as columns"""
        return self.vectors.T

    def elements(self):
        """N x r x r array of the elements |a_i><a_i|"""
        return np.einsum('ia,ib->iab', self.vectors, self.vectors.conj())

    def weights(self):
        """Traces of the elements, ||a_i||^2"""
        return np.sum(np.abs(self.vectors) ** 2, axis=1)


class ExtremalSplit(object):
    """
    Convex combination sum_k w_k P_k of extremal rank-one POVMs reproducing
    a given rank-one POVM element by element
    """
    def __init__(self, weights, components, n_original):
        """
        :param weights: probability vector over components
        :param components: list of RankOnePovm, labels index the original
        :param n_original: number of elements of the original POVM
        """
        self.weights = np.array(weights, dtype=float)
        self.components = list(components)
        self.support_maps = [comp.labels for comp in self.components]
        self.n_original = n_original

    def __repr__(self):
        sizes = [len(comp) for comp in self.components]
        return (f'ExtremalSplit: components: {len(self.components)} '
                f'sizes: {sizes} weights: {self.weights}')

    def reconstruct(self):
        """
        Elementwise recombination sum_k w_k P_k
        :return: n_original x r x r array
        """
        r = self.components[0].r
        total = np.zeros((self.n_original, r, r), dtype=complex)
        for w, comp in zip(self.weights, self.components):
            total[comp.labels] += w * comp.elements()
        return total

    def residual(self, povm):
        """Largest entrywise deviation of the recombination from povm"""
        return float(np.max(np.abs(self.reconstruct() - povm.elements())))


def validate_povm(povm, tol=default_tol):
    """
    Completeness sum_i |a_i><a_i| = I
    :param povm: RankOnePovm Object
    :param tol: ToleranceConfig Object
    :return: bool
    """
    total = np.sum(povm.elements(), axis=0)
    return bool(np.max(np.abs(total - np.eye(povm.r))) <= tol.eps_eq)


def _coefficient_matrix(povm):
    # Elements as columns of a real 2r^2 x N matrix; its column rank is the
    # real-linear rank of the Hermitian elements.
    flat = povm.elements().reshape(len(povm), -1)
    return np.vstack([flat.real.T, flat.imag.T])


def _singular_system(povm):
    coeff = _coefficient_matrix(povm)
    _, s, vt = np.linalg.svd(coeff, full_matrices=True)
    return s, vt


def _element_rank(s, tol):
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol.eps_rank * s[0]))


def is_extremal(povm, tol=default_tol):
    """
    Extremality of a rank-one POVM: its N elements are real-linearly
    independent (always false when N > r^2)
    :param povm: RankOnePovm Object
    :param tol: ToleranceConfig Object
    :return: bool
    """
    if len(povm) > povm.r ** 2:
        return False
    s, _ = _singular_system(povm)
    return _element_rank(s, tol) == len(povm)


def find_null_combination(povm, tol=default_tol):
    """
    Real coefficients c with sum_i c_i |a_i><a_i| = 0, taken along the right
    singular vector of the smallest singular value, scaled so that
    max |c_i| = 1 and the largest-magnitude entry is positive
    :param povm: RankOnePovm Object
    :param tol: ToleranceConfig Object
    :return: real ndarray of length N, or None when the POVM is extremal
    """
    if is_extremal(povm, tol):
        return None
    _, vt = _singular_system(povm)
    c = vt[-1]
    return c / c[np.argmax(np.abs(c))]


def extremal_split_once(povm, c, tol=default_tol):
    """
    Split a POVM along a null combination c into lam P + (1 - lam) Q.
    With t+ = max{t : 1 + t c_i >= 0} and t- = max{t : 1 - t c_i >= 0},
    P has weights 1 + t+ c_i, Q has weights 1 - t- c_i, and
    lam = t- / (t+ + t-). Elements of weight <= eps_eq are removed.
    :param povm: RankOnePovm Object
    :param c: real null combination of length N
    :param tol: ToleranceConfig Object
    :return: lam, P, Q
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (len(povm),):
        raise DimensionError('Null combination length does not match POVM')
    neg, pos = c < 0, c > 0
    if not neg.any() or not pos.any():
        raise NumericalFailure('Null combination has entries of one sign '
                               'only; the split direction is unbounded')
    bound_plus = np.where(neg, -1 / np.where(neg, c, -1), np.inf)
    bound_minus = np.where(pos, 1 / np.where(pos, c, 1), np.inf)
    i_plus, i_minus = np.argmin(bound_plus), np.argmin(bound_minus)
    t_plus, t_minus = bound_plus[i_plus], bound_minus[i_minus]

    w_plus = np.clip(1 + t_plus * c, 0, None)
    w_minus = np.clip(1 - t_minus * c, 0, None)
    w_plus[i_plus] = 0.0
    w_minus[i_minus] = 0.0
    lam = t_minus / (t_plus + t_minus)

    p_part = _reweighted(povm, w_plus, tol)
    q_part = _reweighted(povm, w_minus, tol)
    return lam, p_part, q_part


def _reweighted(povm, weights, tol):
    keep = weights > tol.eps_eq
    vectors = povm.vectors[keep] * np.sqrt(weights[keep])[:, None]
    return RankOnePovm(vectors, labels=povm.labels[keep])


def _extremal_face_point(povm, tol, max_levels):
    # Walk along null directions, always keeping the P branch, until an
    # extremal POVM is reached; every step drops at least one element.
    current = povm
    for level in range(max_levels + 1):
        c = find_null_combination(current, tol)
        if c is None:
            return current
        _, current, _ = extremal_split_once(current, c, tol)
        _log.debug('face walk level %d: %d elements', level, len(current))
    raise NumericalFailure(f'Extremal split did not terminate within '
                           f'{max_levels} levels')


def extremal_decompose(povm, tol=default_tol):
    """
    Decompose a rank-one POVM into extremal rank-one POVMs. Each step is a
    binary convex split X = lam E + (1 - lam) Y with E extremal, found by
    repeated extremal_split_once, and Y carrying at least one element fewer
    than X; Y is decomposed in turn. Every component has at most r^2
    elements and the number of components is at most N - r + 1.
    :param povm: RankOnePovm Object
    :param tol: ToleranceConfig Object
    :return: ExtremalSplit Object
    """
    n = len(povm)
    max_levels = max(n - povm.r, 0)
    current = RankOnePovm(povm.vectors, labels=np.arange(n))
    rest = 1.0
    weights, components = [], []
    for _ in range(max_levels + 1):
        extremal = _extremal_face_point(current, tol, max_levels)
        if len(extremal) == len(current):
            weights.append(rest)
            components.append(extremal)
            return ExtremalSplit(weights, components, n)

        # Relative weight of each element of E with respect to X
        index = {label: i for i, label in enumerate(current.labels)}
        cur_w = current.weights()
        ratio = np.zeros(len(current))
        for vector, label in zip(extremal.vectors, extremal.labels):
            i = index[label]
            ratio[i] = np.sum(np.abs(vector) ** 2) / cur_w[i]
        i_max = np.argmax(ratio)
        lam = 1 / ratio[i_max]
        if lam >= 1 - tol.eps_eq:
            weights.append(rest)
            components.append(extremal)
            return ExtremalSplit(weights, components, n)

        weights.append(rest * lam)
        components.append(extremal)
        rest *= 1 - lam
        remainder = np.clip((1 - lam * ratio) / (1 - lam), 0, None)
        remainder[i_max] = 0.0
        current = _reweighted(current, remainder, tol)
        _log.debug('peeled extremal component of %d elements (weight %.3e), '
                   '%d elements left', len(extremal), weights[-1],
                   len(current))
    raise NumericalFailure(f'Extremal decomposition did not terminate within '
                           f'{max_levels} levels')


def check_dice_condition(ch, povm, tol=default_tol):
    """
    Classical-dice condition: the dual ancilla channel maps every element
    to a multiple of the identity, E~*(|a_i><a_i|) = p_i I
    :param ch: KrausChannel Object whose Kraus operators index the ancilla
    :param povm: RankOnePovm Object with r = number of Kraus operators
    :param tol: ToleranceConfig Object
    :return: probability vector (p_i), or None if the condition fails
    """
    if povm.r != len(ch):
        raise DimensionError(f'POVM lives on dimension {povm.r}, the '
                             f'channel ancilla has dimension {len(ch)}')
    ident = np.eye(ch.d_in)
    probs = []
    for alpha in povm.vectors:
        image = dual_apply(ch, alpha)
        p = np.trace(image).real / ch.d_in
        if np.max(np.abs(image - p * ident)) > tol.eps_eq:
            return None
        probs.append(p)
    return np.array(probs)


def random_povm(r, n, seed=None):
    """
    Random rank-one POVM with n elements on dimension r: the columns of a
    Haar-random r x n co-isometry
    :param r: ancilla dimension
    :param n: number of elements (n >= r)
    :param seed: seed or numpy Generator
    :return: RankOnePovm Object
    """
    return RankOnePovm.from_columns(random_coisometry(r, n, make_rng(seed)))


def povm_from_decomposition(ch, dec, tol=default_tol):
    """
    Rank-one instrument vectors realising a random-unitary decomposition on
    the ancilla of ch: sqrt(p_i) U_i = sum_j conj(a_ij) K_j
    :param ch: KrausChannel Object (usually canonical)
    :param dec: RuDecomposition Object
    :param tol: ToleranceConfig Object
    :return: RankOnePovm Object
    """
    ops = [np.sqrt(p) * u for p, u in zip(dec.probs, dec.unitaries)]
    coeffs = kraus_mixing(ch, ops, tol)
    povm = RankOnePovm(coeffs.conj())
    total = np.sum(povm.elements(), axis=0)
    if np.max(np.abs(total - np.eye(povm.r))) > tol.eps_residual:
        raise InconsistentDecompositionError(
            'Recovered ancilla vectors do not resolve the identity; the '
            'decomposition does not match the channel')
    return povm
