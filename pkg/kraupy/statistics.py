#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Statistics Module

Random sampling of unitaries, states, probability vectors and POVM frames,
and the Shannon entropy of mixing distributions.
"""

import numpy as np
from kraupy.matrices import polar_unitary


def make_rng(seed):
    """
    Normalise a seed argument to a numpy Generator
    :param seed: None, int, SeedSequence or Generator
    :return: numpy.random.Generator
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def derived_seeds(seed, count):
    """
    Independent child seeds of a master seed, one per restart or worker.
    Deterministic per (seed, count).
    :param seed: master seed (int)
    :param count: number of children
    :return: list of numpy.random.SeedSequence
    """
    return np.random.SeedSequence(seed).spawn(count)


def shannon_entropy(probs):
    """
    Shannon entropy in bits, -sum p log2 p, zero terms skipped
    :param probs: probability vector
    :return: entropy (bits)
    """
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def haar_unitary(d, rng):
    """
    Haar-random unitary: QR of a complex Ginibre matrix with the phases of
    the diagonal of R moved into Q
    :param d: dimension
    :param rng: numpy Generator
    :return: d x d unitary
    """
    z = (rng.standard_normal((d, d))
         + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases


def haar_state(d, rng):
    """
    Uniformly random pure state vector
    :param d: dimension
    :param rng: numpy Generator
    :return: unit vector of length d
    """
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def random_simplex(k, rng):
    """
    Probability vector drawn from the flat (Dirichlet(1, ..., 1)) simplex
    :param k: number of outcomes
    :param rng: numpy Generator
    :return: probability vector of length k
    """
    return rng.dirichlet(np.ones(k))


def random_coisometry(r, n, rng):
    """
    Haar-random r x n matrix with orthonormal rows (M M^dag = I_r)
    :param r: number of rows
    :param n: number of columns (n >= r)
    :param rng: numpy Generator
    :return: r x n co-isometry
    """
    if n < r:
        raise ValueError(f'A co-isometry needs n >= r, got r={r}, n={n}')
    z = (rng.standard_normal((r, n))
         + 1j * rng.standard_normal((r, n))) / np.sqrt(2.0)
    return polar_unitary(z)
