#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Constants Module
"""

import numpy as np


# Tolerance parameters
class ToleranceConfig(object):
    def __init__(self, eps_eq=1e-9, eps_psd=1e-9, eps_rank=1e-9,
                 eps_unitary=1e-8, eps_residual=1e-6):
        """
        Numerical tolerances shared by every kraupy operation
        :param eps_eq: absolute tolerance for equalities (completeness,
        Hermiticity, trace, probability sums)
        :param eps_psd: smallest eigenvalue allowed is -eps_psd
        :param eps_rank: relative eigenvalue / singular value cutoff
        (multiplied by the largest one)
        :param eps_unitary: bound on ||U^dag U - I||_F for unitaries
        :param eps_residual: bound on reconstruction residuals of numerically
        found decompositions (Frobenius norm on Choi operators)
        """
        for name, value in (('eps_eq', eps_eq), ('eps_psd', eps_psd),
                            ('eps_rank', eps_rank),
                            ('eps_unitary', eps_unitary),
                            ('eps_residual', eps_residual)):
            if not value > 0:
                raise ValueError(f'{name} must be strictly positive, '
                                 f'got {value}')
        self.eps_eq = float(eps_eq)
        self.eps_psd = float(eps_psd)
        self.eps_rank = float(eps_rank)
        self.eps_unitary = float(eps_unitary)
        self.eps_residual = float(eps_residual)

    def __repr__(self):
        return (f'ToleranceConfig: eps_eq: {self.eps_eq} '
                f'eps_psd: {self.eps_psd} eps_rank: {self.eps_rank} '
                f'eps_unitary: {self.eps_unitary} '
                f'eps_residual: {self.eps_residual}')

    def replace(self, **kwargs):
        """
        Copy of these tolerances with some fields overridden
        :return: ToleranceConfig
        """
        fields = vars(self).copy()
        fields.update(kwargs)
        return ToleranceConfig(**fields)


# Random-unitary search parameters
class SearchConfig(object):
    def __init__(self, n_schedule=None, restarts=20, max_iters=5000, step=0.1,
                 obj_tol=1e-12, seed=0, polish_tol=1e-26, workers=1):
        """
        Settings of the multi-start search over rank-one POVMs
        :param n_schedule: candidate POVM cardinalities, tried in order
        (None: r, r+1, ..., r^2 for an ancilla of dimension r)
        :param restarts: random starting points per cardinality
        :param max_iters: descent iterations per restart
        :param step: initial step size of the line search
        :param obj_tol: objective value accepted as a solution
        :param seed: master seed (64-bit unsigned integer)
        :param polish_tol: objective value at which polishing stops
        :param workers: threads over which restarts are spread
        """
        if n_schedule is not None:
            n_schedule = [int(n) for n in n_schedule]
            if not n_schedule or min(n_schedule) < 1:
                raise ValueError('n_schedule must be a non-empty list of '
                                 'positive integers')
        for name, value in (('restarts', restarts), ('max_iters', max_iters),
                            ('workers', workers)):
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f'{name} must be a positive integer, '
                                 f'got {value}')
        if not step > 0 or not obj_tol > 0 or not polish_tol > 0:
            raise ValueError('step, obj_tol and polish_tol must be positive')
        if not 0 <= int(seed) < 2 ** 64:
            raise ValueError('seed must be an unsigned 64-bit integer')
        self.n_schedule = n_schedule
        self.restarts = int(restarts)
        self.max_iters = int(max_iters)
        self.step = float(step)
        self.obj_tol = float(obj_tol)
        self.seed = int(seed)
        self.polish_tol = float(polish_tol)
        self.workers = int(workers)

    def __repr__(self):
        return (f'SearchConfig: n_schedule: {self.n_schedule} '
                f'restarts: {self.restarts} max_iters: {self.max_iters} '
                f'step: {self.step} obj_tol: {self.obj_tol} '
                f'seed: {self.seed}')

    def schedule(self, r):
        """
        Cardinalities to try for an ancilla of dimension r
        :param r: ancilla dimension (rank of the Choi operator)
        :return: list of integers within [r, r^2]
        """
        if self.n_schedule is None:
            return list(range(r, r ** 2 + 1))
        bad = [n for n in self.n_schedule if not r <= n <= r ** 2]
        if bad:
            raise ValueError(f'Schedule values {bad} outside [{r}, {r ** 2}]')
        return list(self.n_schedule)


default_tol = ToleranceConfig()
default_search = SearchConfig()


# Pauli matrices
sigma_0 = np.eye(2, dtype=complex)
sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
sigma_y = np.array([[0, -1j], [1j, 0]], dtype=complex)
sigma_z = np.array([[1, 0], [0, -1]], dtype=complex)
paulis = (sigma_0, sigma_x, sigma_y, sigma_z)

for _sigma in paulis:
    _sigma.setflags(write=False)
