# -*- coding: utf-8 -*-
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, version 2 of the License.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# vim:sw=4:ts=4:et
"""
Graph-regularized matrix completion by alternating conjugate gradient.

Minimizes over X = A @ B.T

    1/2 ||P_Omega(M - A B^T)||_F^2
    + lambda_L/2 (Tr(A^T L_row A) + Tr(B^T L_col B))
    + lambda_a/2 ||A||_F^2 + lambda_b/2 ||B||_F^2

exactly in A with B fixed, then in B with A fixed. Each subproblem is a
positive definite linear system whose operator is applied implicitly.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .completion import CompletionResult, FactorPair, check_observations
from .config import (
    DEFAULT_CG_MAX_ITER,
    DEFAULT_CG_TOL,
    DEFAULT_LAMBDA,
    DEFAULT_MAX_OUTER,
    DEFAULT_OUTER_TOL,
    DEFAULT_RANK,
    OUT_OF_RANGE_FACTOR,
)
from .exceptions import DataError, SingularSubproblemError
from .linalg import conjugate_gradient
from .utils import relative_change

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GralsParams(object):
    # pylint: disable=invalid-name
    r: int = DEFAULT_RANK
    lambda_L: float = DEFAULT_LAMBDA
    lambda_a: float = DEFAULT_LAMBDA
    lambda_b: float = DEFAULT_LAMBDA
    max_outer: int = DEFAULT_MAX_OUTER
    outer_tol: float = DEFAULT_OUTER_TOL
    cg_tol: float = DEFAULT_CG_TOL
    cg_max_iter: int = DEFAULT_CG_MAX_ITER
    seed: int = 0

    def __post_init__(self):
        if int(self.r) < 1:
            raise DataError('rank must be at least 1, got {}'.format(self.r))
        for name in ('lambda_L', 'lambda_a', 'lambda_b'):
            if not getattr(self, name) >= 0:
                raise DataError('{} must be non-negative'.format(name))
        if not self.cg_tol > 0:
            raise DataError('cg_tol must be positive')
        if int(self.max_outer) < 1 or int(self.cg_max_iter) < 1:
            raise DataError('iteration caps must be at least 1')


def _check_laplacian(lap, size, name):
    if lap is None:
        return None
    if lap.shape != (size, size):
        raise DataError('{} is {}, expected {}x{}'.format(
            name, lap.shape, size, size))
    return lap


def factor_operator(weights, fixed, lap, lam_graph, lam_frob):
    """
    Implicit Hessian of the subproblem in the free factor V (rows of V
    correspond to rows of weights):

        V -> (W * (V fixed^T)) fixed + lam_graph L V + lam_frob V

    W is the 0/1 observation pattern, so the first term applies each row's
    Gram matrix sum_{j observed} b_j b_j^T.
    """
    use_graph = lam_graph != 0 and lap is not None

    def apply(V):
        out = (weights * (V @ fixed.T)) @ fixed
        if use_graph:
            out += lam_graph * (lap @ V)
        if lam_frob != 0:
            out += lam_frob * V
        return out

    return apply


def _solve_factor(filled, weights, fixed, lap, lam_graph, lam_frob, start,
                  params, side):
    # pylint: disable=too-many-arguments
    rank = fixed.shape[1]
    if lam_frob == 0 and (lam_graph == 0 or lap is None):
        counts = weights.sum(axis=1)
        short = np.nonzero(counts < rank)[0]
        if short.size:
            raise SingularSubproblemError(
                '{} subproblem is singular: {} {}(s) with fewer than {} '
                'observations and no regularization'.format(
                    side, short.size, 'row' if side == 'A' else 'column',
                    rank), rows=short.tolist())
    apply = factor_operator(weights, fixed, lap, lam_graph, lam_frob)
    rhs = filled @ fixed
    result = conjugate_gradient(apply, rhs, x0=start, tol=params.cg_tol,
                                max_iter=params.cg_max_iter)
    if not result.converged:
        _LOGGER.warning('CG for %s stopped after %i iterations at relative '
                        'residual %.3g', side, result.iterations,
                        result.residual)
    return result


def solve_left_factor(matrix, B, L_row, params, A0=None):
    """Exact minimizer in A of the objective with B fixed."""
    L_row = _check_laplacian(L_row, matrix.m, 'L_row')
    return _solve_factor(matrix.filled(0.0), matrix.mask.astype(np.float64),
                         np.asarray(B, dtype=np.float64), L_row,
                         params.lambda_L, params.lambda_a, A0, params, 'A')


def solve_right_factor(matrix, A, L_col, params, B0=None):
    """Exact minimizer in B of the objective with A fixed."""
    L_col = _check_laplacian(L_col, matrix.n, 'L_col')
    return _solve_factor(matrix.filled(0.0).T,
                         matrix.mask.T.astype(np.float64),
                         np.asarray(A, dtype=np.float64), L_col,
                         params.lambda_L, params.lambda_b, B0, params, 'B')


def _graph_term(lap, V):
    return float(np.sum(V * (lap @ V)))


def grals_objective(matrix, factors, L_row, L_col, params):
    """Value of the graph-regularized objective at the given factors."""
    A, B = factors
    residual = matrix.mask * (matrix.filled(0.0) - A @ B.T)
    value = 0.5 * float(np.sum(residual ** 2))
    if params.lambda_L != 0:
        graph = 0.0
        if L_row is not None:
            graph += _graph_term(L_row, A)
        if L_col is not None:
            graph += _graph_term(L_col, B)
        value += 0.5 * params.lambda_L * graph
    value += 0.5 * params.lambda_a * float(np.sum(A ** 2))
    value += 0.5 * params.lambda_b * float(np.sum(B ** 2))
    return value


def initial_factors(m, n, params):
    """Seeded Gaussian factors scaled by 1/sqrt(r)."""
    rng = np.random.default_rng(params.seed)
    scale = 1.0 / np.sqrt(params.r)
    return FactorPair(rng.standard_normal((m, params.r)) * scale,
                      rng.standard_normal((n, params.r)) * scale)


def _check_range(X_hat, matrix):
    observed = np.abs(matrix.values[matrix.mask])
    bound = OUT_OF_RANGE_FACTOR * max(float(observed.max()), 1.0)
    worst = float(np.max(np.abs(X_hat)))
    if not worst <= bound:
        _LOGGER.warning('GRALS completion reaches %.4g, more than %g times '
                        'the largest observed magnitude', worst,
                        OUT_OF_RANGE_FACTOR)


def grals_complete(matrix, L_row, L_col, params):
    """
    Complete matrix with graph regularization on rows (L_row, m x m,
    temporal) and columns (L_col, n x n, spatial). Either Laplacian may be
    None, which stands for the empty graph.

    Return: (FactorPair, CompletionResult)
    """
    # pylint: disable=too-many-locals
    check_observations(matrix)
    L_row = _check_laplacian(L_row, matrix.m, 'L_row')
    L_col = _check_laplacian(L_col, matrix.n, 'L_col')

    A, B = initial_factors(matrix.m, matrix.n, params)
    previous = grals_objective(matrix, (A, B), L_row, L_col, params)
    trace = []
    cg_residuals = []
    cg_iterations = []
    converged = False
    for outer in range(1, params.max_outer + 1):
        step = solve_left_factor(matrix, B, L_row, params, A0=A)
        A = step.x
        cg_residuals.append(step.residual)
        cg_iterations.append(step.iterations)

        step = solve_right_factor(matrix, A, L_col, params, B0=B)
        B = step.x
        cg_residuals.append(step.residual)
        cg_iterations.append(step.iterations)

        value = grals_objective(matrix, (A, B), L_row, L_col, params)
        trace.append(value)
        _LOGGER.debug('GRALS outer iteration %i objective %.10g', outer,
                      value)
        if relative_change(value, previous) < params.outer_tol:
            converged = True
            break
        previous = value

    if not converged:
        _LOGGER.warning('GRALS reached %i outer iterations without '
                        'converging', params.max_outer)
    factors = FactorPair(A, B)
    X_hat = factors.product()
    _check_range(X_hat, matrix)
    result = CompletionResult(
        X_hat=X_hat, objective_trace=tuple(trace),
        iterations=len(trace), converged=converged, method='grals',
        info={'cg_residuals': tuple(cg_residuals),
              'cg_iterations': tuple(cg_iterations)})
    return factors, result
