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
import logging

import numpy as np

from .completion import CompletionResult, check_observations
from .config import DEFAULT_ITERATIVE_MAX_ITER, DEFAULT_ITERATIVE_TOL
from .exceptions import DataError

_LOGGER = logging.getLogger(__name__)


def _shrunk_svd(X, lam):
    U, sigma, Vt = np.linalg.svd(X, full_matrices=False)
    return U, np.maximum(sigma - lam, 0.0), Vt


def soft_threshold_svd(X, lam):
    """U diag(max(sigma - lam, 0)) V^T from the thin SVD of X."""
    if lam < 0:
        raise DataError('threshold must be non-negative, got {}'.format(lam))
    U, shrunk, Vt = _shrunk_svd(np.asarray(X, dtype=np.float64), lam)
    return (U * shrunk) @ Vt


def softimpute_objective(matrix, X, lam):
    """1/2 ||P_Omega(M - X)||_F^2 + lam ||X||_*"""
    residual = matrix.mask * (matrix.filled(0.0) - X)
    nuclear = float(np.sum(np.linalg.svd(X, compute_uv=False)))
    return 0.5 * float(np.sum(residual ** 2)) + lam * nuclear


def softimpute_complete(matrix, lam, tol=DEFAULT_ITERATIVE_TOL,
                        max_iter=DEFAULT_ITERATIVE_MAX_ITER):
    """
    Iterate X <- S_lam(P_Omega(M) + P_Omega_bar(X)) from X = 0 until the
    relative Frobenius change falls under tol.
    """
    check_observations(matrix)
    if lam < 0:
        raise DataError('threshold must be non-negative, got {}'.format(lam))
    observed = matrix.filled(0.0)
    mask = matrix.mask
    X = np.zeros(matrix.shape)
    trace = []
    converged = False
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        U, shrunk, Vt = _shrunk_svd(np.where(mask, observed, X), lam)
        X_new = (U * shrunk) @ Vt
        residual = mask * (observed - X_new)
        trace.append(0.5 * float(np.sum(residual ** 2)) +
                     lam * float(np.sum(shrunk)))
        change = np.linalg.norm(X_new - X)
        scale = np.linalg.norm(X)
        X = X_new
        _LOGGER.debug('SoftImpute iteration %i objective %.10g rank %i',
                      iterations, trace[-1], int(np.count_nonzero(shrunk)))
        if change <= tol * scale:
            converged = True
            break

    if not converged:
        _LOGGER.warning('SoftImpute reached %i iterations without '
                        'converging', max_iter)
    return CompletionResult(X_hat=X, objective_trace=tuple(trace),
                            iterations=iterations, converged=converged,
                            method='softimpute',
                            info={'rank': int(np.count_nonzero(shrunk))})
