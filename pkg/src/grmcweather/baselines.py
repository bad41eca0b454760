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
"""Reference completion methods: mean fill, IDW and iterative PCA."""
import logging

import numpy as np

from .completion import CompletionResult, check_observations
from .config import (
    DEFAULT_IDW_POWER,
    DEFAULT_ITERATIVE_MAX_ITER,
    DEFAULT_ITERATIVE_TOL,
)
from .exceptions import DataError
from .graphs import distance_matrix

_LOGGER = logging.getLogger(__name__)


def _column_means(matrix):
    counts = matrix.mask.sum(axis=0)
    empty = np.nonzero(counts == 0)[0]
    if empty.size:
        raise DataError('station(s) {} have no observation'.format(
            ', '.join(matrix.col_index[j] for j in empty)))
    return matrix.filled(0.0).sum(axis=0) / counts


def mean_fill_complete(matrix):
    """Fill every missing entry with its station's observed mean."""
    check_observations(matrix)
    means = _column_means(matrix)
    X_hat = np.where(matrix.mask, matrix.filled(0.0), means[None, :])
    return CompletionResult(X_hat=X_hat, method='mean')


def idw_complete(matrix, stations, power=DEFAULT_IDW_POWER):
    """
    Inverse distance weighting across stations observed at the same row.

    Entries of rows with no observed station are left as NaN and listed in
    result.info['uncompletable'].
    """
    check_observations(matrix)
    if len(stations) != matrix.n:
        raise DataError('{} stations for {} columns'.format(
            len(stations), matrix.n))
    distances = distance_matrix(stations)
    off_diagonal = ~np.eye(matrix.n, dtype=bool)
    if np.any(distances[off_diagonal] <= 0):
        raise DataError('two stations share coordinates')
    weights = np.zeros_like(distances)
    weights[off_diagonal] = distances[off_diagonal] ** -float(power)

    observed = matrix.mask.astype(np.float64)
    numerator = (matrix.filled(0.0) * observed) @ weights
    denominator = observed @ weights
    with np.errstate(invalid='ignore', divide='ignore'):
        estimate = numerator / denominator
    estimate[denominator == 0] = np.nan

    X_hat = np.where(matrix.mask, matrix.filled(0.0), estimate)
    missing = ~matrix.mask & ~np.isfinite(X_hat)
    uncompletable = [(int(i), int(j)) for i, j in zip(*np.nonzero(missing))]
    if uncompletable:
        _LOGGER.warning('IDW left %i entries uncompletable (no observed '
                        'station at their row)', len(uncompletable))
    return CompletionResult(X_hat=X_hat, method='idw',
                            info={'uncompletable': uncompletable})


def pca_complete(matrix, r, tol=DEFAULT_ITERATIVE_TOL,
                 max_iter=DEFAULT_ITERATIVE_MAX_ITER):
    """
    Iterative PCA imputation: start from station means, then repeatedly
    center the columns, keep the leading r principal components and
    overwrite the missing entries with the reconstruction.
    """
    check_observations(matrix)
    if not 1 <= r < min(matrix.shape):
        raise DataError('PCA rank must be in [1, {}), got {}'.format(
            min(matrix.shape), r))
    mask = matrix.mask
    observed = matrix.filled(0.0)
    X = np.where(mask, observed, _column_means(matrix)[None, :])
    trace = []
    converged = False
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        means = X.mean(axis=0)
        U, sigma, Vt = np.linalg.svd(X - means, full_matrices=False)
        reconstruction = (U[:, :r] * sigma[:r]) @ Vt[:r] + means
        trace.append(0.5 * float(np.sum((mask * (observed -
                                                 reconstruction)) ** 2)))
        X_new = np.where(mask, observed, reconstruction)
        change = np.linalg.norm(X_new - X)
        scale = np.linalg.norm(X)
        X = X_new
        if change <= tol * scale:
            converged = True
            break
    if not converged:
        _LOGGER.warning('PCA imputation reached %i iterations without '
                        'converging', max_iter)
    return CompletionResult(X_hat=X, objective_trace=tuple(trace),
                            iterations=iterations, converged=converged,
                            method='pca')
