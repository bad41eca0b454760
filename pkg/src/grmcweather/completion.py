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
"""Completion results, scoring and their CSV exports."""
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .config import OBSERVATION_COLUMNS, TRACE_COLUMNS
from .data import TIMESTAMP_FORMAT
from .exceptions import DataError, EvaluationError

# Completion methods the command line and the benchmark know by name.
METHODS = ('grals', 'softimpute', 'idw', 'pca', 'mean')


class FactorPair(namedtuple('FactorPair', 'A B')):
    """Factors of the completion X = A @ B.T."""
    __slots__ = ()

    def __new__(cls, A, B):
        A, B = np.asarray(A, dtype=np.float64), np.asarray(B, dtype=np.float64)
        if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[1]:
            raise DataError('factors {} and {} do not share a rank'.format(
                A.shape, B.shape))
        if A.shape[1] < 1:
            raise DataError('rank must be at least 1')
        return super(FactorPair, cls).__new__(cls, A, B)

    @property
    def rank(self):
        return self.A.shape[1]

    def product(self):
        return self.A @ self.B.T


@dataclass(frozen=True, eq=False)
class CompletionResult(object):
    """Output of a completion solver."""
    X_hat: np.ndarray
    objective_trace: tuple = ()
    iterations: int = 0
    converged: bool = True
    method: str = ''
    info: dict = field(default_factory=dict)


def check_observations(matrix):
    """Reject matrices a solver cannot start from."""
    if matrix.n_observed == 0:
        raise DataError('{!r} has no observed entry'.format(matrix))
    if not matrix.observed_finite():
        raise DataError('{!r} has NaN or infinite observed entries'.format(
            matrix))


def _holdout_mask(holdout, shape):
    holdout = np.asarray(holdout)
    if holdout.dtype == bool:
        if holdout.shape != shape:
            raise EvaluationError('holdout shape {} does not match {}'.format(
                holdout.shape, shape))
        return holdout
    mask = np.zeros(shape, dtype=bool)
    if holdout.size:
        rows, cols = np.asarray(holdout, dtype=np.int64).reshape(-1, 2).T
        mask[rows, cols] = True
    return mask


def evaluate_rmse(X_hat, truth, holdout):
    """
    Root mean squared error (degC) of X_hat over the holdout entries.

    holdout is a boolean m x n array or a sequence of (i, j) pairs; every
    entry must be observed in truth.
    """
    X_hat = np.asarray(X_hat, dtype=np.float64)
    if X_hat.shape != truth.shape:
        raise EvaluationError('completion {} does not match truth {}'.format(
            X_hat.shape, truth.shape))
    holdout = _holdout_mask(holdout, truth.shape)
    if not holdout.any():
        raise EvaluationError('empty holdout')
    if np.any(holdout & ~truth.mask):
        raise EvaluationError('holdout contains unobserved entries')
    predicted = X_hat[holdout]
    if not np.all(np.isfinite(predicted)):
        raise EvaluationError('{} holdout entries were not completed'.format(
            int((~np.isfinite(predicted)).sum())))
    errors = predicted - truth.values[holdout]
    return float(np.sqrt(np.mean(errors ** 2)))


def completion_frame(X_hat, matrix):
    """
    Long-format frame of every entry: observed values are kept, the others
    come from X_hat and are marked 'imputed'.
    """
    X_hat = np.asarray(X_hat, dtype=np.float64)
    m, n = matrix.shape
    rows, cols = np.divmod(np.arange(m * n), n)
    observed = matrix.mask.ravel()
    values = np.where(observed, matrix.filled(0.0).ravel(), X_hat.ravel())
    frame = pd.DataFrame({
        'timestamp': matrix.row_index[rows].strftime(TIMESTAMP_FORMAT),
        'station_id': np.asarray(matrix.col_index, dtype=object)[cols],
        'temperature_c': values,
        'source': np.where(observed, 'observed', 'imputed'),
    }, columns=list(OBSERVATION_COLUMNS) + ['source'])
    return frame


def export_completion(X_hat, matrix, path, sep=','):
    completion_frame(X_hat, matrix).to_csv(path, index=False, sep=sep,
                                           float_format='%.17g')


def export_trace(result, path, sep=','):
    frame = pd.DataFrame({'iter': np.arange(1, len(result.objective_trace)
                                            + 1),
                          'objective': list(result.objective_trace)},
                         columns=list(TRACE_COLUMNS))
    frame.to_csv(path, index=False, sep=sep, float_format='%.17g')
