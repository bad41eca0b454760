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
from collections import namedtuple

import numpy as np
import pandas as pd

from .exceptions import SolverError
from .experiments import mean_rmse

_LOGGER = logging.getLogger(__name__)

TuneResult = namedtuple('TuneResult', 'best table')

TUNING_COLUMNS = ('combination', 'r', 'lambda_L', 'lambda_a', 'lambda_b',
                  'k', 'weighted', 'altitude_limit', 'lags', 'weight_rule',
                  'altitude_threshold', 'mean_rmse', 'n_folds')


class Tuning(object):

    def tune(self, grid, train):
        """
        Randomized search: score plan.n_samples combinations of grid on
        the training folds and keep the lowest fold-mean RMSE.

        Return: TuneResult(best Hyperparameters, DataFrame of every
        sampled combination with its fold-mean RMSE)
        """
        combinations = grid.sample(self.plan.n_samples, self.plan.seed)
        folds = self.folds(train, 'train')
        _LOGGER.info('%s tuning %i combination(s) on %i folds', self,
                     len(combinations), len(folds))
        table = []
        for index, hyper in enumerate(combinations):
            rows = self.run_folds('grals', self.grals_solver(hyper), folds,
                                  record=False)
            for row in rows:
                row['combination'] = index
            self.tuning_records.extend(rows)
            scores = [row['rmse'] for row in rows]
            entry = hyper.as_row()
            entry.update(combination=index,
                         mean_rmse=mean_rmse(scores, 'combination {}'.format(
                             index)),
                         n_folds=int(np.isfinite(scores).sum()))
            table.append(entry)
            _LOGGER.info('%s combination %i: %s -> %.4f', self, index,
                         hyper, entry['mean_rmse'])
        table = pd.DataFrame(table, columns=list(TUNING_COLUMNS))
        scores = table['mean_rmse'].values.astype(np.float64)
        if not np.isfinite(scores).any():
            raise SolverError('every sampled combination failed on every '
                              'fold')
        best = combinations[int(np.nanargmin(scores))]
        return TuneResult(best, table)
