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
from collections import OrderedDict

from .baselines import idw_complete, mean_fill_complete, pca_complete
from .experiments import Hyperparameters, mean_rmse
from .softimpute import softimpute_complete


class Benchmark(object):

    def evaluate_test(self, best, test, solver=None, method='grals'):
        """
        Mean RMSE over the test folds. GRALS with graphs rebuilt from best
        unless another fold solver is given.
        """
        folds = self.folds(test, 'test')
        if solver is None:
            solver = self.grals_solver(best)
        rows = self.run_folds(method, solver, folds)
        return mean_rmse([row['rmse'] for row in rows],
                         '{} {}'.format(self, method))

    def baseline_solvers(self, best=None):
        """Fold solvers of every method, keyed by method name."""
        params = self.plan.baselines
        return OrderedDict([
            ('idw', lambda fold: idw_complete(fold.train, self.stations,
                                              params.idw_power)),
            ('pca', lambda fold: pca_complete(fold.train, params.pca_rank,
                                              params.tol, params.max_iter)),
            ('softimpute', lambda fold: softimpute_complete(
                fold.train, params.softimpute_lambda, params.tol,
                params.max_iter)),
            ('grals', self.grals_solver(best or Hyperparameters())),
            ('mean', lambda fold: mean_fill_complete(fold.train)),
        ])

    def run_baselines(self, test, best=None, methods=None):
        """
        Score every method on the same test folds.

        Return: OrderedDict method -> mean RMSE
        """
        if methods is None:
            methods = self.baseline_solvers(best)
        scores = OrderedDict()
        for name, solver in methods.items():
            scores[name] = self.evaluate_test(best, test, solver=solver,
                                              method=name)
        return scores
