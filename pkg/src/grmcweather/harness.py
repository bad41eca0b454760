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
import math
import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .ablation import Ablation
from .benchmark import Benchmark
from .completion import CompletionResult, evaluate_rmse
from .exceptions import DataError, EvaluationError, SolverError
from .experiments import build_folds, results_frame, summary_frame
from .grals import grals_complete
from .graphs import build_spatial_graph, build_temporal_graph, laplacian
from .tuning import Tuning

_LOGGER = logging.getLogger(__name__)


class MonteCarloHarness(Tuning, Benchmark, Ablation):
    """
    Paired-fold cross-validation over one scenario.

    Folds are built once per (matrix, stage) and reused by every
    hyperparameter combination, baseline and ablation case; per-fold rows
    accumulate in self.records.
    """

    def __init__(self, plan, stations, workers=1):
        self.plan = plan
        self.stations = list(stations)
        self.workers = max(1, int(workers))
        self.records = []
        self.tuning_records = []
        self._cache_lock = threading.Lock()
        self._fold_cache = {}
        self._graph_cache = {}

    def __repr__(self):
        return '<MonteCarloHarness {} seed={} stations={}>'.format(
            self.plan.scenario.kind, self.plan.seed, len(self.stations))

    @property
    def scenario(self):
        return self.plan.scenario.kind

    def folds(self, matrix, stage):
        """Folds of the 'train' or 'test' stage for matrix, cached."""
        if stage == 'train':
            n_weeks = self.plan.train_weeks
            masks = self.plan.masks_per_week_train
        else:
            n_weeks = self.plan.test_weeks
            masks = self.plan.masks_per_week_test
        key = (id(matrix), stage)
        with self._cache_lock:
            cached = self._fold_cache.get(key)
            if cached is None or cached[0] is not matrix:
                folds = build_folds(matrix, n_weeks, masks,
                                    self.plan.scenario, self.plan.seed)
                cached = self._fold_cache[key] = (matrix, folds)
        return cached[1]

    def laplacians(self, hyper, m):
        """(temporal m x m, spatial n x n) Laplacians for hyper, cached."""
        key = (hyper.spatial_config(), hyper.lagset(), m)
        with self._cache_lock:
            if key not in self._graph_cache:
                spatial = build_spatial_graph(self.stations,
                                              hyper.spatial_config())
                temporal = build_temporal_graph(m, hyper.lagset())
                self._graph_cache[key] = (laplacian(temporal),
                                          laplacian(spatial))
            return self._graph_cache[key]

    def grals_solver(self, hyper, keep_temporal=True, keep_spatial=True):
        """Fold solver running GRALS with graphs rebuilt from hyper."""
        def solve(fold):
            L_row, L_col = self.laplacians(hyper, fold.train.m)
            params = hyper.grals_params(self.plan, seed=fold.seed)
            return grals_complete(fold.train,
                                  L_row if keep_temporal else None,
                                  L_col if keep_spatial else None,
                                  params)[1]
        return solve

    def score_fold(self, method, solver, fold):
        """Run solver on one fold and return its result row."""
        iterations, converged, rmse = 0, True, math.nan
        try:
            out = solver(fold)
            if isinstance(out, CompletionResult):
                X_hat = out.X_hat
                iterations, converged = out.iterations, out.converged
            else:
                X_hat = out
            if not converged and self.plan.drop_unconverged:
                _LOGGER.warning('%s %s week %s mask %s did not converge',
                                self, method, fold.week, fold.mask_id)
            else:
                rmse = evaluate_rmse(X_hat, fold.truth, fold.holdout)
        except (SolverError, EvaluationError, DataError,
                np.linalg.LinAlgError) as error:
            _LOGGER.warning('%s %s week %s mask %s failed: %s', self, method,
                            fold.week, fold.mask_id, error)
        _LOGGER.debug('%s %s week %s mask %s rmse %.4f', self, method,
                      fold.week, fold.mask_id, rmse)
        return {'method': method, 'scenario': self.scenario,
                'week': fold.week, 'mask_id': fold.mask_id, 'rmse': rmse,
                'iterations': iterations, 'converged': bool(converged)}

    def run_folds(self, method, solver, folds, record=True):
        """Score solver on every fold, in fold order."""
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(
                    lambda fold: self.score_fold(method, solver, fold),
                    folds))
        else:
            rows = [self.score_fold(method, solver, fold) for fold in folds]
        if record:
            self.records.extend(rows)
        return rows

    def results_frame(self):
        return results_frame(self.records)

    def summary_frame(self):
        return summary_frame(self.records)


def tune(plan, grid, train, meta, workers=1):
    return MonteCarloHarness(plan, meta, workers).tune(grid, train)


def evaluate_test(best, plan, test, meta, solver=None, workers=1):
    return MonteCarloHarness(plan, meta, workers).evaluate_test(
        best, test, solver=solver)


def run_ablation(case, best, plan, test, meta, workers=1):
    return MonteCarloHarness(plan, meta, workers).run_ablation(
        case, best, test)


def run_baselines(plan, test, meta, best=None, methods=None, workers=1):
    return MonteCarloHarness(plan, meta, workers).run_baselines(
        test, best=best, methods=methods)
