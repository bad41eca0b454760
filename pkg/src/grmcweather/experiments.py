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
"""Monte Carlo cross-validation building blocks."""
import configparser
import logging
import math
from collections import namedtuple
from dataclasses import asdict, dataclass, field, replace

import numpy as np
import pandas as pd
from sklearn.model_selection import ParameterSampler

from .config import (
    DEFAULT_ALTITUDE_THRESHOLD,
    DEFAULT_CG_MAX_ITER,
    DEFAULT_CG_TOL,
    DEFAULT_IDW_POWER,
    DEFAULT_ITERATIVE_MAX_ITER,
    DEFAULT_ITERATIVE_TOL,
    DEFAULT_LAMBDA,
    DEFAULT_MASKS_PER_WEEK_TEST,
    DEFAULT_MASKS_PER_WEEK_TRAIN,
    DEFAULT_MAX_OUTER,
    DEFAULT_N_SAMPLES,
    DEFAULT_OUTER_TOL,
    DEFAULT_PCA_RANK,
    DEFAULT_RANK,
    DEFAULT_SOFTIMPUTE_LAMBDA,
    DEFAULT_TEST_WEEKS,
    DEFAULT_TRAIN_WEEKS,
    GRID_ALTITUDE_LIMIT,
    GRID_K,
    GRID_LAGSETS,
    GRID_LAMBDAS,
    GRID_RANKS,
    GRID_WEIGHTED,
    GRID_WEIGHT_RULES,
    WEEK_ROWS,
)
from .data import parse_timestamps, slice_weeks
from .exceptions import DataError, InsufficientDataError
from .graphs import LagSet, SpatialGraphConfig
from .grals import GralsParams
from .masks import MaskScenario, apply_mask, generate_mask
from .utils import fold_seed, format_lags, parse_lags

_LOGGER = logging.getLogger(__name__)

RESULT_COLUMNS = ('method', 'scenario', 'week', 'mask_id', 'rmse',
                  'iterations', 'converged')
SUMMARY_COLUMNS = ('method', 'scenario', 'mean_rmse')

Fold = namedtuple('Fold', 'week mask_id seed truth train holdout mask')


@dataclass(frozen=True)
class Hyperparameters(object):
    """One point of the search space: solver weights plus graph design."""
    # pylint: disable=invalid-name,too-many-instance-attributes
    r: int = DEFAULT_RANK
    lambda_L: float = DEFAULT_LAMBDA
    lambda_a: float = DEFAULT_LAMBDA
    lambda_b: float = DEFAULT_LAMBDA
    k: int = 3
    weighted: bool = True
    altitude_limit: bool = True
    lags: tuple = (1,)
    weight_rule: str = 'unit'
    altitude_threshold: float = DEFAULT_ALTITUDE_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, 'lags', parse_lags(self.lags))
        self.spatial_config()
        self.lagset()

    def spatial_config(self):
        return SpatialGraphConfig(k=int(self.k), weighted=bool(self.weighted),
                                  altitude_limit=bool(self.altitude_limit),
                                  altitude_threshold=self.altitude_threshold)

    def lagset(self):
        return LagSet(self.lags, self.weight_rule)

    def grals_params(self, plan, seed=0):
        return GralsParams(r=int(self.r), lambda_L=self.lambda_L,
                           lambda_a=self.lambda_a, lambda_b=self.lambda_b,
                           max_outer=plan.max_outer, outer_tol=plan.outer_tol,
                           cg_tol=plan.cg_tol, cg_max_iter=plan.cg_max_iter,
                           seed=seed)

    def as_row(self):
        row = asdict(self)
        row['lags'] = format_lags(self.lags)
        return row


@dataclass(frozen=True)
class HyperGrid(object):
    """Candidate values for every hyperparameter."""
    # pylint: disable=invalid-name
    r: tuple = GRID_RANKS
    lambda_L: tuple = GRID_LAMBDAS
    lambda_a: tuple = GRID_LAMBDAS
    lambda_b: tuple = GRID_LAMBDAS
    k: tuple = GRID_K
    weighted: tuple = GRID_WEIGHTED
    altitude_limit: tuple = GRID_ALTITUDE_LIMIT
    lags: tuple = GRID_LAGSETS
    weight_rule: tuple = GRID_WEIGHT_RULES

    def __post_init__(self):
        for name, values in self.distributions().items():
            if not values:
                raise DataError('no candidate for {}'.format(name))
        object.__setattr__(self, 'lags',
                           tuple(parse_lags(lags) for lags in self.lags))

    def distributions(self):
        return dict((name, list(values)) for name, values
                    in asdict(self).items())

    @property
    def size(self):
        return int(np.prod([len(values) for values
                            in self.distributions().values()]))

    def sample(self, n_samples, seed):
        """
        Draw up to n_samples distinct combinations from the Cartesian
        product, without replacement, reproducibly for a given seed.
        """
        n_iter = min(int(n_samples), self.size)
        sampler = ParameterSampler(self.distributions(), n_iter=n_iter,
                                   random_state=int(seed))
        return [Hyperparameters(**params) for params in sampler]


@dataclass(frozen=True)
class BaselineParams(object):
    idw_power: float = DEFAULT_IDW_POWER
    pca_rank: int = DEFAULT_PCA_RANK
    softimpute_lambda: float = DEFAULT_SOFTIMPUTE_LAMBDA
    tol: float = DEFAULT_ITERATIVE_TOL
    max_iter: int = DEFAULT_ITERATIVE_MAX_ITER


@dataclass(frozen=True)
class ExperimentPlan(object):
    """Folds, scenario and solver budget of a cross-validation run."""
    # pylint: disable=too-many-instance-attributes
    train_weeks: int = DEFAULT_TRAIN_WEEKS
    masks_per_week_train: int = DEFAULT_MASKS_PER_WEEK_TRAIN
    test_weeks: int = DEFAULT_TEST_WEEKS
    masks_per_week_test: int = DEFAULT_MASKS_PER_WEEK_TEST
    scenario: MaskScenario = field(default_factory=MaskScenario)
    n_samples: int = DEFAULT_N_SAMPLES
    seed: int = 0
    max_outer: int = DEFAULT_MAX_OUTER
    outer_tol: float = DEFAULT_OUTER_TOL
    cg_tol: float = DEFAULT_CG_TOL
    cg_max_iter: int = DEFAULT_CG_MAX_ITER
    drop_unconverged: bool = False
    baselines: BaselineParams = field(default_factory=BaselineParams)

    def __post_init__(self):
        for name in ('train_weeks', 'masks_per_week_train', 'test_weeks',
                     'masks_per_week_test', 'n_samples'):
            if int(getattr(self, name)) < 1:
                raise DataError('{} must be at least 1'.format(name))

    def with_scenario(self, kind):
        return replace(self, scenario=replace(self.scenario, kind=kind))


ABLATION_CONSTRAINTS = (
    'none',
    'all_lambdas_zero',
    'frob_lambdas_zero',
    'lambda_L_zero',
    'spatial_laplacian_zero',
    'temporal_laplacian_zero',
)


@dataclass(frozen=True)
class AblationCase(object):
    id: int
    constraint: str

    def __post_init__(self):
        if ABLATION_CONSTRAINTS[self.id - 1:self.id] != (self.constraint,):
            raise DataError('case {} cannot carry constraint {!r}'.format(
                self.id, self.constraint))

    @classmethod
    def from_id(cls, case_id):
        case_id = int(case_id)
        if not 1 <= case_id <= len(ABLATION_CONSTRAINTS):
            raise DataError('ablation case must be in 1..{}, got {}'.format(
                len(ABLATION_CONSTRAINTS), case_id))
        return cls(case_id, ABLATION_CONSTRAINTS[case_id - 1])

    def constrain(self, best):
        """
        Return (hyperparameters, keep_temporal, keep_spatial) with the
        case's a priori condition applied on top of best.
        """
        if self.constraint == 'all_lambdas_zero':
            return replace(best, lambda_L=0.0, lambda_a=0.0,
                           lambda_b=0.0), True, True
        if self.constraint == 'frob_lambdas_zero':
            return replace(best, lambda_a=0.0, lambda_b=0.0), True, True
        if self.constraint == 'lambda_L_zero':
            return replace(best, lambda_L=0.0), True, True
        if self.constraint == 'spatial_laplacian_zero':
            return best, True, False
        if self.constraint == 'temporal_laplacian_zero':
            return best, False, True
        return best, True, True


ABLATION_CASES = tuple(AblationCase.from_id(case_id) for case_id
                       in range(1, len(ABLATION_CONSTRAINTS) + 1))


def _as_utc(boundary):
    if isinstance(boundary, str):
        return parse_timestamps(pd.Series([boundary])).iloc[0]
    boundary = pd.Timestamp(boundary)
    if boundary.tzinfo is None:
        boundary = boundary.tz_localize('UTC')
    return boundary


def split_train_test(matrix, boundary):
    """Rows strictly before boundary form the training set, the rest test."""
    boundary = _as_utc(boundary)
    index = matrix.row_index
    if not len(index) or boundary < index[0] or boundary > index[-1]:
        raise DataError('boundary {} outside {} .. {}'.format(
            boundary, index[0] if len(index) else None,
            index[-1] if len(index) else None))
    cut = int(index.searchsorted(boundary, side='left'))
    return matrix.rows(0, cut), matrix.rows(cut, matrix.m)


def build_folds(matrix, n_weeks, masks_per_week, scenario, seed):
    """
    Pick n_weeks gap-free weeks of matrix (seeded, without replacement) and
    generate masks_per_week holdout masks on each.

    Week choice depends on seed only, so every scenario sees the same weeks;
    each mask seed derives from (seed, week index, mask index).
    """
    weeks = slice_weeks(matrix, gap_free_only=True)
    if len(weeks) < n_weeks:
        raise InsufficientDataError(
            'need {} gap-free weeks, found {}'.format(n_weeks, len(weeks)),
            found=len(weeks))
    rng = np.random.default_rng(fold_seed(seed))
    chosen = sorted(rng.choice(len(weeks), size=n_weeks, replace=False))
    folds = []
    for position in chosen:
        week = weeks[position]
        week_id = week.first_row // WEEK_ROWS
        for mask_id in range(masks_per_week):
            mask_seed = fold_seed(seed, week_id, mask_id)
            mask = generate_mask(week.matrix, replace(scenario,
                                                      seed=mask_seed))
            train, holdout = apply_mask(week.matrix, mask)
            folds.append(Fold(week_id, mask_id, mask_seed, week.matrix,
                              train, holdout, mask))
    _LOGGER.debug('Built %i %s folds over weeks %s', len(folds),
                  scenario.kind, [weeks[p].first_row for p in chosen])
    return folds


def mean_rmse(values, label=''):
    """Arithmetic mean of the finite per-fold RMSEs."""
    values = np.asarray(list(values), dtype=np.float64)
    finite = np.isfinite(values)
    if not finite.all():
        _LOGGER.warning('%s: %i of %i folds failed and are excluded from '
                        'the mean', label, int((~finite).sum()), values.size)
    if not finite.any():
        return math.nan
    return float(np.mean(values[finite]))


def results_frame(rows):
    return pd.DataFrame(list(rows), columns=list(RESULT_COLUMNS))


def summary_frame(rows):
    """Mean RMSE per (method, scenario), in first-seen order."""
    frame = results_frame(rows)
    summary = []
    for (method, scenario), group in frame.groupby(['method', 'scenario'],
                                                   sort=False):
        summary.append((method, scenario,
                        mean_rmse(group['rmse'],
                                  '{}/{}'.format(method, scenario))))
    return pd.DataFrame(summary, columns=list(SUMMARY_COLUMNS))


def write_manifest(path, command, sections):
    """
    Write an INI manifest: a [global] section, a section named after the
    command, and any extra sections. Values are written with str().
    """
    parser = configparser.ConfigParser()
    parser.optionxform = str
    for name, options in sections.items():
        parser[name] = dict((key, '' if value is None else str(value))
                            for key, value in options.items())
    if not parser.has_section('global'):
        parser.add_section('global')
    parser.set('global', 'command', command)
    with open(path, 'w') as handle:
        parser.write(handle)


def write_hyperparameters(path, hyper, section='best'):
    """Store hyperparameters as one INI section."""
    parser = configparser.ConfigParser()
    parser.optionxform = str
    parser[section] = dict((key, str(value))
                           for key, value in hyper.as_row().items())
    with open(path, 'w') as handle:
        parser.write(handle)


def read_hyperparameters(path, section='best'):
    parser = configparser.ConfigParser()
    parser.optionxform = str
    if not parser.read(path):
        raise DataError('cannot read hyperparameters from {}'.format(path))
    if not parser.has_section(section):
        raise DataError('{}: no [{}] section'.format(path, section))
    options = parser[section]
    try:
        return Hyperparameters(
            r=options.getint('r', DEFAULT_RANK),
            lambda_L=options.getfloat('lambda_L', DEFAULT_LAMBDA),
            lambda_a=options.getfloat('lambda_a', DEFAULT_LAMBDA),
            lambda_b=options.getfloat('lambda_b', DEFAULT_LAMBDA),
            k=options.getint('k', 3),
            weighted=options.getboolean('weighted', True),
            altitude_limit=options.getboolean('altitude_limit', True),
            lags=options.get('lags', '1'),
            weight_rule=options.get('weight_rule', 'unit'),
            altitude_threshold=options.getfloat(
                'altitude_threshold', DEFAULT_ALTITUDE_THRESHOLD))
    except ValueError as error:
        raise DataError('{}: {}'.format(path, error))
