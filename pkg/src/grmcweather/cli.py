# -*- coding: utf-8 -*-
# PYTHON_ARGCOMPLETE_OK
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
"""grmc-cli: synthesize, inspect, complete and benchmark station data."""
import argparse
import configparser
import logging
import os
import sys

import argcomplete
import pandas as pd

from .baselines import idw_complete, mean_fill_complete, pca_complete
from .completion import (
    METHODS,
    evaluate_rmse,
    export_completion,
    export_trace,
)
from .config import (
    DEFAULT_ALTITUDE_THRESHOLD,
    DEFAULT_CG_MAX_ITER,
    DEFAULT_CG_TOL,
    DEFAULT_CONFIG_FILE,
    DEFAULT_IDW_POWER,
    DEFAULT_ITERATIVE_MAX_ITER,
    DEFAULT_ITERATIVE_TOL,
    DEFAULT_LAMBDA,
    DEFAULT_MASKS_PER_WEEK_TEST,
    DEFAULT_MASKS_PER_WEEK_TRAIN,
    DEFAULT_MAX_OUTER,
    DEFAULT_MISSING_FRACTION,
    DEFAULT_N_SAMPLES,
    DEFAULT_OUTER_TOL,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_PCA_RANK,
    DEFAULT_RANK,
    DEFAULT_SOFTIMPUTE_LAMBDA,
    DEFAULT_TEST_BOUNDARY,
    DEFAULT_TEST_WEEKS,
    DEFAULT_TRAIN_WEEKS,
    MANIFEST_NAME,
    OUTPUT_DIR_ENV,
)
from .data import (
    export_observations,
    ingest_observations,
    read_metadata,
    slice_weeks,
    synthesize_network,
    write_metadata,
)
from .exceptions import (
    DataError,
    EvaluationError,
    InsufficientDataError,
    SolverError,
)
from .experiments import (
    ABLATION_CASES,
    AblationCase,
    BaselineParams,
    ExperimentPlan,
    HyperGrid,
    Hyperparameters,
    read_hyperparameters,
    results_frame,
    summary_frame,
    split_train_test,
    write_hyperparameters,
    write_manifest,
)
from .grals import GralsParams, grals_complete
from .graphs import (
    LagSet,
    SpatialGraphConfig,
    build_spatial_graph,
    build_temporal_graph,
    export_edges,
    laplacian,
    read_edges,
    removed_edges,
)
from .harness import MonteCarloHarness
from .masks import (
    SCENARIOS,
    MaskScenario,
    apply_mask,
    export_mask,
    generate_mask,
    read_mask,
)
from .softimpute import softimpute_complete
from .utils import format_lags, parse_lags, percent, str2bool

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INSUFFICIENT = 3
EXIT_SOLVER = 4

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)
SEPARATORS = {'csv': ',', 'tsv': '\t'}
WEIGHT_CHOICES = {'unit': 'unit', 'inverse': 'inverse_lag',
                  'inverse_lag': 'inverse_lag'}

OBSERVATIONS_NAME = 'observations.csv'
STATIONS_NAME = 'stations.csv'

GLOBAL_OPTIONS = ('seed', 'output_dir', 'format')
_NOT_RECORDED = ('config', 'verbose', 'command', 'handler')


def _list_of(convert):
    def parse(text):
        try:
            return tuple(convert(part) for part in str(text).split(',')
                         if part.strip())
        except ValueError as error:
            raise argparse.ArgumentTypeError(str(error))
    return parse


def _lags(text):
    try:
        return parse_lags(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def _lagsets(text):
    """'1;1,2;1,2,3' -> ((1,), (1, 2), (1, 2, 3))"""
    return tuple(_lags(part) for part in str(text).split(';')
                 if part.strip())


def _add_dataset_args(parser):
    parser.add_argument('--obs', help='observations CSV (default: '
                        '<output-dir>/{})'.format(OBSERVATIONS_NAME))
    parser.add_argument('--meta', help='station metadata CSV (default: '
                        '<output-dir>/{})'.format(STATIONS_NAME))


def _add_hyper_args(parser):
    parser.add_argument('--rank', type=int, default=DEFAULT_RANK)
    parser.add_argument('--lambda-L', type=float, default=DEFAULT_LAMBDA)
    parser.add_argument('--lambda-a', type=float, default=DEFAULT_LAMBDA)
    parser.add_argument('--lambda-b', type=float, default=DEFAULT_LAMBDA)
    parser.add_argument('--k', type=int, default=3,
                        help='spatial neighbours per station')
    parser.add_argument('--weighted', action=argparse.BooleanOptionalAction,
                        default=True, help='1/distance edge weights')
    parser.add_argument('--altitude-limit',
                        action=argparse.BooleanOptionalAction, default=True)
    parser.add_argument('--altitude-threshold', type=float,
                        default=DEFAULT_ALTITUDE_THRESHOLD)
    parser.add_argument('--lags', type=_lags, default='1')
    parser.add_argument('--weights', choices=sorted(WEIGHT_CHOICES),
                        default='unit', help='temporal edge weights')


def _add_solver_args(parser):
    parser.add_argument('--max-outer', type=int, default=DEFAULT_MAX_OUTER)
    parser.add_argument('--outer-tol', type=float, default=DEFAULT_OUTER_TOL)
    parser.add_argument('--cg-tol', type=float, default=DEFAULT_CG_TOL)
    parser.add_argument('--cg-max-iter', type=int,
                        default=DEFAULT_CG_MAX_ITER)


def _add_baseline_args(parser):
    parser.add_argument('--lambda', dest='softimpute_lambda', type=float,
                        default=DEFAULT_SOFTIMPUTE_LAMBDA,
                        help='SoftImpute threshold')
    parser.add_argument('--power', type=float, default=DEFAULT_IDW_POWER,
                        help='IDW distance exponent')
    parser.add_argument('--pca-rank', type=int, default=DEFAULT_PCA_RANK)
    parser.add_argument('--tol', type=float, default=DEFAULT_ITERATIVE_TOL)
    parser.add_argument('--max-iter', type=int,
                        default=DEFAULT_ITERATIVE_MAX_ITER)


def _add_plan_args(parser):
    parser.add_argument('--boundary',
                        help='first test timestamp (default: {} when inside '
                        'the data)'.format(DEFAULT_TEST_BOUNDARY))
    parser.add_argument('--scenario', choices=SCENARIOS + ('both',),
                        default='both')
    parser.add_argument('--fraction', type=float,
                        default=DEFAULT_MISSING_FRACTION)
    parser.add_argument('--train-weeks', type=int,
                        default=DEFAULT_TRAIN_WEEKS)
    parser.add_argument('--masks-per-week-train', type=int,
                        default=DEFAULT_MASKS_PER_WEEK_TRAIN)
    parser.add_argument('--test-weeks', type=int, default=DEFAULT_TEST_WEEKS)
    parser.add_argument('--masks-per-week-test', type=int,
                        default=DEFAULT_MASKS_PER_WEEK_TEST)
    parser.add_argument('--drop-unconverged',
                        action=argparse.BooleanOptionalAction, default=False)
    parser.add_argument('--workers', type=int, default=1)
    _add_solver_args(parser)


def build_parser():
    """Return (parser, {command: subparser})."""
    parser = argparse.ArgumentParser(
        prog='grmc-cli',
        description='Graph-regularized matrix completion for weather '
                    'station networks.')
    parser.add_argument('--config',
                        help='INI file with [global] and per-command '
                             'sections (default: {} when present)'.format(
                                 DEFAULT_CONFIG_FILE))
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--output-dir',
                        default=os.environ.get(OUTPUT_DIR_ENV,
                                               DEFAULT_OUTPUT_DIR))
    parser.add_argument('--format', choices=sorted(SEPARATORS),
                        default='csv', help='result table format')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    commands = {}

    sub = subparsers.add_parser('synth', help='write a synthetic dataset')
    sub.add_argument('--stations', type=int, default=50)
    sub.add_argument('--weeks', type=int, default=10)
    sub.set_defaults(handler=cmd_synth)
    commands['synth'] = sub

    sub = subparsers.add_parser('ingest-check',
                                help='validate and summarize a dataset')
    _add_dataset_args(sub)
    sub.set_defaults(handler=cmd_ingest_check)
    commands['ingest-check'] = sub

    sub = subparsers.add_parser('graph', help='export a graph edge list')
    sub.add_argument('family', nargs='?', choices=('spatial', 'temporal'))
    sub.add_argument('--meta')
    sub.add_argument('--k', type=int, default=3)
    sub.add_argument('--weighted', action=argparse.BooleanOptionalAction,
                     default=False)
    sub.add_argument('--altitude-limit', type=float, nargs='?',
                     const=DEFAULT_ALTITUDE_THRESHOLD, metavar='METERS',
                     help='drop candidate pairs whose altitudes differ by '
                          'more than METERS')
    sub.add_argument('--rows', type=int)
    sub.add_argument('--lags', type=_lags, default='1')
    sub.add_argument('--weights', choices=sorted(WEIGHT_CHOICES),
                     default='unit')
    sub.set_defaults(handler=cmd_graph)
    commands['graph'] = sub

    sub = subparsers.add_parser('mask', help='generate a holdout mask')
    _add_dataset_args(sub)
    sub.add_argument('--scenario', choices=SCENARIOS, default='block')
    sub.add_argument('--week', type=int, default=0,
                     help='week slice index')
    sub.add_argument('--fraction', type=float,
                     default=DEFAULT_MISSING_FRACTION)
    sub.set_defaults(handler=cmd_mask)
    commands['mask'] = sub

    sub = subparsers.add_parser('complete', help='complete a dataset')
    _add_dataset_args(sub)
    sub.add_argument('--method', default='grals',
                     help='one of: {}'.format(', '.join(METHODS)))
    sub.add_argument('--mask', help='holdout mask CSV to score against')
    sub.add_argument('--row-edges', metavar='CSV',
                     help='temporal edge list replacing the --lags graph')
    sub.add_argument('--col-edges', metavar='CSV',
                     help='spatial edge list replacing the --k graph')
    _add_hyper_args(sub)
    _add_solver_args(sub)
    _add_baseline_args(sub)
    sub.set_defaults(handler=cmd_complete)
    commands['complete'] = sub

    sub = subparsers.add_parser('tune', help='randomized hyperparameter '
                                             'search')
    _add_dataset_args(sub)
    _add_plan_args(sub)
    sub.add_argument('--samples', dest='n_samples', type=int,
                     default=DEFAULT_N_SAMPLES)
    sub.add_argument('--grid-ranks', type=_list_of(int))
    sub.add_argument('--grid-lambdas', type=_list_of(float))
    sub.add_argument('--grid-k', type=_list_of(int))
    sub.add_argument('--grid-weighted', type=_list_of(str2bool))
    sub.add_argument('--grid-altitude-limit', type=_list_of(str2bool))
    sub.add_argument('--grid-lags', type=_lagsets,
                     help="lag sets separated by ';', e.g. '1;1,2'")
    sub.add_argument('--grid-weight-rules', type=_list_of(str))
    sub.set_defaults(handler=cmd_tune)
    commands['tune'] = sub

    sub = subparsers.add_parser('benchmark', help='compare every method on '
                                                  'the test folds')
    _add_dataset_args(sub)
    _add_plan_args(sub)
    _add_hyper_args(sub)
    _add_baseline_args(sub)
    sub.add_argument('--best', help='hyperparameters written by tune')
    sub.add_argument('--methods', type=_list_of(str),
                     help='comma separated subset of: {}'.format(
                         ', '.join(METHODS)))
    sub.set_defaults(handler=cmd_benchmark)
    commands['benchmark'] = sub

    sub = subparsers.add_parser('ablate', help='GRALS under a priori '
                                               'constraints')
    _add_dataset_args(sub)
    _add_plan_args(sub)
    _add_hyper_args(sub)
    sub.add_argument('--best', help='hyperparameters written by tune')
    sub.add_argument('--case', default='all',
                     help="case ids 1-6, comma separated, or 'all'")
    sub.set_defaults(handler=cmd_ablate)
    commands['ablate'] = sub
    return parser, commands


def _configure_logging(verbose):
    logging.basicConfig(
        level=LOG_LEVELS[min(int(verbose), len(LOG_LEVELS) - 1)],
        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)


def _config_path(args):
    if args.config:
        if not os.path.isfile(args.config):
            raise DataError('config file {} not found'.format(args.config))
        return args.config
    default = os.path.expanduser(DEFAULT_CONFIG_FILE)
    return default if os.path.isfile(default) else None


def _apply_section(parser, options, path):
    # pylint: disable=protected-access
    actions = dict((action.dest, action) for action in parser._actions)
    defaults = {}
    for key, value in options.items():
        dest = key.replace('-', '_')
        if dest in _NOT_RECORDED:
            continue
        action = actions.get(dest)
        if action is None:
            _LOGGER.warning('%s: ignoring unknown option %r', path, key)
            continue
        if action.nargs == 0:
            try:
                value = str2bool(value)
            except ValueError as error:
                raise DataError('{}: {}: {}'.format(path, key, error))
        defaults[dest] = value
    parser.set_defaults(**defaults)


def apply_config(parser, commands, command, path):
    """Install INI values as parser defaults; flags still override."""
    config = configparser.ConfigParser()
    config.optionxform = str
    try:
        config.read(path)
    except configparser.Error as error:
        raise DataError('cannot parse {}: {}'.format(path, error))
    _LOGGER.info('Reading options from %s', path)
    if config.has_section('global'):
        _apply_section(parser, config['global'], path)
    if config.has_section(command):
        _apply_section(commands[command], config[command], path)


def parse_args(argv=None):
    parser, commands = build_parser()
    argcomplete.autocomplete(parser)
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    path = _config_path(args)
    if path:
        apply_config(parser, commands, args.command, path)
        args = parser.parse_args(argv)
    return args


def _ini_value(value):
    if isinstance(value, (tuple, list)):
        if value and isinstance(value[0], (tuple, list)):
            return ';'.join(format_lags(item) for item in value)
        return ','.join(str(item) for item in value)
    return str(value)


def manifest_sections(args):
    """Resolved options split into [global] and [<command>]."""
    options = dict((key, value) for key, value in vars(args).items()
                   if key not in _NOT_RECORDED and value is not None)
    return {
        'global': dict((key, _ini_value(options.pop(key)))
                       for key in GLOBAL_OPTIONS if key in options),
        args.command: dict((key, _ini_value(value))
                           for key, value in sorted(options.items())),
    }


def _output(args, name):
    return os.path.join(args.output_dir, name)


def _table(args, stem):
    return _output(args, '{}.{}'.format(stem, args.format))


def _write_table(frame, args, stem):
    path = _table(args, stem)
    frame.to_csv(path, index=False, sep=SEPARATORS[args.format],
                 float_format='%.17g')
    return path


def _dataset(args):
    return ingest_observations(args.obs or _output(args, OBSERVATIONS_NAME),
                               args.meta or _output(args, STATIONS_NAME))


def _train_test(matrix, boundary):
    """Split at boundary; without one, the default boundary when it lies
    inside the data, else the whole matrix serves both stages."""
    if boundary is None:
        default = pd.Timestamp(DEFAULT_TEST_BOUNDARY, tz='UTC')
        index = matrix.row_index
        if not index[0] < default <= index[-1]:
            _LOGGER.warning('%s is outside %s .. %s; tuning and testing '
                            'both draw from the whole dataset',
                            DEFAULT_TEST_BOUNDARY, index[0], index[-1])
            return matrix, matrix
        boundary = default
    return split_train_test(matrix, boundary)


def _hyperparameters(args):
    if getattr(args, 'best', None):
        return read_hyperparameters(args.best)
    return Hyperparameters(
        r=args.rank, lambda_L=args.lambda_L, lambda_a=args.lambda_a,
        lambda_b=args.lambda_b, k=args.k, weighted=args.weighted,
        altitude_limit=args.altitude_limit, lags=args.lags,
        weight_rule=WEIGHT_CHOICES[args.weights],
        altitude_threshold=args.altitude_threshold)


def _plan(args, kind):
    baselines = BaselineParams(
        idw_power=getattr(args, 'power', DEFAULT_IDW_POWER),
        pca_rank=getattr(args, 'pca_rank', DEFAULT_PCA_RANK),
        softimpute_lambda=getattr(args, 'softimpute_lambda',
                                  DEFAULT_SOFTIMPUTE_LAMBDA),
        tol=getattr(args, 'tol', DEFAULT_ITERATIVE_TOL),
        max_iter=getattr(args, 'max_iter', DEFAULT_ITERATIVE_MAX_ITER))
    return ExperimentPlan(
        train_weeks=args.train_weeks,
        masks_per_week_train=args.masks_per_week_train,
        test_weeks=args.test_weeks,
        masks_per_week_test=args.masks_per_week_test,
        scenario=MaskScenario(kind, args.fraction),
        n_samples=getattr(args, 'n_samples', DEFAULT_N_SAMPLES),
        seed=args.seed, max_outer=args.max_outer, outer_tol=args.outer_tol,
        cg_tol=args.cg_tol, cg_max_iter=args.cg_max_iter,
        drop_unconverged=args.drop_unconverged, baselines=baselines)


def _scenarios(args):
    return SCENARIOS if args.scenario == 'both' else (args.scenario,)


def cmd_synth(args):
    matrix, stations = synthesize_network(args.stations, args.weeks,
                                          args.seed)
    obs, meta = _output(args, OBSERVATIONS_NAME), _output(args, STATIONS_NAME)
    export_observations(matrix, obs)
    write_metadata(stations, meta)
    print('{} stations x {} rows -> {}, {}'.format(matrix.n, matrix.m, obs,
                                                    meta))


def cmd_ingest_check(args):
    matrix, _ = _dataset(args)
    weeks = slice_weeks(matrix)
    gap_free = [week for week in weeks if week.matrix.is_fully_observed()]
    print('rows x stations: {} x {}'.format(matrix.m, matrix.n))
    print('span: {} .. {}'.format(matrix.row_index[0], matrix.row_index[-1]))
    print('observed: {} ({}%)'.format(
        matrix.n_observed, percent(matrix.n_observed, matrix.m * matrix.n)))
    print('weeks: {} ({} gap-free)'.format(len(weeks), len(gap_free)))


def cmd_graph(args):
    if args.family == 'temporal':
        if args.rows is None:
            raise DataError('graph temporal needs --rows')
        lagset = LagSet(args.lags, WEIGHT_CHOICES[args.weights])
        graph = build_temporal_graph(args.rows, lagset)
    elif args.family == 'spatial':
        stations = read_metadata(args.meta or _output(args, STATIONS_NAME))
        cfg = SpatialGraphConfig(
            k=args.k, weighted=args.weighted,
            altitude_limit=args.altitude_limit is not None,
            altitude_threshold=(DEFAULT_ALTITUDE_THRESHOLD
                                if args.altitude_limit is None
                                else args.altitude_limit))
        graph = build_spatial_graph(stations, cfg)
        if cfg.altitude_limit:
            unlimited = build_spatial_graph(
                stations, SpatialGraphConfig(k=args.k,
                                             weighted=args.weighted))
            removed = removed_edges(unlimited, graph)
            _LOGGER.info('Altitude limit removed %i edge(s): %s',
                         len(removed), removed)
    else:
        raise DataError('graph needs a family: spatial or temporal')
    path = _output(args, 'edges_{}.csv'.format(args.family))
    export_edges(graph, path)
    print('{} graph: {} nodes, {} edges -> {}'.format(
        args.family, graph.n_nodes, graph.n_edges, path))


def cmd_mask(args):
    matrix, _ = _dataset(args)
    weeks = slice_weeks(matrix)
    if not 0 <= args.week < len(weeks):
        raise InsufficientDataError(
            'week {} requested, dataset holds {} week(s)'.format(
                args.week, len(weeks)), found=len(weeks))
    week = weeks[args.week].matrix
    mask = generate_mask(week, MaskScenario(args.scenario, args.fraction,
                                            seed=args.seed))
    path = _output(args, 'mask_{}.csv'.format(args.scenario))
    export_mask(mask, week, path)
    print('{} mask: {} entries in {} runs -> {}'.format(
        args.scenario, mask.size, len(mask.runs), path))


def _complete(args, train, stations):
    if args.method == 'grals':
        hyper = _hyperparameters(args)
        params = GralsParams(
            r=hyper.r, lambda_L=hyper.lambda_L, lambda_a=hyper.lambda_a,
            lambda_b=hyper.lambda_b, max_outer=args.max_outer,
            outer_tol=args.outer_tol, cg_tol=args.cg_tol,
            cg_max_iter=args.cg_max_iter, seed=args.seed)
        if args.row_edges:
            L_row = laplacian(read_edges(args.row_edges, train.m))
        else:
            L_row = laplacian(build_temporal_graph(train.m, hyper.lagset()))
        if args.col_edges:
            L_col = laplacian(read_edges(args.col_edges, train.n))
        else:
            L_col = laplacian(build_spatial_graph(stations,
                                                  hyper.spatial_config()))
        return grals_complete(train, L_row, L_col, params)[1]
    if args.method == 'softimpute':
        return softimpute_complete(train, args.softimpute_lambda, args.tol,
                                   args.max_iter)
    if args.method == 'idw':
        return idw_complete(train, stations, args.power)
    if args.method == 'pca':
        return pca_complete(train, args.pca_rank, args.tol, args.max_iter)
    return mean_fill_complete(train)


def cmd_complete(args):
    if args.method not in METHODS:
        raise DataError('unknown method {!r}, expected one of: {}'.format(
            args.method, ', '.join(METHODS)))
    matrix, stations = _dataset(args)
    train, holdout = matrix, None
    if args.mask:
        train, holdout = apply_mask(matrix, read_mask(args.mask, matrix))
    result = _complete(args, train, stations)
    export_completion(result.X_hat, train, _table(args, 'completed'),
                      sep=SEPARATORS[args.format])
    export_trace(result, _table(args, 'trace'), sep=SEPARATORS[args.format])
    if holdout is not None:
        rmse = evaluate_rmse(result.X_hat, matrix, holdout)
        _write_table(pd.DataFrame([(args.method, rmse, result.iterations,
                                    result.converged)],
                                  columns=['method', 'rmse', 'iterations',
                                           'converged']), args, 'score')
        print('{} holdout RMSE: {:.4f}'.format(args.method, rmse))
    print('{}: {} iteration(s), converged={}'.format(
        args.method, result.iterations, result.converged))


def _grid(args):
    candidates = {
        'r': args.grid_ranks,
        'lambda_L': args.grid_lambdas,
        'lambda_a': args.grid_lambdas,
        'lambda_b': args.grid_lambdas,
        'k': args.grid_k,
        'weighted': args.grid_weighted,
        'altitude_limit': args.grid_altitude_limit,
        'lags': args.grid_lags,
        'weight_rule': args.grid_weight_rules,
    }
    return HyperGrid(**dict((name, values) for name, values
                            in candidates.items() if values is not None))


def cmd_tune(args):
    matrix, stations = _dataset(args)
    train, _ = _train_test(matrix, args.boundary)
    grid = _grid(args)
    for kind in _scenarios(args):
        harness = MonteCarloHarness(_plan(args, kind), stations,
                                    args.workers)
        result = harness.tune(grid, train)
        _write_table(result.table, args, 'tuning_{}'.format(kind))
        _write_table(pd.DataFrame(harness.tuning_records), args,
                     'tuning_folds_{}'.format(kind))
        best_path = _output(args, 'best_{}.ini'.format(kind))
        write_hyperparameters(best_path, result.best)
        score = result.table['mean_rmse'].min()
        print('{}: best of {} combination(s) {} with mean RMSE {:.4f} -> '
              '{}'.format(kind, len(result.table), result.best, score,
                          best_path))


def _methods(harness, best, names):
    solvers = harness.baseline_solvers(best)
    if names is None:
        return solvers
    unknown = [name for name in names if name not in solvers]
    if unknown:
        raise DataError('unknown method(s) {}, expected some of: {}'.format(
            ', '.join(unknown), ', '.join(METHODS)))
    return dict((name, solvers[name]) for name in names)


def _write_results(records, args, prefix):
    _write_table(results_frame(records), args, prefix + 'results')
    summary = summary_frame(records)
    _write_table(summary, args, prefix + 'summary')
    for row in summary.itertuples(index=False):
        print('{:<16} {:<7} {:.4f}'.format(row.method, row.scenario,
                                           row.mean_rmse))


def cmd_benchmark(args):
    matrix, stations = _dataset(args)
    _, test = _train_test(matrix, args.boundary)
    best = _hyperparameters(args)
    records = []
    for kind in _scenarios(args):
        harness = MonteCarloHarness(_plan(args, kind), stations,
                                    args.workers)
        harness.run_baselines(test, best=best,
                              methods=_methods(harness, best, args.methods))
        records.extend(harness.records)
    _write_results(records, args, '')


def _cases(text):
    if str(text).strip().lower() == 'all':
        return ABLATION_CASES
    try:
        ids = _list_of(int)(text)
    except argparse.ArgumentTypeError as error:
        raise DataError('bad --case {!r}: {}'.format(text, error))
    return tuple(AblationCase.from_id(case_id) for case_id in ids)


def cmd_ablate(args):
    cases = _cases(args.case)
    matrix, stations = _dataset(args)
    _, test = _train_test(matrix, args.boundary)
    best = _hyperparameters(args)
    records = []
    for kind in _scenarios(args):
        harness = MonteCarloHarness(_plan(args, kind), stations,
                                    args.workers)
        harness.run_ablations(best, test, cases)
        records.extend(harness.records)
    _write_results(records, args, 'ablation_')


def _fail(error, code):
    sys.stderr.write('error: {}\n'.format(error))
    return code


def main(argv=None):
    """Run grmc-cli and return its exit code."""
    try:
        args = parse_args(argv)
    except SystemExit as stop:
        return stop.code
    except DataError as error:
        return _fail(error, EXIT_USAGE)
    try:
        os.makedirs(args.output_dir, exist_ok=True)
        args.handler(args)
        write_manifest(_output(args, MANIFEST_NAME), args.command,
                       manifest_sections(args))
    except InsufficientDataError as error:
        return _fail(error, EXIT_INSUFFICIENT)
    except (DataError, OSError) as error:
        return _fail(error, EXIT_USAGE)
    except (SolverError, EvaluationError) as error:
        return _fail(error, EXIT_SOLVER)
    return EXIT_OK
