"""Test the grmc-cli entry point end to end on small synthetic data."""
import configparser
import filecmp
import io
import os
import shutil
import tempfile
from unittest import TestCase

import mock
import numpy as np
import pandas as pd

from grmcweather.baselines import mean_fill_complete
from grmcweather.cli import (
    EXIT_INSUFFICIENT,
    EXIT_OK,
    EXIT_SOLVER,
    EXIT_USAGE,
    main,
)
from grmcweather.completion import evaluate_rmse
from grmcweather.data import ingest_observations, write_metadata
from grmcweather.masks import apply_mask, read_mask

from tests.common import line_stations

SMALL_PLAN = ['--scenario', 'spread', '--test-weeks', '1',
              '--masks-per-week-test', '1', '--rank', '2', '--max-outer',
              '5']


class CliTestCase(TestCase):
    """Each test gets an output directory holding 4 stations x 2 weeks."""

    @classmethod
    def setUpClass(cls):
        cls.data_dir = tempfile.mkdtemp()
        assert main(['--output-dir', cls.data_dir, 'synth', '--stations',
                     '4', '--weeks', '2']) == EXIT_OK

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.data_dir)

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.tmp)
        for name in ('observations.csv', 'stations.csv'):
            shutil.copy(os.path.join(self.data_dir, name), self.tmp)

    def run_cli(self, *argv, **kwargs):
        out = kwargs.get('output_dir', self.tmp)
        with mock.patch('sys.stdout', new_callable=io.StringIO) as stdout:
            code = main(['--output-dir', out] + list(argv))
        self.stdout = stdout.getvalue()
        return code

    def path(self, name, output_dir=None):
        return os.path.join(output_dir or self.tmp, name)

    def read(self, name, sep=','):
        return pd.read_csv(self.path(name), sep=sep)


class TestSynthAndIngest(CliTestCase):

    def test_synth_is_seeded(self):
        other = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, other)
        self.assertEqual(EXIT_OK, self.run_cli('synth', '--stations', '4',
                                               '--weeks', '2',
                                               output_dir=other))
        for name in ('observations.csv', 'stations.csv'):
            self.assertTrue(filecmp.cmp(self.path(name),
                                        self.path(name, other),
                                        shallow=False))

    def test_synth_needs_two_stations(self):
        self.assertEqual(EXIT_USAGE, self.run_cli('synth', '--stations', '1'))

    def test_output_dir_from_environment(self):
        other = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, other)
        with mock.patch.dict(os.environ, {'GRMC_OUTPUT_DIR': other}):
            self.assertEqual(EXIT_OK, main(['synth', '--stations', '3',
                                            '--weeks', '1']))
        self.assertTrue(os.path.isfile(self.path('stations.csv', other)))
        self.assertTrue(os.path.isfile(self.path('manifest.ini', other)))

    def test_ingest_check(self):
        self.assertEqual(EXIT_OK, self.run_cli('ingest-check'))
        self.assertIn('rows x stations: 2018 x 4', self.stdout)
        self.assertIn('observed: 8072 (100.0%)', self.stdout)
        self.assertIn('weeks: 2 (2 gap-free)', self.stdout)

    def test_unwritable_output_dir(self):
        blocker = self.path('file')
        with open(blocker, 'w') as handle:
            handle.write('x')
        self.assertEqual(EXIT_USAGE, self.run_cli(
            'synth', '--stations', '3', '--weeks', '1',
            output_dir=os.path.join(blocker, 'out')))

    def test_missing_dataset(self):
        self.assertEqual(EXIT_USAGE, self.run_cli(
            'ingest-check', '--obs', self.path('nothing.csv')))


class TestGraph(CliTestCase):

    def test_temporal(self):
        self.assertEqual(EXIT_OK, self.run_cli('graph', 'temporal', '--rows',
                                               '4', '--lags', '1'))
        edges = self.read('edges_temporal.csv')
        self.assertEqual([(0, 1), (1, 2), (2, 3)],
                         list(zip(edges['i'], edges['j'])))
        self.assertEqual([1.0] * 3, edges['weight'].tolist())

    def test_temporal_usage_errors(self):
        self.assertEqual(EXIT_USAGE, self.run_cli('graph', 'temporal'))
        self.assertEqual(EXIT_USAGE, self.run_cli('graph', 'temporal',
                                                  '--rows', '4', '--lags',
                                                  '0,2'))
        self.assertEqual(EXIT_USAGE, self.run_cli('graph'))

    def test_spatial(self):
        meta = self.path('two.csv')
        write_metadata(line_stations([0.0, 1.0]), meta)
        self.assertEqual(EXIT_OK, self.run_cli('graph', 'spatial', '--meta',
                                               meta, '--k', '1'))
        self.assertEqual(1, len(self.read('edges_spatial.csv')))
        self.assertEqual(EXIT_USAGE, self.run_cli('graph', 'spatial', '--k',
                                                  '5'))

    def test_spatial_altitude_limit(self):
        meta = self.path('hills.csv')
        write_metadata(line_stations([0.0, 1.0, 2.0], [0.0, 500.0, 20.0]),
                       meta)
        self.assertEqual(EXIT_OK, self.run_cli('graph', 'spatial', '--meta',
                                               meta, '--k', '1',
                                               '--altitude-limit'))
        edges = self.read('edges_spatial.csv')
        self.assertEqual([(0, 2)], list(zip(edges['i'], edges['j'])))

    def test_zero_altitude_limit_rejected(self):
        meta = self.path('flat.csv')
        write_metadata(line_stations([0.0, 1.0, 2.0]), meta)
        for limit in ('0', '-5'):
            self.assertEqual(EXIT_USAGE, self.run_cli(
                'graph', 'spatial', '--meta', meta, '--k', '1',
                '--altitude-limit', limit))
        self.assertFalse(os.path.exists(self.path('edges_spatial.csv')))


class TestMaskAndComplete(CliTestCase):

    def test_mask_week_out_of_range(self):
        self.assertEqual(EXIT_INSUFFICIENT, self.run_cli('mask', '--week',
                                                         '2'))

    def test_unknown_method(self):
        self.assertEqual(EXIT_USAGE, self.run_cli('complete', '--method',
                                                  'kriging'))

    def test_mean_fill_score(self):
        self.assertEqual(EXIT_OK, self.run_cli('mask', '--scenario',
                                               'spread'))
        mask_path = self.path('mask_spread.csv')
        self.assertEqual(EXIT_OK, self.run_cli('complete', '--method',
                                               'mean', '--mask', mask_path))
        matrix, _ = ingest_observations(self.path('observations.csv'),
                                        self.path('stations.csv'))
        train, holdout = apply_mask(matrix, read_mask(mask_path, matrix))
        expected = evaluate_rmse(mean_fill_complete(train).X_hat, matrix,
                                 holdout)
        score = self.read('score.csv')
        self.assertEqual('mean', score['method'][0])
        self.assertAlmostEqual(expected, score['rmse'][0], places=12)
        completed = self.read('completed.csv')
        self.assertEqual(int(holdout.sum()),
                         int((completed['source'] == 'imputed').sum()))

    def test_tsv_tables(self):
        self.assertEqual(EXIT_OK, self.run_cli('--format', 'tsv', 'complete',
                                               '--method', 'mean'))
        completed = self.read('completed.tsv', sep='\t')
        self.assertEqual(2018 * 4, len(completed))
        self.assertTrue(os.path.isfile(self.path('trace.tsv')))

    def test_graph_flags_ignored_without_graph_weight(self):
        args = ['complete', '--method', 'grals', '--rank', '2',
                '--max-outer', '3', '--lambda-L', '0']
        first = os.path.join(self.tmp, 'first')
        second = os.path.join(self.tmp, 'second')
        self.assertEqual(EXIT_OK, self.run_cli(
            *(args + ['--obs', self.path('observations.csv'), '--meta',
                      self.path('stations.csv'), '--k', '1']),
            output_dir=first))
        self.assertEqual(EXIT_OK, self.run_cli(
            *(args + ['--obs', self.path('observations.csv'), '--meta',
                      self.path('stations.csv'), '--k', '3', '--lags',
                      '1,2,3', '--no-weighted']),
            output_dir=second))
        self.assertTrue(filecmp.cmp(self.path('completed.csv', first),
                                    self.path('completed.csv', second),
                                    shallow=False))

    def test_edge_list_files_replace_graph_flags(self):
        self.assertEqual(EXIT_OK, self.run_cli(
            'graph', 'spatial', '--k', '3', '--weighted', '--altitude-limit'))
        args = ['complete', '--method', 'grals', '--rank', '2',
                '--max-outer', '3', '--obs', self.path('observations.csv'),
                '--meta', self.path('stations.csv')]
        built = os.path.join(self.tmp, 'built')
        from_file = os.path.join(self.tmp, 'from_file')
        self.assertEqual(EXIT_OK, self.run_cli(*args, output_dir=built))
        self.assertEqual(EXIT_OK, self.run_cli(
            *(args + ['--k', '1', '--col-edges',
                      self.path('edges_spatial.csv')]),
            output_dir=from_file))
        self.assertTrue(filecmp.cmp(self.path('completed.csv', built),
                                    self.path('completed.csv', from_file),
                                    shallow=False))

    def test_edge_list_outside_matrix(self):
        path = self.path('far.csv')
        with open(path, 'w') as handle:
            handle.write('i,j,weight\n0,9,1.0\n')
        self.assertEqual(EXIT_USAGE, self.run_cli(
            'complete', '--method', 'grals', '--col-edges', path))

    def test_softimpute_keeps_full_data(self):
        self.assertEqual(EXIT_OK, self.run_cli(
            'complete', '--method', 'softimpute', '--lambda', '0'))
        completed = self.read('completed.csv')
        observations = self.read('observations.csv')
        self.assertEqual(['observed'], completed['source'].unique().tolist())
        np.testing.assert_array_equal(observations['temperature_c'],
                                      completed['temperature_c'])

    def test_unregularized_solver_failure(self):
        self.assertEqual(EXIT_SOLVER, self.run_cli(
            'complete', '--method', 'grals', '--rank', '10', '--lambda-L',
            '0', '--lambda-a', '0', '--lambda-b', '0'))
        self.assertFalse(os.path.exists(self.path('manifest.ini')))


class TestExperiments(CliTestCase):

    def test_tune(self):
        self.assertEqual(EXIT_OK, self.run_cli(
            'tune', '--samples', '1', '--scenario', 'spread',
            '--train-weeks', '1', '--masks-per-week-train', '1',
            '--grid-ranks', '2', '--grid-lambdas', '0.01', '--grid-k', '1',
            '--grid-lags', '1;1,2', '--max-outer', '5'))
        table = self.read('tuning_spread.csv')
        self.assertEqual(1, len(table))
        self.assertTrue(np.isfinite(table['mean_rmse'][0]))
        self.assertEqual(1, len(self.read('tuning_folds_spread.csv')))
        best = configparser.ConfigParser()
        best.read(self.path('best_spread.ini'))
        self.assertEqual('2', best['best']['r'])
        self.assertEqual('1', best['best']['k'])

    def test_tune_scores_budget_limited_runs(self):
        self.assertEqual(EXIT_OK, self.run_cli(
            'tune', '--samples', '1', '--scenario', 'spread',
            '--train-weeks', '1', '--masks-per-week-train', '1',
            '--grid-ranks', '2', '--grid-lambdas', '0.1', '--grid-k', '1',
            '--grid-lags', '1', '--max-outer', '2'))
        self.assertTrue(np.isfinite(self.read('tuning_spread.csv')
                                    ['mean_rmse'][0]))
        folds = self.read('tuning_folds_spread.csv')
        self.assertFalse(folds['converged'].any())
        self.assertTrue(np.isfinite(folds['rmse']).all())
        self.assertEqual(EXIT_SOLVER, self.run_cli(
            'tune', '--samples', '1', '--scenario', 'spread',
            '--train-weeks', '1', '--masks-per-week-train', '1',
            '--grid-ranks', '2', '--grid-lambdas', '0.1', '--grid-k', '1',
            '--grid-lags', '1', '--max-outer', '2', '--drop-unconverged'))

    def test_insufficient_weeks(self):
        self.assertEqual(EXIT_INSUFFICIENT, self.run_cli(
            'benchmark', '--scenario', 'spread', '--test-weeks', '5',
            '--methods', 'mean'))

    def test_unknown_benchmark_method(self):
        self.assertEqual(EXIT_USAGE, self.run_cli(
            'benchmark', '--methods', 'mean,kriging'))

    def test_ablation_case_one_matches_benchmark(self):
        self.assertEqual(EXIT_OK, self.run_cli(
            'benchmark', '--methods', 'grals', *SMALL_PLAN))
        benchmark = self.read('summary.csv')
        self.assertEqual(EXIT_OK, self.run_cli('ablate', '--case', '1',
                                               *SMALL_PLAN))
        ablation = self.read('ablation_summary.csv')
        self.assertEqual(['grals-case1'], ablation['method'].tolist())
        self.assertEqual(benchmark['mean_rmse'][0],
                         ablation['mean_rmse'][0])

    def test_bad_case(self):
        self.assertEqual(EXIT_USAGE, self.run_cli('ablate', '--case', '9'))

    def test_benchmark_from_best_file(self):
        best = self.path('best.ini')
        with open(best, 'w') as handle:
            handle.write('[best]\nr = 2\nlambda_L = 0.01\nk = 1\n')
        self.assertEqual(EXIT_OK, self.run_cli(
            'benchmark', '--best', best, '--methods', 'grals,mean',
            *SMALL_PLAN))
        self.assertEqual(['grals', 'mean'],
                         self.read('summary.csv')['method'].tolist())


class TestConfiguration(CliTestCase):

    def write_config(self, text):
        path = self.path('grmc.conf')
        with open(path, 'w') as handle:
            handle.write(text)
        return path

    def test_config_defaults_and_flag_precedence(self):
        config = self.write_config('[global]\nseed = 5\n'
                                   '[synth]\nstations = 3\nweeks = 1\n')
        self.assertEqual(EXIT_OK, self.run_cli('--config', config, 'synth'))
        manifest = configparser.ConfigParser()
        manifest.read(self.path('manifest.ini'))
        self.assertEqual('5', manifest['global']['seed'])
        self.assertEqual('3', manifest['synth']['stations'])
        self.assertEqual(3, len(self.read('stations.csv')))
        self.assertEqual(EXIT_OK, self.run_cli('--config', config, 'synth',
                                               '--stations', '4'))
        self.assertEqual(4, len(self.read('stations.csv')))

    def test_boolean_options(self):
        config = self.write_config('[benchmark]\ndrop-unconverged = yes\n'
                                   'methods = mean\n')
        self.assertEqual(EXIT_OK, self.run_cli(
            '--config', config, 'benchmark', '--scenario', 'spread',
            '--test-weeks', '1', '--masks-per-week-test', '1'))
        manifest = configparser.ConfigParser()
        manifest.read(self.path('manifest.ini'))
        self.assertEqual('True', manifest['benchmark']['drop_unconverged'])
        self.assertEqual('mean', manifest['benchmark']['methods'])
        bad = self.write_config('[benchmark]\ndrop-unconverged = maybe\n')
        self.assertEqual(EXIT_USAGE, self.run_cli('--config', bad,
                                                  'benchmark'))

    def test_missing_config(self):
        self.assertEqual(EXIT_USAGE, self.run_cli(
            '--config', self.path('absent.conf'), 'synth'))

    def test_manifest_replays_the_run(self):
        self.assertEqual(EXIT_OK, self.run_cli(
            'benchmark', '--obs', self.path('observations.csv'), '--meta',
            self.path('stations.csv'), '--methods', 'grals,mean',
            *SMALL_PLAN))
        replay = os.path.join(self.tmp, 'replay')
        self.assertEqual(EXIT_OK, self.run_cli(
            '--config', self.path('manifest.ini'), 'benchmark',
            output_dir=replay))
        for name in ('results.csv', 'summary.csv'):
            self.assertTrue(filecmp.cmp(self.path(name),
                                        self.path(name, replay),
                                        shallow=False))
