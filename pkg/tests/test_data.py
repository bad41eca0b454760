"""Test data.py: matrices, ingestion, week slicing and the generator."""
import os
import tempfile
from unittest import TestCase

import numpy as np
import pandas as pd

from grmcweather.config import WEEK_ROWS
from grmcweather.data import (
    ObservationMatrix,
    Station,
    export_observations,
    ingest_observations,
    read_metadata,
    slice_weeks,
    synthesize_network,
    write_metadata,
)
from grmcweather.exceptions import DataError
from grmcweather.graphs import distance_matrix

from tests.common import line_stations, make_matrix, random_mask

META = ('station_id,latitude,longitude,altitude_m\n'
        'S1,50.0,4.0,100\n'
        'S2,50.1,4.2,120\n'
        'S3,50.3,4.1,90\n')


def _observations(rows):
    lines = ['timestamp,station_id,temperature_c']
    lines.extend('{},{},{}'.format(*row) for row in rows)
    return '\n'.join(lines) + '\n'


def _full_rows(n_steps=6):
    stamps = pd.date_range('2020-03-01T00:00:00Z', periods=n_steps,
                           freq='10min')
    rows = []
    for i, stamp in enumerate(stamps):
        for j, sid in enumerate(('S1', 'S2', 'S3')):
            rows.append((stamp.strftime('%Y-%m-%dT%H:%M:%SZ'), sid,
                         10.0 + i + 0.1 * j))
    return rows


class TestObservationMatrix(TestCase):

    def test_unobserved_entries_are_nan(self):
        mask = np.array([[True, False], [True, True]])
        matrix = make_matrix([[1.0, 2.0], [3.0, 4.0]], mask)
        self.assertTrue(np.isnan(matrix.values[0, 1]))
        self.assertEqual(3, matrix.n_observed)
        self.assertFalse(matrix.is_fully_observed())
        np.testing.assert_array_equal([[1.0, -1.0], [3.0, 4.0]],
                                      matrix.filled(-1.0))

    def test_read_only(self):
        matrix = make_matrix(np.ones((3, 2)))
        self.assertFalse(matrix.values.flags.writeable)
        self.assertFalse(matrix.mask.flags.writeable)
        filled = matrix.filled()
        filled[0, 0] = 5.0
        self.assertEqual(1.0, matrix.values[0, 0])

    def test_irregular_index(self):
        index = pd.DatetimeIndex(['2020-01-01 00:00', '2020-01-01 00:10',
                                  '2020-01-01 00:30'], tz='UTC')
        self.assertRaises(DataError, ObservationMatrix, np.ones((3, 1)),
                          np.ones((3, 1), bool), index, ['S1'])

    def test_duplicate_station_ids(self):
        index = pd.date_range('2020-01-01', periods=2, freq='10min',
                              tz='UTC')
        self.assertRaises(DataError, ObservationMatrix, np.ones((2, 2)),
                          np.ones((2, 2), bool), index, ['S1', 'S1'])

    def test_with_mask_restricts(self):
        mask = np.array([[True, False], [True, True]])
        matrix = make_matrix(np.ones((2, 2)), mask)
        restricted = matrix.with_mask(np.array([[False, True],
                                                [True, True]]))
        np.testing.assert_array_equal([[False, False], [True, True]],
                                      restricted.mask)

    def test_rows(self):
        matrix = make_matrix(np.arange(12.0).reshape(6, 2))
        part = matrix.rows(2, 4)
        self.assertEqual((2, 2), part.shape)
        self.assertEqual(matrix.row_index[2], part.row_index[0])
        np.testing.assert_array_equal([[4.0, 5.0], [6.0, 7.0]], part.values)


class TestStation(TestCase):

    def test_coordinates_validated(self):
        self.assertRaises(DataError, Station, 'S1', 91.0, 0.0, 0.0)
        self.assertRaises(DataError, Station, 'S1', 0.0, -181.0, 0.0)
        self.assertRaises(DataError, Station, 'S1', 0.0, 0.0, np.nan)
        self.assertEqual('7', Station(7, 10, 20, 30).station_id)


class TestIngest(TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.meta = os.path.join(self.tmp.name, 'stations.csv')
        self.obs = os.path.join(self.tmp.name, 'observations.csv')
        with open(self.meta, 'w') as handle:
            handle.write(META)

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, rows):
        with open(self.obs, 'w') as handle:
            handle.write(_observations(rows))

    def test_fully_observed(self):
        self._write(_full_rows())
        matrix, stations = ingest_observations(self.obs, self.meta)
        self.assertEqual((6, 3), matrix.shape)
        self.assertEqual(18, matrix.n_observed)
        self.assertEqual(('S1', 'S2', 'S3'), matrix.col_index)
        self.assertEqual(['S1', 'S2', 'S3'],
                         [station.station_id for station in stations])
        self.assertAlmostEqual(12.1, matrix.values[2, 1])

    def test_one_hole(self):
        rows = _full_rows()
        del rows[7]
        self._write(rows)
        matrix, _ = ingest_observations(self.obs, self.meta)
        self.assertEqual(17, matrix.n_observed)
        self.assertFalse(matrix.mask[2, 1])

    def test_empty_temperature_is_missing(self):
        rows = _full_rows()
        rows[4] = (rows[4][0], rows[4][1], '')
        self._write(rows)
        matrix, _ = ingest_observations(self.obs, self.meta)
        self.assertEqual(17, matrix.n_observed)
        self.assertFalse(matrix.mask[1, 1])

    def test_gap_filled_grid(self):
        rows = [row for row in _full_rows()
                if not row[0].endswith('00:20:00Z')]
        self._write(rows)
        matrix, _ = ingest_observations(self.obs, self.meta)
        self.assertEqual(6, matrix.m)
        self.assertFalse(matrix.mask[2].any())
        self.assertEqual(15, matrix.n_observed)

    def test_columns_follow_metadata_order(self):
        with open(self.meta, 'w') as handle:
            handle.write('station_id,latitude,longitude,altitude_m\n'
                         'S3,50.3,4.1,90\nS1,50.0,4.0,100\nS2,50.1,4.2,120\n')
        self._write(_full_rows())
        matrix, _ = ingest_observations(self.obs, self.meta)
        self.assertEqual(('S3', 'S1', 'S2'), matrix.col_index)
        self.assertAlmostEqual(10.2, matrix.values[0, 0])

    def test_duplicate_pair(self):
        rows = _full_rows()
        rows.insert(1, rows[0])
        self._write(rows)
        with self.assertRaises(DataError) as ctx:
            ingest_observations(self.obs, self.meta)
        self.assertIn('duplicate', str(ctx.exception))
        self.assertIn('S1', str(ctx.exception))

    def test_unknown_station(self):
        rows = _full_rows()
        rows.append((rows[-1][0], 'S9', 3.0))
        self._write(rows)
        with self.assertRaises(DataError) as ctx:
            ingest_observations(self.obs, self.meta)
        self.assertIn('S9', str(ctx.exception))

    def test_non_monotone(self):
        rows = _full_rows()
        rows[0], rows[5] = rows[5], rows[0]
        self._write(rows)
        self.assertRaises(DataError, ingest_observations, self.obs,
                          self.meta)

    def test_off_grid(self):
        rows = _full_rows()
        rows[-1] = ('2020-03-01T00:55:00Z', rows[-1][1], rows[-1][2])
        self._write(rows)
        self.assertRaises(DataError, ingest_observations, self.obs,
                          self.meta)

    def test_missing_column(self):
        with open(self.obs, 'w') as handle:
            handle.write('timestamp,station_id\n2020-03-01T00:00:00Z,S1\n')
        self.assertRaises(DataError, ingest_observations, self.obs,
                          self.meta)

    def test_missing_file(self):
        self.assertRaises(DataError, ingest_observations,
                          os.path.join(self.tmp.name, 'nope.csv'), self.meta)

    def test_synthetic_network_reingests(self):
        matrix, stations = synthesize_network(3, 1, seed=5)
        write_metadata(stations, self.meta)
        export_observations(matrix, self.obs)
        again, read_back = ingest_observations(self.obs, self.meta)
        self.assertEqual(stations, read_back)
        self.assertEqual(matrix.shape, again.shape)
        np.testing.assert_array_equal(matrix.values, again.values)
        self.assertTrue(matrix.row_index.equals(again.row_index))

    def test_export_keeps_missing_rows(self):
        values = np.arange(18.0).reshape(6, 3) + 0.1
        mask = np.ones((6, 3), dtype=bool)
        mask[0, 1] = False
        mask[3, :] = False
        mask[5, :] = False
        matrix = make_matrix(values, mask)
        write_metadata(line_stations([0.0, 0.1, 0.2]), self.meta)
        export_observations(matrix, self.obs)
        again, _ = ingest_observations(self.obs, self.meta)
        self.assertEqual((6, 3), again.shape)
        np.testing.assert_array_equal(mask, again.mask)
        self.assertTrue(matrix.row_index.equals(again.row_index))
        np.testing.assert_array_equal(values[mask], again.values[mask])

    def test_export_is_bit_exact(self):
        rng = np.random.default_rng(12)
        values = rng.standard_normal((4, 3)) * 7.3
        matrix = make_matrix(values, random_mask((4, 3), 0.7, rng))
        write_metadata(line_stations([0.0, 0.1, 0.2]), self.meta)
        export_observations(matrix, self.obs)
        again, _ = ingest_observations(self.obs, self.meta)
        self.assertTrue(np.array_equal(matrix.filled(np.nan),
                                       again.filled(np.nan), equal_nan=True))


class TestSliceWeeks(TestCase):

    def test_slices(self):
        matrix = make_matrix(np.zeros((2 * WEEK_ROWS + 5, 2)))
        weeks = slice_weeks(matrix)
        self.assertEqual(2, len(weeks))
        self.assertEqual([0, WEEK_ROWS], [week.first_row for week in weeks])
        self.assertEqual((WEEK_ROWS, 2), weeks[1].matrix.shape)
        self.assertEqual(matrix.row_index[WEEK_ROWS], weeks[1].start)

    def test_gap_free_only(self):
        mask = np.ones((2 * WEEK_ROWS, 2), dtype=bool)
        mask[WEEK_ROWS + 10, 1] = False
        matrix = make_matrix(np.zeros(mask.shape), mask)
        self.assertEqual(2, len(slice_weeks(matrix)))
        weeks = slice_weeks(matrix, gap_free_only=True)
        self.assertEqual([0], [week.first_row for week in weeks])

    def test_short_matrix(self):
        matrix = make_matrix(np.zeros((WEEK_ROWS - 1, 2)))
        self.assertEqual([], slice_weeks(matrix))


class TestSynthesize(TestCase):

    def test_shape_and_determinism(self):
        matrix, stations = synthesize_network(5, 2, seed=3)
        self.assertEqual((2 * WEEK_ROWS, 5), matrix.shape)
        self.assertTrue(matrix.is_fully_observed())
        self.assertEqual(5, len(stations))
        self.assertEqual(2, len(slice_weeks(matrix, gap_free_only=True)))
        again, _ = synthesize_network(5, 2, seed=3)
        np.testing.assert_array_equal(matrix.values, again.values)
        other, _ = synthesize_network(5, 2, seed=4)
        self.assertFalse(np.array_equal(matrix.values, other.values))

    def test_validation(self):
        self.assertRaises(DataError, synthesize_network, 1, 1, 0)
        self.assertRaises(DataError, synthesize_network, 3, 0, 0)

    def test_temperature_band(self):
        for seed in range(5):
            matrix, _ = synthesize_network(8, 1, seed=seed)
            self.assertGreater(matrix.values.min(), -30.0)
            self.assertLess(matrix.values.max(), 45.0)

    def test_daily_cycle(self):
        matrix, _ = synthesize_network(3, 2, seed=11)
        series = pd.Series(matrix.values[:, 0])
        lags = np.arange(100, 191)
        correlation = [series.autocorr(int(lag)) for lag in lags]
        self.assertLessEqual(abs(int(lags[np.argmax(correlation)]) - 144), 3)

    def test_spatial_correlation_decays(self):
        matrix, stations = synthesize_network(20, 1, seed=2)
        distances = distance_matrix(stations)
        upper = np.triu_indices(len(stations), k=1)
        order = np.argsort(distances[upper])
        steps = np.diff(matrix.values, axis=0)
        correlation = np.corrcoef(steps.T)[upper]
        self.assertGreater(correlation[order[0]], correlation[order[-1]])

    def test_read_metadata_keeps_order(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'stations.csv')
            stations = line_stations([3.0, 1.0, 2.0], [10.0, 20.0, 30.0])
            write_metadata(stations, path)
            self.assertEqual(stations, read_metadata(path))
