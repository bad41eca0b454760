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
"""Observation matrices, station metadata and their CSV formats."""
import logging
from collections import namedtuple

import numpy as np
import pandas as pd

from .config import (
    LAPSE_RATE,
    METADATA_COLUMNS,
    OBSERVATION_COLUMNS,
    STEP_MINUTES,
    SYNTH_BOUNDING_BOX,
    SYNTH_CORRELATION_LENGTH_KM,
    SYNTH_DIURNAL_AMPLITUDE,
    SYNTH_MAX_ALTITUDE,
    SYNTH_MEAN_TEMPERATURE,
    SYNTH_NOISE_PERSISTENCE,
    SYNTH_NOISE_SD,
    SYNTH_SEASONAL_AMPLITUDE,
    SYNTH_START,
    WEEK_ROWS,
)
from .exceptions import DataError

_LOGGER = logging.getLogger(__name__)

STEP = pd.Timedelta(minutes=STEP_MINUTES)
TIMESTAMP_FORMAT = '%Y-%m-%dT%H:%M:%SZ'


class Station(namedtuple('Station',
                         'station_id latitude longitude altitude')):
    """Geographic record of one weather station (one matrix column)."""
    __slots__ = ()

    def __new__(cls, station_id, latitude, longitude, altitude):
        latitude, longitude = float(latitude), float(longitude)
        altitude = float(altitude)
        if not -90.0 <= latitude <= 90.0:
            raise DataError('station {}: latitude {} out of range'.format(
                station_id, latitude))
        if not -180.0 <= longitude <= 180.0:
            raise DataError('station {}: longitude {} out of range'.format(
                station_id, longitude))
        if not np.isfinite(altitude):
            raise DataError('station {}: altitude is not finite'.format(
                station_id))
        return super(Station, cls).__new__(
            cls, str(station_id), latitude, longitude, altitude)


WeekSlice = namedtuple('WeekSlice', 'start first_row matrix')


def _as_ns(timestamps):
    """Timestamps as int64 nanoseconds since the epoch."""
    return np.asarray(timestamps.values).astype('datetime64[ns]').astype(
        np.int64)


def _frozen(array):
    array.setflags(write=False)
    return array


class ObservationMatrix(object):
    """
    Partially observed m x n temperature matrix (timestamps x stations).

    Entries outside the mask are stored as NaN and must not be read.
    Instances are immutable: the arrays they expose are read-only.
    """

    def __init__(self, values, mask, row_index, col_index):
        values = np.array(values, dtype=np.float64)
        mask = np.array(mask, dtype=bool)
        if values.ndim != 2 or values.shape != mask.shape:
            raise DataError('values {} and mask {} shapes differ'.format(
                values.shape, mask.shape))
        row_index = pd.DatetimeIndex(row_index)
        col_index = tuple(str(col) for col in col_index)
        if len(row_index) != values.shape[0]:
            raise DataError('{} timestamps for {} rows'.format(
                len(row_index), values.shape[0]))
        if len(col_index) != values.shape[1]:
            raise DataError('{} station ids for {} columns'.format(
                len(col_index), values.shape[1]))
        if len(set(col_index)) != len(col_index):
            raise DataError('station ids are not unique')
        if len(row_index) > 1:
            steps = np.diff(_as_ns(row_index))
            if np.any(steps != STEP.value):
                raise DataError(
                    'row index is not a regular {}-minute grid'.format(
                        STEP_MINUTES))
        values[~mask] = np.nan
        self._values = _frozen(values)
        self._mask = _frozen(mask)
        self._row_index = row_index
        self._col_index = col_index

    def __repr__(self):
        return '<ObservationMatrix {}x{} observed={}>'.format(
            self.m, self.n, self.n_observed)

    @property
    def values(self):
        return self._values

    @property
    def mask(self):
        return self._mask

    @property
    def row_index(self):
        return self._row_index

    @property
    def col_index(self):
        return self._col_index

    @property
    def shape(self):
        return self._values.shape

    @property
    def m(self):
        return self._values.shape[0]

    @property
    def n(self):
        return self._values.shape[1]

    @property
    def n_observed(self):
        return int(self._mask.sum())

    def is_fully_observed(self):
        return bool(self._mask.all())

    def observed_finite(self):
        """True when every observed entry holds a finite number."""
        return bool(np.isfinite(self._values[self._mask]).all())

    def filled(self, fill=0.0):
        """Writable copy of the values with unobserved entries set to fill."""
        out = self._values.copy()
        out[~self._mask] = fill
        return out

    def rows(self, start, stop):
        """Sub-matrix of rows [start, stop)."""
        return ObservationMatrix(self._values[start:stop],
                                 self._mask[start:stop],
                                 self._row_index[start:stop],
                                 self._col_index)

    def with_mask(self, mask):
        """Same values restricted to a new observed set."""
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != self.shape:
            raise DataError('mask shape {} does not match {}'.format(
                mask.shape, self.shape))
        return ObservationMatrix(self._values, mask & self._mask,
                                 self._row_index, self._col_index)

    def to_frame(self, include_missing=False):
        """
        Long-format DataFrame in row-major order. By default only observed
        entries are listed; with include_missing every grid cell is, the
        unobserved ones with a NaN temperature.
        """
        if include_missing:
            rows, cols = np.indices(self.shape).reshape(2, -1)
        else:
            rows, cols = np.nonzero(self._mask)
        temperature = np.where(self._mask[rows, cols],
                               self._values[rows, cols], np.nan)
        return pd.DataFrame({
            'timestamp': self._row_index[rows].strftime(TIMESTAMP_FORMAT),
            'station_id': np.asarray(self._col_index, dtype=object)[cols],
            'temperature_c': temperature,
        }, columns=list(OBSERVATION_COLUMNS))


def parse_timestamps(series):
    """Parse ISO-8601 timestamps as UTC."""
    try:
        return pd.to_datetime(series, utc=True)
    except (ValueError, TypeError) as error:
        raise DataError('cannot parse timestamps: {}'.format(error))


def _read_csv(path, columns):
    try:
        frame = pd.read_csv(path, dtype={'station_id': str},
                            float_precision='round_trip')
    except (OSError, pd.errors.ParserError,
            pd.errors.EmptyDataError) as error:
        raise DataError('cannot read {}: {}'.format(path, error))
    missing = [col for col in columns if col not in frame.columns]
    if missing:
        raise DataError('{}: missing column(s) {}'.format(
            path, ', '.join(missing)))
    return frame


def read_metadata(meta_csv):
    """Read the station metadata CSV, keeping file order."""
    frame = _read_csv(meta_csv, METADATA_COLUMNS)
    duplicated = frame['station_id'][frame['station_id'].duplicated()]
    if len(duplicated):
        raise DataError('{}: duplicate station id {}'.format(
            meta_csv, duplicated.iloc[0]))
    return [Station(row.station_id, row.latitude, row.longitude,
                    row.altitude_m)
            for row in frame.itertuples(index=False)]


def write_metadata(stations, path):
    frame = pd.DataFrame([tuple(station) for station in stations],
                         columns=list(METADATA_COLUMNS))
    frame.to_csv(path, index=False, float_format='%.17g')


def ingest_observations(obs_csv, meta_csv):
    """
    Build an ObservationMatrix from long-format CSV files.

    Columns follow the metadata file order, rows a regular 10-minute grid
    from the first to the last timestamp. Pairs with no reading (or an
    empty temperature field) are left out of the observed set.
    """
    stations = read_metadata(meta_csv)
    frame = _read_csv(obs_csv, OBSERVATION_COLUMNS)
    if frame.empty:
        raise DataError('{}: no observations'.format(obs_csv))

    timestamps = parse_timestamps(frame['timestamp'])
    if not timestamps.is_monotonic_increasing:
        position = int(np.argmax(np.diff(_as_ns(timestamps)) < 0)) + 1
        raise DataError('{}: timestamps are not monotone at data row {} '
                        '({})'.format(obs_csv, position + 1,
                                      frame['timestamp'].iloc[position]))

    pairs = pd.DataFrame({'timestamp': timestamps,
                          'station_id': frame['station_id']})
    duplicated = pairs.duplicated()
    if duplicated.any():
        first = frame[duplicated].iloc[0]
        raise DataError('{}: duplicate observation ({}, {})'.format(
            obs_csv, first['timestamp'], first['station_id']))

    col_of = dict((station.station_id, j)
                  for j, station in enumerate(stations))
    unknown = sorted(set(frame['station_id']) - set(col_of))
    if unknown:
        raise DataError('{}: station(s) absent from {}: {}'.format(
            obs_csv, meta_csv, ', '.join(unknown)))

    start = timestamps.iloc[0]
    offsets = (timestamps - start).values.astype('timedelta64[ns]')
    offsets = offsets.astype(np.int64)
    if np.any(offsets % STEP.value):
        raise DataError('{}: timestamps off the {}-minute grid'.format(
            obs_csv, STEP_MINUTES))
    rows = offsets // STEP.value
    m = int(rows[-1]) + 1
    row_index = pd.date_range(start, periods=m, freq=STEP)

    temperature = pd.to_numeric(frame['temperature_c'], errors='coerce')
    present = temperature.notna().values
    if not present.all():
        _LOGGER.debug('%s: %i rows without temperature treated as missing',
                      obs_csv, int((~present).sum()))

    cols = frame['station_id'].map(col_of).values
    values = np.full((m, len(stations)), np.nan)
    mask = np.zeros((m, len(stations)), dtype=bool)
    values[rows[present], cols[present]] = temperature.values[present]
    mask[rows[present], cols[present]] = True

    matrix = ObservationMatrix(values, mask, row_index,
                               [station.station_id for station in stations])
    _LOGGER.debug('Ingested %r from %s', matrix, obs_csv)
    return matrix, stations


def export_observations(matrix, path):
    """
    Write the matrix in the ingestion CSV format. Every grid cell is
    listed so the time grid survives re-ingestion; missing cells get an
    empty temperature.
    """
    matrix.to_frame(include_missing=True).to_csv(
        path, index=False, float_format='%.17g')


def slice_weeks(matrix, gap_free_only=False):
    """
    Cut the matrix into consecutive non-overlapping weeks of WEEK_ROWS rows,
    starting at the first row. A trailing partial week is dropped.
    """
    slices = []
    for first_row in range(0, matrix.m - WEEK_ROWS + 1, WEEK_ROWS):
        week = matrix.rows(first_row, first_row + WEEK_ROWS)
        if gap_free_only and not week.is_fully_observed():
            continue
        slices.append(WeekSlice(week.row_index[0], first_row, week))
    _LOGGER.debug('%r holds %i week slice(s) (gap_free_only=%s)',
                  matrix, len(slices), gap_free_only)
    return slices


def _terrain(latitude, longitude):
    """Smooth relief rising towards the south-east corner of the box."""
    (lat_lo, lat_hi), (lon_lo, lon_hi) = SYNTH_BOUNDING_BOX
    south = (lat_hi - latitude) / (lat_hi - lat_lo)
    east = (longitude - lon_lo) / (lon_hi - lon_lo)
    relief = SYNTH_MAX_ALTITUDE * (south * east) ** 1.5
    hills = 60.0 * (1.0 + np.sin(7.0 * longitude) * np.cos(9.0 * latitude))
    return relief + hills


def synthesize_network(n_stations, n_weeks, seed):
    """
    Generate a fully observed synthetic station network.

    Temperatures add a seasonal trend, a diurnal cycle, an altitude lapse
    term and noise that is correlated in space (exponential covariance in
    great-circle distance) and persistent in time (AR(1)). The matrix
    holds n_weeks * WEEK_ROWS rows so that slice_weeks returns n_weeks
    slices.
    """
    # pylint: disable=too-many-locals
    from .graphs import distance_matrix

    if n_stations < 2:
        raise DataError('need at least 2 stations, got {}'.format(
            n_stations))
    if n_weeks < 1:
        raise DataError('need at least 1 week, got {}'.format(n_weeks))

    rng = np.random.default_rng(seed)
    (lat_lo, lat_hi), (lon_lo, lon_hi) = SYNTH_BOUNDING_BOX
    latitude = rng.uniform(lat_lo, lat_hi, n_stations)
    longitude = rng.uniform(lon_lo, lon_hi, n_stations)
    altitude = _terrain(latitude, longitude)
    stations = [Station('S{:03d}'.format(j + 1), latitude[j], longitude[j],
                        round(float(altitude[j]), 1))
                for j in range(n_stations)]
    altitude = np.array([station.altitude for station in stations])

    m = n_weeks * WEEK_ROWS
    row_index = pd.date_range(pd.Timestamp(SYNTH_START, tz='UTC'),
                              periods=m, freq=STEP)
    day = (row_index - row_index[0]).total_seconds().values / 86400.0
    day_of_year = row_index[0].dayofyear - 1 + day
    hour = (row_index.hour + row_index.minute / 60.0).values

    seasonal = SYNTH_MEAN_TEMPERATURE - SYNTH_SEASONAL_AMPLITUDE * np.cos(
        2.0 * np.pi * (day_of_year - 15.0) / 365.25)
    diurnal_gain = rng.uniform(0.8, 1.2, n_stations)
    diurnal = SYNTH_DIURNAL_AMPLITUDE * np.sin(
        2.0 * np.pi * (hour - 9.0) / 24.0)

    distances = distance_matrix(stations)
    covariance = np.exp(-distances / SYNTH_CORRELATION_LENGTH_KM)
    factor = np.linalg.cholesky(covariance + 1e-9 * np.eye(n_stations))
    shocks = rng.standard_normal((m, n_stations)) @ factor.T
    phi = SYNTH_NOISE_PERSISTENCE
    noise = np.empty_like(shocks)
    noise[0] = shocks[0]
    scale = np.sqrt(1.0 - phi ** 2)
    for t in range(1, m):
        noise[t] = phi * noise[t - 1] + scale * shocks[t]

    values = (seasonal[:, None]
              + diurnal[:, None] * diurnal_gain[None, :]
              + LAPSE_RATE * altitude[None, :]
              + SYNTH_NOISE_SD * noise)
    matrix = ObservationMatrix(values, np.ones(values.shape, dtype=bool),
                               row_index,
                               [station.station_id for station in stations])
    _LOGGER.debug("Synthesized %r with seed %s", matrix, seed)
    return matrix, stations
