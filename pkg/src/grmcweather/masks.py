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
"""Synthetic Block and Spread missing-data patterns."""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .config import (
    BLOCK_LEN_RANGE,
    DEFAULT_MISSING_FRACTION,
    MASK_COLUMNS,
    MASK_MAX_RETRIES,
    SPREAD_LEN_RANGE,
)
from .data import TIMESTAMP_FORMAT, parse_timestamps
from .exceptions import MaskError
from .utils import round_half_up

_LOGGER = logging.getLogger(__name__)

SCENARIOS = ('block', 'spread')


@dataclass(frozen=True)
class MaskScenario(object):
    """
    Params:
        kind: 'block' (runs of one to three days) or 'spread' (runs of
              ten minutes to two hours)
        target_fraction: share of the m x n entries to hold out
        block_len_range, gap_len_range: inclusive run lengths in steps
        seed: generator seed
    """
    kind: str = 'block'
    target_fraction: float = DEFAULT_MISSING_FRACTION
    block_len_range: tuple = BLOCK_LEN_RANGE
    gap_len_range: tuple = SPREAD_LEN_RANGE
    seed: int = 0

    def __post_init__(self):
        kind = str(self.kind).lower()
        if kind not in SCENARIOS:
            raise MaskError('unknown scenario {!r}, expected one of '
                            '{}'.format(self.kind, ', '.join(SCENARIOS)))
        object.__setattr__(self, 'kind', kind)
        if not 0 < self.target_fraction < 1:
            raise MaskError('target fraction must be in (0, 1), got '
                            '{}'.format(self.target_fraction))
        for name in ('block_len_range', 'gap_len_range'):
            low, high = (int(v) for v in getattr(self, name))
            if not 1 <= low <= high:
                raise MaskError('{} must satisfy 1 <= low <= high'.format(
                    name))
            object.__setattr__(self, name, (low, high))

    @property
    def length_range(self):
        if self.kind == 'block':
            return self.block_len_range
        return self.gap_len_range


class HoldoutMask(object):
    """Entries removed from a matrix, with the runs that produced them."""

    def __init__(self, entries, runs):
        self.entries = np.array(entries, dtype=bool)
        self.entries.setflags(write=False)
        self.runs = [tuple(int(v) for v in run) for run in runs]

    def __repr__(self):
        return '<HoldoutMask entries={} runs={}>'.format(
            self.size, len(self.runs))

    def __eq__(self, other):
        return (isinstance(other, HoldoutMask) and
                np.array_equal(self.entries, other.entries) and
                self.runs == other.runs)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    @property
    def size(self):
        return int(self.entries.sum())


def _valid_starts(free_column, length):
    counts = np.concatenate([[0], np.cumsum(free_column)])
    return np.nonzero(counts[length:] - counts[:-length] == length)[0]


def generate_mask(matrix, scenario):
    """
    Sample per-station runs of missing entries until exactly
    round(target_fraction * m * n) entries are held out.

    Stations are drawn uniformly among those with free rows, run lengths
    uniformly in the scenario's range, and starts uniformly among the
    positions that keep the run inside the matrix and off earlier runs of
    that station. The last run is truncated to hit the target.
    """
    m, n = matrix.shape
    target = round_half_up(scenario.target_fraction * m * n)
    free = matrix.mask.copy()
    if target > free.sum():
        raise MaskError('cannot hold out {} entries from {} observed'.format(
            target, int(free.sum())))
    rng = np.random.default_rng(scenario.seed)
    low, high = scenario.length_range
    entries = np.zeros((m, n), dtype=bool)
    runs = []
    remaining = target
    retries = 0
    while remaining > 0:
        candidates = np.nonzero(free.any(axis=0))[0]
        station = int(rng.choice(candidates))
        length = min(int(rng.integers(low, high + 1)), remaining)
        starts = _valid_starts(free[:, station], length)
        if not starts.size:
            retries += 1
            if retries > MASK_MAX_RETRIES:
                raise MaskError(
                    '{} scenario: placed {} of {} entries in {} runs, no '
                    'room for further runs after {} retries'.format(
                        scenario.kind, target - remaining, target,
                        len(runs), MASK_MAX_RETRIES))
            continue
        start = int(rng.choice(starts))
        free[start:start + length, station] = False
        entries[start:start + length, station] = True
        runs.append((station, start, length))
        remaining -= length
    _LOGGER.debug('%s mask with %i entries in %i runs (seed %s)',
                  scenario.kind, target, len(runs), scenario.seed)
    return HoldoutMask(entries, runs)


def apply_mask(matrix, mask):
    """
    Split matrix into a training matrix without the mask entries and the
    boolean holdout set. The true holdout values stay in matrix.
    """
    entries = mask.entries
    if entries.shape != matrix.shape:
        raise MaskError('mask shape {} does not match {}'.format(
            entries.shape, matrix.shape))
    outside = entries & ~matrix.mask
    if outside.any():
        i, j = (int(v[0]) for v in np.nonzero(outside))
        raise MaskError('mask references unobserved entry ({}, {})'.format(
            i, j))
    train = matrix.with_mask(matrix.mask & ~entries)
    return train, entries.copy()


def export_mask(mask, matrix, path):
    """Write the runs as station_id,start_timestamp,length_steps."""
    frame = pd.DataFrame({
        'station_id': [matrix.col_index[j] for j, _, _ in mask.runs],
        'start_timestamp': [matrix.row_index[s].strftime(TIMESTAMP_FORMAT)
                            for _, s, _ in mask.runs],
        'length_steps': [length for _, _, length in mask.runs],
    }, columns=list(MASK_COLUMNS))
    frame.to_csv(path, index=False)


def read_mask(path, matrix):
    """Rebuild a HoldoutMask for matrix from an exported run list."""
    try:
        frame = pd.read_csv(path, dtype={'station_id': str},
                            float_precision='round_trip')
    except (OSError, pd.errors.ParserError,
            pd.errors.EmptyDataError) as error:
        raise MaskError('cannot read {}: {}'.format(path, error))
    missing = [col for col in MASK_COLUMNS if col not in frame.columns]
    if missing:
        raise MaskError('{}: missing column(s) {}'.format(
            path, ', '.join(missing)))
    col_of = dict((sid, j) for j, sid in enumerate(matrix.col_index))
    starts = parse_timestamps(frame['start_timestamp'])
    entries = np.zeros(matrix.shape, dtype=bool)
    runs = []
    for sid, start, length in zip(frame['station_id'], starts,
                                  frame['length_steps']):
        if sid not in col_of:
            raise MaskError('{}: unknown station {}'.format(path, sid))
        row = matrix.row_index.get_indexer([start])[0]
        if row < 0 or row + int(length) > matrix.m or int(length) < 1:
            raise MaskError('{}: run {} at {} (+{}) outside the matrix'.format(
                path, sid, start, length))
        entries[row:row + int(length), col_of[sid]] = True
        runs.append((col_of[sid], row, int(length)))
    return HoldoutMask(entries, runs)
