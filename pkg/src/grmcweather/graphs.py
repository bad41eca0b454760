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
"""Spatial (station) and temporal (timestamp) graphs and their Laplacians."""
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
import scipy.sparse

from .config import (
    DEFAULT_ALTITUDE_THRESHOLD,
    EARTH_RADIUS_KM,
    EDGE_COLUMNS,
)
from .exceptions import GraphError

_LOGGER = logging.getLogger(__name__)

WEIGHT_RULES = ('unit', 'inverse_lag')


class WeightedGraph(object):
    """
    Undirected graph with positive edge weights.

    Edges are stored once, as (i, j, weight) with i < j; the adjacency
    matrix is symmetric by construction.
    """

    def __init__(self, n_nodes, rows=(), cols=(), weights=()):
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        weights = np.asarray(weights, dtype=np.float64).ravel()
        if not rows.shape == cols.shape == weights.shape:
            raise GraphError('edge arrays have different lengths')
        if np.any(rows == cols):
            raise GraphError('self-loops are not allowed')
        if rows.size and (min(rows.min(), cols.min()) < 0 or
                          max(rows.max(), cols.max()) >= n_nodes):
            raise GraphError('edge endpoint outside [0, {})'.format(n_nodes))
        if np.any(~(weights > 0)) or not np.all(np.isfinite(weights)):
            raise GraphError('edge weights must be positive and finite')
        low, high = np.minimum(rows, cols), np.maximum(rows, cols)
        order = np.lexsort((high, low))
        low, high, weights = low[order], high[order], weights[order]
        if low.size > 1:
            same = (np.diff(low) == 0) & (np.diff(high) == 0)
            if same.any():
                at = int(np.argmax(same))
                raise GraphError('duplicate edge ({}, {})'.format(
                    low[at], high[at]))
        self.n_nodes = int(n_nodes)
        self._rows, self._cols, self._weights = low, high, weights
        for array in (self._rows, self._cols, self._weights):
            array.setflags(write=False)

    def __repr__(self):
        return '<WeightedGraph nodes={} edges={}>'.format(
            self.n_nodes, self.n_edges)

    def __eq__(self, other):
        return (isinstance(other, WeightedGraph) and
                self.n_nodes == other.n_nodes and
                np.array_equal(self._rows, other._rows) and
                np.array_equal(self._cols, other._cols) and
                np.array_equal(self._weights, other._weights))

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    @property
    def n_edges(self):
        return int(self._rows.size)

    @property
    def edges(self):
        return [(int(i), int(j), float(w)) for i, j, w
                in zip(self._rows, self._cols, self._weights)]

    def edge_set(self):
        return set(zip(self._rows.tolist(), self._cols.tolist()))

    def adjacency(self):
        """Symmetric sparse adjacency matrix W."""
        rows = np.concatenate([self._rows, self._cols])
        cols = np.concatenate([self._cols, self._rows])
        data = np.concatenate([self._weights, self._weights])
        return scipy.sparse.csr_matrix(
            (data, (rows, cols)), shape=(self.n_nodes, self.n_nodes))

    def degrees(self):
        return np.asarray(self.adjacency().sum(axis=1)).ravel()

    def to_frame(self):
        return pd.DataFrame({'i': self._rows, 'j': self._cols,
                             'weight': self._weights},
                            columns=list(EDGE_COLUMNS))


@dataclass(frozen=True)
class LagSet(object):
    """Repeating temporal dependency pattern and its weight rule."""
    lags: tuple = (1,)
    weight_rule: str = 'unit'

    def __post_init__(self):
        lags = tuple(int(lag) for lag in self.lags)
        if not lags:
            raise GraphError('lag set must not be empty')
        if lags[0] < 1 or any(b <= a for a, b in zip(lags, lags[1:])):
            raise GraphError(
                'lags must be strictly increasing positive integers')
        if self.weight_rule not in WEIGHT_RULES:
            raise GraphError('unknown weight rule {!r}, expected one of '
                             '{}'.format(self.weight_rule,
                                         ', '.join(WEIGHT_RULES)))
        object.__setattr__(self, 'lags', lags)

    def weight(self, lag):
        if self.weight_rule == 'inverse_lag':
            return 1.0 / lag
        return 1.0


@dataclass(frozen=True)
class SpatialGraphConfig(object):
    k: int = 3
    weighted: bool = False
    altitude_limit: bool = False
    altitude_threshold: float = DEFAULT_ALTITUDE_THRESHOLD

    def __post_init__(self):
        if int(self.k) < 1:
            raise GraphError('k must be at least 1, got {}'.format(self.k))
        if not self.altitude_threshold > 0:
            raise GraphError('altitude threshold must be positive, got '
                             '{}'.format(self.altitude_threshold))


def haversine_distance(a, b):
    """Great-circle distance in km between two stations."""
    lat1, lon1, lat2, lon2 = map(
        math.radians, [a.latitude, a.longitude, b.latitude, b.longitude])
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = (math.sin(dlat / 2) ** 2 +
         math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2)
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def distance_matrix(stations):
    """Pairwise haversine distances (km) as a dense symmetric array."""
    lat = np.radians([station.latitude for station in stations])
    lon = np.radians([station.longitude for station in stations])
    dlat = lat[:, None] - lat[None, :]
    dlon = lon[:, None] - lon[None, :]
    h = (np.sin(dlat / 2) ** 2 +
         np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin(dlon / 2) ** 2)
    distances = 2 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.clip(h, 0, 1)))
    np.fill_diagonal(distances, 0.0)
    return distances


def build_spatial_graph(stations, cfg):
    """
    K-nearest-neighbour graph over stations.

    With cfg.altitude_limit, pairs whose altitude difference exceeds
    cfg.altitude_threshold are removed from the candidates before the
    neighbours are chosen. The directed relation is symmetrized by union.
    Distance ties go to the lower station index.
    """
    n = len(stations)
    if cfg.k >= n:
        raise GraphError('k={} needs more than {} stations'.format(cfg.k, n))
    distances = distance_matrix(stations)
    admissible = ~np.eye(n, dtype=bool)
    if cfg.altitude_limit:
        altitude = np.array([station.altitude for station in stations])
        admissible &= (np.abs(altitude[:, None] - altitude[None, :]) <=
                       cfg.altitude_threshold)

    pairs = set()
    for i in range(n):
        order = np.argsort(distances[i], kind='stable')
        neighbours = [j for j in order if admissible[i, j]][:cfg.k]
        if not neighbours:
            _LOGGER.debug('Station %s has no admissible neighbour',
                          stations[i].station_id)
        for j in neighbours:
            pairs.add((min(i, j), max(i, j)))

    pairs = sorted(pairs)
    rows = np.array([i for i, _ in pairs], dtype=np.int64)
    cols = np.array([j for _, j in pairs], dtype=np.int64)
    if cfg.weighted:
        lengths = distances[rows, cols] if pairs else np.zeros(0)
        if np.any(lengths <= 0):
            at = int(np.argmax(lengths <= 0))
            raise GraphError('stations {} and {} share coordinates'.format(
                stations[rows[at]].station_id,
                stations[cols[at]].station_id))
        weights = 1.0 / lengths
    else:
        weights = np.ones(len(pairs))
    graph = WeightedGraph(n, rows, cols, weights)
    _LOGGER.debug('Spatial graph %r from %s', graph, cfg)
    return graph


def build_temporal_graph(m, lagset):
    """Link timestamps t and t + lag for every lag of the lag set."""
    if max(lagset.lags) >= m:
        raise GraphError('largest lag {} needs more than {} rows'.format(
            max(lagset.lags), m))
    rows, cols, weights = [], [], []
    for lag in lagset.lags:
        start = np.arange(m - lag, dtype=np.int64)
        rows.append(start)
        cols.append(start + lag)
        weights.append(np.full(m - lag, lagset.weight(lag)))
    graph = WeightedGraph(m, np.concatenate(rows), np.concatenate(cols),
                          np.concatenate(weights))
    _LOGGER.debug('Temporal graph %r from %s', graph, lagset)
    return graph


def laplacian(graph):
    """Combinatorial Laplacian L = D - W as a sparse CSR matrix."""
    return (scipy.sparse.diags(graph.degrees()) - graph.adjacency()).tocsr()


def removed_edges(graph, restricted):
    """Edges of graph that are absent from restricted."""
    return sorted(graph.edge_set() - restricted.edge_set())


def export_edges(graph, path):
    graph.to_frame().to_csv(path, index=False, float_format='%.17g')


def read_edges(path, n_nodes):
    try:
        frame = pd.read_csv(path, float_precision='round_trip')
    except (OSError, pd.errors.ParserError,
            pd.errors.EmptyDataError) as error:
        raise GraphError('cannot read {}: {}'.format(path, error))
    missing = [col for col in EDGE_COLUMNS if col not in frame.columns]
    if missing:
        raise GraphError('{}: missing column(s) {}'.format(
            path, ', '.join(missing)))
    return WeightedGraph(n_nodes, frame['i'].values, frame['j'].values,
                         frame['weight'].values)
