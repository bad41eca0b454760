"""Small matrices and station layouts shared by the tests."""
import numpy as np
import pandas as pd

from grmcweather.data import ObservationMatrix, Station
from grmcweather.graphs import WeightedGraph

START = pd.Timestamp('2020-01-01T00:00:00', tz='UTC')


def make_matrix(values, mask=None, start=START):
    values = np.asarray(values, dtype=np.float64)
    if mask is None:
        mask = np.ones(values.shape, dtype=bool)
    index = pd.date_range(start, periods=values.shape[0], freq='10min')
    ids = ['S{:03d}'.format(j + 1) for j in range(values.shape[1])]
    return ObservationMatrix(values, mask, index, ids)


def line_stations(longitudes, altitudes=None, latitude=0.0):
    """Stations on one parallel, at the given longitudes in degrees."""
    if altitudes is None:
        altitudes = [0.0] * len(longitudes)
    return [Station('S{:03d}'.format(j + 1), latitude, lon, alt)
            for j, (lon, alt) in enumerate(zip(longitudes, altitudes))]


def random_graph(n_nodes, rng, density=0.3):
    rows, cols = np.nonzero(np.triu(rng.random((n_nodes, n_nodes)) <
                                    density, k=1))
    return WeightedGraph(n_nodes, rows, cols,
                         rng.uniform(0.1, 2.0, rows.size))


def random_mask(shape, fraction, rng, min_per_line=1):
    """Random observed set with at least min_per_line entries per row and
    per column."""
    while True:
        mask = rng.random(shape) < fraction
        if (mask.sum(axis=0).min() >= min_per_line and
                mask.sum(axis=1).min() >= min_per_line):
            return mask
