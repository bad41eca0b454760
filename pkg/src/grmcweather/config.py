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

# Sampling step of the station network, in minutes.
STEP_MINUTES = 10
STEPS_PER_DAY = 24 * 60 // STEP_MINUTES

# One week at 10-minute resolution with both endpoints included.
WEEK_ROWS = 7 * STEPS_PER_DAY + 1

# CSV headers.
OBSERVATION_COLUMNS = ('timestamp', 'station_id', 'temperature_c')
METADATA_COLUMNS = ('station_id', 'latitude', 'longitude', 'altitude_m')
EDGE_COLUMNS = ('i', 'j', 'weight')
MASK_COLUMNS = ('station_id', 'start_timestamp', 'length_steps')
TRACE_COLUMNS = ('iter', 'objective')

# Spherical Earth for geographic distances.
EARTH_RADIUS_KM = 6371.0

# Altitude difference above which two stations are never linked.
DEFAULT_ALTITUDE_THRESHOLD = 100.0

# Standard atmosphere temperature lapse rate, degC per meter.
LAPSE_RATE = -0.0065

# Synthetic network generator.
SYNTH_START = '2020-01-01T00:00:00'
SYNTH_BOUNDING_BOX = ((49.5, 51.5), (2.5, 6.4))
SYNTH_MEAN_TEMPERATURE = 10.5
SYNTH_SEASONAL_AMPLITUDE = 7.5
SYNTH_DIURNAL_AMPLITUDE = 4.0
SYNTH_NOISE_SD = 1.2
SYNTH_CORRELATION_LENGTH_KM = 60.0
SYNTH_NOISE_PERSISTENCE = 0.98
SYNTH_MAX_ALTITUDE = 650.0

# GRALS.
DEFAULT_RANK = 10
DEFAULT_LAMBDA = 0.001
DEFAULT_OUTER_TOL = 1e-6
DEFAULT_MAX_OUTER = 100
DEFAULT_CG_TOL = 1e-8
DEFAULT_CG_MAX_ITER = 500
# Completed values beyond this multiple of the largest observed magnitude
# are reported.
OUT_OF_RANGE_FACTOR = 10.0

# Baselines.
DEFAULT_IDW_POWER = 2.0
DEFAULT_PCA_RANK = 5
DEFAULT_SOFTIMPUTE_LAMBDA = 5.0
DEFAULT_ITERATIVE_TOL = 1e-5
DEFAULT_ITERATIVE_MAX_ITER = 500

# Missing data scenarios, in sampling steps.
BLOCK_LEN_RANGE = (STEPS_PER_DAY, 3 * STEPS_PER_DAY)
SPREAD_LEN_RANGE = (1, 12)
DEFAULT_MISSING_FRACTION = 0.1
MASK_MAX_RETRIES = 10000

# Monte Carlo cross-validation.
DEFAULT_TRAIN_WEEKS = 10
DEFAULT_MASKS_PER_WEEK_TRAIN = 5
DEFAULT_TEST_WEEKS = 5
DEFAULT_MASKS_PER_WEEK_TEST = 3
DEFAULT_N_SAMPLES = 60
DEFAULT_TEST_BOUNDARY = '2021-09-01T00:00:00'

# Hyperparameter candidates.
GRID_RANKS = tuple(range(2, 21))
GRID_LAMBDAS = (0.1, 0.01, 0.001, 0.005)
GRID_K = (1, 2, 3, 4, 5)
GRID_WEIGHTED = (True, False)
GRID_ALTITUDE_LIMIT = (True, False)
GRID_LAGSETS = ((1,), (1, 2), (1, 2, 3), (1, 2, 3, 4, 5))
GRID_WEIGHT_RULES = ('unit',)

# Command line.
OUTPUT_DIR_ENV = 'GRMC_OUTPUT_DIR'
DEFAULT_OUTPUT_DIR = 'grmc-output'
DEFAULT_CONFIG_FILE = '~/.config/grmcweather.conf'
MANIFEST_NAME = 'manifest.ini'
