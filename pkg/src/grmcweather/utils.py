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
import math

import numpy as np

PRECISION = 2

_TRUE_VALUES = ('y', 'yes', 't', 'true', 'on', '1')
_FALSE_VALUES = ('n', 'no', 'f', 'false', 'off', '0')


def percent(part, whole):
    """Convert data to percent"""
    return round(100 * float(part) / float(whole), PRECISION)


def str2bool(value):
    """
    Args:
        value - text to be converted to boolean
         True values: y, yes, true, t, on, 1
         False values: n, no, false, f, off, 0
    """
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in _TRUE_VALUES:
            return True
        if lowered in _FALSE_VALUES:
            return False
        raise ValueError('invalid truth value {!r}'.format(value))
    return bool(value)


def parse_lags(value):
    """
    Parse a lag set written as '1,2,3' or '[1, 2, 3]'.

    Returns a tuple of ints. Raises ValueError on anything that is not a
    strictly increasing list of positive integers.
    """
    if isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        text = str(value).strip().strip('[]()')
        parts = [part for part in text.replace(' ', '').split(',') if part]
    if not parts:
        raise ValueError('empty lag set')
    lags = tuple(int(part) for part in parts)
    if lags[0] < 1 or any(b <= a for a, b in zip(lags, lags[1:])):
        raise ValueError(
            'lags must be strictly increasing positive integers: '
            '{}'.format(value))
    return lags


def format_lags(lags):
    return ','.join(str(lag) for lag in lags)


def round_half_up(value):
    """Round to the nearest integer, halves away from zero."""
    return int(math.floor(value + 0.5))


def relative_change(new, old):
    """Relative decrease |old - new| / max(|old|, tiny)."""
    return abs(old - new) / max(abs(old), np.finfo(float).tiny)


def fold_seed(*keys):
    """
    Derive an independent 32-bit seed from integer keys, e.g.
    fold_seed(plan_seed, week_index, mask_index).
    """
    sequence = np.random.SeedSequence([int(key) for key in keys])
    return int(sequence.generate_state(1)[0])
