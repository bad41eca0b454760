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
import logging
from collections import namedtuple

import numpy as np

_LOGGER = logging.getLogger(__name__)

CGResult = namedtuple('CGResult', 'x iterations residual converged')


def _inner(x, y):
    return float(np.vdot(x, y))


def conjugate_gradient(apply, rhs, x0=None, tol=1e-8, max_iter=500):
    """
    Solve H x = rhs for a symmetric positive definite operator.

    Params:
        apply: callable returning H @ x for an array shaped like rhs
        rhs: right-hand side, any shape (an m x r factor for instance)
        x0: warm start, zeros if None
        tol: target relative residual ||H x - rhs|| / ||rhs||
        max_iter: cap on operator applications in the main loop

    The stopping test is made on the true residual: when the recursive
    residual reaches tol it is recomputed from scratch and the iteration
    restarts from it if needed.

    Return: CGResult(x, iterations, relative residual, converged)
    """
    rhs = np.asarray(rhs, dtype=np.float64)
    bnorm = np.linalg.norm(rhs)
    x = np.zeros_like(rhs) if x0 is None else np.array(x0, dtype=np.float64)
    if bnorm == 0.0:
        return CGResult(np.zeros_like(rhs), 0, 0.0, True)

    target = tol * bnorm
    residual = rhs - apply(x)
    direction = residual.copy()
    rs_old = _inner(residual, residual)
    iterations = 0
    converged = False
    while iterations < max_iter:
        if np.sqrt(rs_old) <= target:
            residual = rhs - apply(x)
            rs_old = _inner(residual, residual)
            if np.sqrt(rs_old) <= target:
                converged = True
                break
            direction = residual.copy()
        h_direction = apply(direction)
        curvature = _inner(direction, h_direction)
        if curvature <= 0.0:
            _LOGGER.debug('CG stopped on non-positive curvature %g',
                          curvature)
            break
        alpha = rs_old / curvature
        x += alpha * direction
        residual -= alpha * h_direction
        rs_new = _inner(residual, residual)
        direction = residual + (rs_new / rs_old) * direction
        rs_old = rs_new
        iterations += 1

    relative = np.linalg.norm(rhs - apply(x)) / bnorm
    converged = converged or relative <= tol
    return CGResult(x, iterations, float(relative), converged)
