##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Fractional calculus on uniform time grids

* :func:`fractional_integral`: Riemann-Liouville integral by product
  integration of the piecewise-linear interpolant,
* :func:`rl_derivative`: d/dt of the integral of order 1 - alpha,
* :func:`caputo_derivative`: L1 scheme.

Values may carry trailing axes (for example a spatial field per node);
the time axis is always the first one.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import linalg, special

from afpk.exceptions import InvalidParameterValue

LOGGER = logging.getLogger('AFPK')


class TimeGrid(namedtuple('TimeGrid', 'h n')):
    """Nodes t_k = k h, k = 0..n
    """
    __slots__ = ()

    def __new__(cls, h, n):
        h = float(h)
        n = int(n)
        if not h > 0:
            raise InvalidParameterValue('Time step must be positive, got {}'.format(h), 'h')
        if n < 2:
            raise InvalidParameterValue('Time grid needs n >= 2, got {}'.format(n), 'n')
        return super(TimeGrid, cls).__new__(cls, h, n)

    @classmethod
    def uniform(cls, T, n):
        """n steps covering [0, T]"""
        return cls(float(T) / int(n), n)

    @property
    def T(self):
        return self.h * self.n

    @property
    def nodes(self):
        return self.h * np.arange(self.n + 1)

    def refine(self, factor=2):
        return TimeGrid(self.h / factor, self.n * factor)


class TimeSeries(namedtuple('TimeSeries', 'grid values')):
    """Samples per node of a TimeGrid, time along axis 0
    """
    __slots__ = ()

    def __new__(cls, grid, values):
        values = np.asarray(values)
        if values.shape[0] != grid.n + 1:
            raise InvalidParameterValue('Series has {} nodes, grid has {}'.format(values.shape[0], grid.n + 1),
                                        'values')
        return super(TimeSeries, cls).__new__(cls, grid, values)

    @classmethod
    def sample(cls, grid, func):
        """Evaluate func on the grid nodes"""
        return cls(grid, func(grid.nodes))


def _check_order(alpha, upper=None):
    alpha = float(alpha)
    if alpha < 0 or (upper is not None and not alpha <= upper):
        raise InvalidParameterValue('Order {} outside the admissible range'.format(alpha), 'alpha')
    return alpha


def _flat(values):
    return values.reshape(values.shape[0], -1)


def integral_weights(alpha, n):
    """Lower triangular product integration matrix W with
    I^alpha f(t_k) ~ h^alpha / Gamma(alpha + 2) * sum_j W[k, j] f_j
    """

    m = np.arange(n + 1, dtype=float)
    p = alpha + 1.0
    column = np.empty(n + 1)
    column[0] = 1.0
    column[1:] = (m[1:] + 1.0) ** p - 2.0 * m[1:] ** p + (m[1:] - 1.0) ** p
    weights = np.tril(linalg.toeplitz(column))
    k = m[1:]
    weights[1:, 0] = (k - 1.0) ** p - (k - alpha - 1.0) * k ** alpha
    weights[0, 0] = 0.0
    return weights


def fractional_integral(series, alpha):
    """Riemann-Liouville integral of order alpha >= 0

    Exact for piecewise-linear data; alpha = 0 returns the input.
    """

    alpha = _check_order(alpha)
    if alpha == 0:
        return TimeSeries(series.grid, np.array(series.values, copy=True))
    grid = series.grid
    values = np.asarray(series.values)
    weights = integral_weights(alpha, grid.n)
    scale = grid.h ** alpha * special.rgamma(alpha + 2.0)
    out = scale * weights.dot(_flat(values))
    return TimeSeries(grid, out.reshape(values.shape))


def rl_derivative(series, alpha):
    """Riemann-Liouville derivative D^alpha = d/dt I^{1-alpha}, alpha in (0, 1]

    Central differences inside, second order one-sided differences at the
    end points (the value at t = 0 is low order).
    """

    alpha = _check_order(alpha, 1.0)
    if alpha == 0:
        return TimeSeries(series.grid, np.array(series.values, copy=True))
    integral = series if alpha == 1 else fractional_integral(series, 1.0 - alpha)
    values = np.gradient(np.asarray(integral.values, dtype=float), series.grid.h, axis=0, edge_order=2)
    return TimeSeries(series.grid, values)


def caputo_weights(alpha, n):
    """b_m = (m+1)^{1-alpha} - m^{1-alpha}, m = 0..n-1"""

    m = np.arange(n, dtype=float)
    return (m + 1.0) ** (1.0 - alpha) - m ** (1.0 - alpha)


def caputo_derivative(series, alpha):
    """Caputo derivative of order alpha in (0, 1] by the L1 scheme

        h^-alpha / Gamma(2 - alpha) sum_{j<k} b_{k-j-1} (f_{j+1} - f_j)

    For alpha = 1 the ordinary derivative by central differences.
    """

    alpha = _check_order(alpha, 1.0)
    if alpha == 0:
        values = np.asarray(series.values, dtype=float)
        return TimeSeries(series.grid, values - values[0])
    grid = series.grid
    values = np.asarray(series.values, dtype=float)
    if alpha == 1:
        return TimeSeries(grid, np.gradient(values, grid.h, axis=0, edge_order=2))

    diffs = np.diff(_flat(values), axis=0)
    memory = np.tril(linalg.toeplitz(caputo_weights(alpha, grid.n)))
    out = np.zeros((grid.n + 1, diffs.shape[1]))
    out[1:] = memory.dot(diffs)
    out *= grid.h ** (-alpha) / math.gamma(2.0 - alpha)
    return TimeSeries(grid, out.reshape(values.shape))
