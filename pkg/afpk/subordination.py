##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Inverse stable subordinator R_t

R_t is the first passage time of the alpha-stable subordinator Q above
level t. Its density phi(t, r) and the weights
phi_{alpha,beta}(t, r) = D_t^{beta-alpha} phi(t, r) have the Laplace
transform (in t) s^{beta-1} exp(-r s^alpha), hence the Wright series

    phi_{alpha,beta}(t, r) = t^-beta sum_n (-y)^n / (n! Gamma(1 - beta - alpha n)),
    y = r t^-alpha.

Small y is summed directly; large y goes through the stable density.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import special

from afpk import fraccalc
from afpk.exceptions import GridTooCoarse, InvalidParameterValue
from afpk.special import stable_density

LOGGER = logging.getLogger('AFPK')

WRIGHT_THRESHOLD = 2.0
WRIGHT_TERMS = 200
RICHARDSON_TOLERANCE = 1e-4


class SubordinationParams(namedtuple('SubordinationParams', 'alpha')):
    """Stable index alpha in (0, 1) of Q
    """
    __slots__ = ()

    def __new__(cls, alpha):
        alpha = float(alpha)
        if not 0 < alpha < 1:
            raise InvalidParameterValue('Subordination index must lie in (0, 1), got {}'.format(alpha), 'alpha')
        return super(SubordinationParams, cls).__new__(cls, alpha)


def _positive(value, name):
    value = np.asarray(value, dtype=float)
    if np.any(~(value > 0)):
        raise InvalidParameterValue('{} must be positive'.format(name), name)
    return value


def _result(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def tail_rate(alpha):
    """c_alpha in phi(t, r) ~ exp(-c_alpha (r t^-alpha)^{1/(1-alpha)})"""
    return (1.0 - alpha) * alpha ** (alpha / (1.0 - alpha))


def tail_cutoff(params, t, tol=1e-16):
    """r beyond which the weights fall below tol relative to t^-beta"""
    alpha = params.alpha
    y_max = (max(-math.log(tol), 1.0) / tail_rate(alpha)) ** (1.0 - alpha)
    return y_max * float(t) ** alpha


def wright_threshold(alpha, terms=WRIGHT_TERMS):
    """Largest y = r t^-alpha summed by the Wright series

    Term n behaves like (y alpha^alpha / n^{1-alpha})^n; the threshold keeps
    the last term below 1e-17.
    """
    return min(WRIGHT_THRESHOLD, 0.82 * terms ** (1.0 - alpha) / alpha ** alpha)


def wright_sum(alpha, beta, y, terms=WRIGHT_TERMS):
    """sum_n (-y)^n / (n! Gamma(1 - beta - alpha n)) summed in log space"""

    y = np.asarray(y, dtype=float)
    total = np.full(y.shape, special.rgamma(1.0 - beta))
    logy = np.log(np.where(y > 0, y, 1.0))
    for n in range(1, terms + 1):
        arg = 1.0 - beta - alpha * n
        lg = special.gammaln(arg)
        if not np.isfinite(lg):
            continue
        sign = (-1.0) ** n * special.gammasgn(arg)
        total = total + np.where(y > 0, sign * np.exp(n * logy - special.gammaln(n + 1.0) - lg), 0.0)
    return total


def wright_weight(params, beta, t, r, terms=WRIGHT_TERMS):
    """phi_{alpha,beta}(t, r) by the Wright series, accurate for r t^-alpha <= wright_threshold(alpha)"""

    t = _positive(t, 't')
    r = np.asarray(r, dtype=float)
    y = r * t ** (-params.alpha)
    return _result(t ** (-beta) * wright_sum(params.alpha, beta, y, terms))


def _stable_composed(alpha, s):
    """g_alpha at s, computed once per distinct value"""
    uniq, inverse = np.unique(s, return_inverse=True)
    return stable_density(alpha, uniq)[inverse].reshape(s.shape)


def _hybrid(params, beta, t, r, composed):
    t, r = np.broadcast_arrays(_positive(t, 't'), _positive(r, 'r'))
    alpha = params.alpha
    y = r * t ** (-alpha)
    out = np.empty(y.shape)
    small = y <= wright_threshold(alpha)
    out[small] = t[small] ** (-beta) * wright_sum(alpha, beta, y[small])
    large = ~small
    if np.any(large):
        out[large] = composed(t[large], r[large])
    return _result(out)


def inverse_subordinator_density(params, t, r):
    """Density phi(t, r) of R_t

        phi(t, r) = (t / alpha) r^{-1-1/alpha} g_alpha(t r^{-1/alpha})
    """

    alpha = params.alpha

    def composed(t, r):
        s = t * r ** (-1.0 / alpha)
        return (t / alpha) * r ** (-1.0 - 1.0 / alpha) * _stable_composed(alpha, s)

    return _hybrid(params, alpha, t, r, composed)


def first_passage_weight(params, t, r):
    """phi_{alpha,1}(t, r) = r^{-1/alpha} g_alpha(t r^{-1/alpha}), the
    density in t of Q_r
    """

    alpha = params.alpha

    def composed(t, r):
        s = t * r ** (-1.0 / alpha)
        return r ** (-1.0 / alpha) * _stable_composed(alpha, s)

    return _hybrid(params, 1.0, t, r, composed)


def _grid_weight(params, beta, t, r_grid, n):
    """D_t^{beta-alpha} phi(., r) at t on a grid with t at node n"""

    order = beta - params.alpha
    grid = fraccalc.TimeGrid(t / n, n + 2)
    nodes = grid.nodes
    values = np.zeros((grid.n + 1, r_grid.size))
    tt, rr = np.meshgrid(nodes[1:], r_grid, indexing='ij')
    values[1:] = inverse_subordinator_density(params, tt, rr)
    series = fraccalc.TimeSeries(grid, values)
    if order > 0:
        result = fraccalc.rl_derivative(series, order)
    else:
        result = fraccalc.fractional_integral(series, -order)
    return result.values[n]


def fractional_kernel_weight(params, beta, t, r_grid, n=256, method='auto', tol=RICHARDSON_TOLERANCE):
    """phi_{alpha,beta}(t, r_j) = D_t^{beta-alpha} phi(t, r_j)

    :param method: 'grid' differentiates phi numerically in t (I_t^{alpha-beta}
                   for beta < alpha) and accepts the result when grids with n
                   and 2n steps agree to tol relative; 'exact' uses the
                   closed forms for beta in {alpha, 1} and the Wright series
                   otherwise; 'auto' takes the closed forms where they exist
                   and the grid elsewhere.
    :raises GridTooCoarse: when the two refinements disagree
    """

    alpha = params.alpha
    t = float(_positive(t, 't'))
    r_grid = _positive(r_grid, 'r').ravel()
    order = beta - alpha
    if not -1 < order < 1:
        raise InvalidParameterValue('beta - alpha must lie in (-1, 1), got {}'.format(order), 'beta')

    if beta == alpha:
        return np.asarray(inverse_subordinator_density(params, t, r_grid))
    if method in ('auto', 'exact') and beta == 1.0:
        return np.asarray(first_passage_weight(params, t, r_grid))
    if method == 'exact':
        return np.asarray(wright_weight(params, beta, t, r_grid))
    if method not in ('auto', 'grid'):
        raise InvalidParameterValue('Unknown weight method {}'.format(method), 'method')

    coarse = _grid_weight(params, beta, t, r_grid, n)
    fine = _grid_weight(params, beta, t, r_grid, 2 * n)
    diff = np.max(np.abs(fine - coarse))
    scale = np.max(np.abs(fine))
    LOGGER.debug('Fractional weight refinement difference {} (scale {})'.format(diff, scale))
    if diff > tol * scale:
        raise GridTooCoarse('Refinement changed phi_{{alpha,beta}} by {:.3g} relative'.format(diff / scale),
                            'fractional_kernel_weight')
    return fine


def sample_inverse_subordinator(params, t, u_stable):
    """R_t = (t / Q_1)^alpha from a sample of Q_1"""

    return _result((float(t) / _positive(u_stable, 'u_stable')) ** params.alpha)


def moment(params, t, k):
    """E[R_t^k] = Gamma(k + 1) t^{k alpha} / Gamma(k alpha + 1)"""

    alpha = params.alpha
    return math.gamma(k + 1.0) * float(t) ** (k * alpha) / math.gamma(k * alpha + 1.0)


def weight_bound(params, beta, t, r, c=None):
    """Upper bound shape of |phi_{alpha,beta}(t, r)| with unit constant

    t^-beta exp(-c y^{1/(1-alpha)}) for y = r t^-alpha > 1, and for y <= 1
    r t^{-alpha-beta} when beta is a positive integer, t^-beta otherwise.
    """

    alpha = params.alpha
    if c is None:
        c = tail_rate(alpha)
    t, r = np.broadcast_arrays(_positive(t, 't'), _positive(r, 'r'))
    y = r * t ** (-alpha)
    if float(beta).is_integer() and beta > 0:
        near = r * t ** (-alpha - beta)
    else:
        near = t ** (-beta)
    far = t ** (-beta) * np.exp(-c * y ** (1.0 / (1.0 - alpha)))
    return _result(np.where(y > 1, far, near))
