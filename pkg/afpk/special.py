##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Mittag-Leffler function on the negative real axis and the one-sided
stable density

E_{a,b}(z) = sum_{k>=0} z^k / Gamma(a k + b) is evaluated in three regimes:

* |z| <= series_threshold(a): Kahan-summed power series,
* |z| >= asymptotic_threshold(a): -sum_{k>=1} z^-k / Gamma(b - a k),
  truncated where the terms stop decreasing,
* in between: the Hankel contour integral collapsed onto the negative
  real axis, integrated with ``scipy.integrate.quad_vec``.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import integrate, special

from afpk.exceptions import InvalidParameterValue

LOGGER = logging.getLogger('AFPK')

SERIES_THRESHOLD = 5.0
ASYMPTOTIC_THRESHOLD = 12.0

_SERIES_SCALE = 60.0
_ASYMPTOTIC_TERMS = 80
_EPSABS = 1e-13
_EPSREL = 1e-11


class MLParams(namedtuple('MLParams', 'a b')):
    """Parameters (a, b) of E_{a,b}, a in (0, 1]
    """
    __slots__ = ()

    def __new__(cls, a, b):
        a = float(a)
        b = float(b)
        if not 0 < a <= 1:
            raise InvalidParameterValue('Mittag-Leffler order a must lie in (0, 1], got {}'.format(a), 'a')
        return super(MLParams, cls).__new__(cls, a, b)


def series_threshold(a):
    """Largest |z| summed by the power series

    The alternating series loses about exp(|z|^{1/a}) relative to unit
    round-off, so the threshold shrinks with a.
    """
    return min(SERIES_THRESHOLD, 10.0 ** a)


def asymptotic_threshold(a):
    """Smallest |z| handled by the asymptotic expansion"""
    return max(ASYMPTOTIC_THRESHOLD, 32.0 ** a)


def _as_result(value, shape):
    value = np.reshape(value, shape)
    if value.ndim == 0:
        return float(value)
    return value


def ml_series(a, b, z):
    """Kahan-summed power series, accurate for |z| <= series_threshold(a)"""

    z = np.asarray(z, dtype=float)
    terms = int(min(math.ceil(_SERIES_SCALE / a), 2000))
    total = np.zeros_like(z)
    comp = np.zeros_like(z)
    power = np.ones_like(z)
    for k in range(terms + 1):
        term = power * special.rgamma(a * k + b)
        y = term - comp
        tmp = total + y
        comp = (tmp - total) - y
        total = tmp
        power = power * z
    return total


def ml_asymptotic(a, b, z):
    """Asymptotic expansion for large negative z and a < 1

    Terms are kept while the majorant Gamma(max(a k + 1 - b, 1)) |z|^-k
    decreases.
    """

    z = np.asarray(z, dtype=float)
    logx = np.log(-z)
    total = np.zeros_like(z)
    active = np.ones(z.shape, dtype=bool)
    previous = np.full(z.shape, np.inf)
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        envelope = special.gammaln(max(a * k + 1.0 - b, 1.0)) - k * logx
        active &= envelope <= previous
        previous = envelope
        term = -((-1.0) ** k) * np.exp(-k * logx) * special.rgamma(b - a * k)
        total = total + np.where(active, term, 0.0)
    return total


def ml_integral(a, b, z):
    """Contour integral representation for 0 < a < 1

    For b < 1 + a and x = -z > 0::

        E_{a,b}(-x) = 1/(a pi) int_0^inf chi^{(1-b)/a} exp(-chi^{1/a})
                      (chi sin(pi(1-b)) + x sin(pi(1-b+a)))
                      / (chi^2 + 2 chi x cos(pi a) + x^2) dchi

    Larger b is reduced with E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z.
    """

    z = np.asarray(z, dtype=float)
    if not 0 < a < 1:
        raise InvalidParameterValue('Integral representation needs 0 < a < 1', 'a')
    if np.any(z >= 0):
        raise InvalidParameterValue('Integral representation needs z < 0', 'z')
    if b >= 1.0 + a:
        return (ml_integral(a, b - a, z) - special.rgamma(b - a)) / z

    x = -z.ravel()
    if x.size == 0:
        return z.copy()
    expo = (1.0 - b) / a
    s1 = math.sin(math.pi * (1.0 - b))
    s2 = math.sin(math.pi * (1.0 - b + a))
    cpa = math.cos(math.pi * a)

    def integrand(chi):
        if chi <= 0.0:
            return np.zeros_like(x)
        logchi = math.log(chi)
        if logchi / a > 7.0:
            # exp(-chi^{1/a}) below exp(-1000)
            return np.zeros_like(x)
        weight = math.exp(expo * logchi - math.exp(logchi / a))
        return weight * (chi * s1 + x * s2) / (chi * chi + 2.0 * chi * x * cpa + x * x)

    value, error = integrate.quad_vec(integrand, 0.0, np.inf, epsabs=_EPSABS, epsrel=_EPSREL,
                                      norm='max', limit=4000)
    LOGGER.debug('Mittag-Leffler contour quadrature for {} points, error estimate {}'.format(x.size, error))
    return np.reshape(value / (a * math.pi), z.shape)


def _ml_unit_order(b, z):
    """E_{1,b}(z) for |z| beyond the series threshold"""

    z = np.asarray(z, dtype=float)
    if b == 1.0:
        return np.exp(z)
    if b > 1.0 and float(b).is_integer():
        value = np.exp(z)
        for n in range(1, int(b)):
            value = (value - special.rgamma(n)) / z
        return value
    if b > 1.0:
        flat = z.ravel()

        def integrand(s):
            return np.exp(flat * s) * (1.0 - s) ** (b - 2.0)

        value, _ = integrate.quad_vec(integrand, 0.0, 1.0, epsabs=_EPSABS, epsrel=_EPSREL, norm='max')
        return np.reshape(value * special.rgamma(b - 1.0), z.shape)
    return special.rgamma(b) + z * _ml_unit_order(b + 1.0, z)


def mittag_leffler(params, z, method='auto'):
    """Two-parameter Mittag-Leffler function E_{a,b}(z) for z <= 0

    :param params: :class:`MLParams`
    :param z: scalar or array of nonpositive reals
    :param method: 'auto', or one of 'series', 'asymptotic', 'integral' to
                   force a single regime
    :raises InvalidParameterValue: for z > 0
    """

    if not isinstance(params, MLParams):
        params = MLParams(*params)
    a, b = params
    z = np.asarray(z, dtype=float)
    shape = z.shape
    if np.any(~(z <= 0)):
        raise InvalidParameterValue('Mittag-Leffler argument must be nonpositive', 'z')
    z = z.ravel()

    if method == 'series':
        return _as_result(ml_series(a, b, z), shape)
    if method == 'asymptotic':
        return _as_result(ml_asymptotic(a, b, z), shape)
    if method == 'integral':
        return _as_result(ml_integral(a, b, z), shape)
    if method != 'auto':
        raise InvalidParameterValue('Unknown evaluation method {}'.format(method), 'method')

    if a == 1.0 and b == 1.0:
        return _as_result(np.exp(z), shape)

    out = np.empty_like(z)
    x = -z
    small = x <= series_threshold(a)
    out[small] = ml_series(a, b, z[small])
    rest = ~small
    if not np.any(rest):
        return _as_result(out, shape)

    if a == 1.0:
        out[rest] = _ml_unit_order(b, z[rest])
        return _as_result(out, shape)

    large = x >= asymptotic_threshold(a)
    out[large] = ml_asymptotic(a, b, z[large])
    band = rest & ~large
    if np.any(band):
        uniq, inverse = np.unique(z[band], return_inverse=True)
        out[band] = ml_integral(a, b, uniq)[inverse]
    return _as_result(out, shape)


def _check_stable(alpha, s):
    if not 0 < alpha < 1:
        raise InvalidParameterValue('Stable index must lie in (0, 1), got {}'.format(alpha), 'alpha')
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0)):
        raise InvalidParameterValue('Stable density argument must be positive', 's')
    return s


def _zolotarev_exponent(alpha, s):
    """Integrand builder: u -> log A(u) + log s^{-alpha/(1-alpha)}

    A(u) = sin(alpha u)^{alpha/(1-alpha)} sin((1-alpha) u) / sin(u)^{1/(1-alpha)}
    """

    logw = -(alpha / (1.0 - alpha)) * np.log(s)

    def exponent(u):
        loga = ((alpha / (1.0 - alpha)) * math.log(math.sin(alpha * u)) +
                math.log(math.sin((1.0 - alpha) * u)) -
                math.log(math.sin(u)) / (1.0 - alpha))
        return loga + logw

    return exponent


def stable_density(alpha, s):
    """Density g_alpha(s) of the one-sided stable law with Laplace
    transform exp(-lambda^alpha), Zolotarev representation

        g(s) = alpha / ((1 - alpha) pi s) int_0^pi A w exp(-A w) du,
        w = s^{-alpha/(1-alpha)}

    evaluated in log space as exp(y - exp(y)), y = log(A w).
    """

    s = _check_stable(alpha, s)
    shape = s.shape
    flat = s.ravel()
    exponent = _zolotarev_exponent(alpha, flat)

    def integrand(u):
        y = exponent(u)
        with np.errstate(over='ignore'):
            return np.where(y > 700.0, 0.0, np.exp(y - np.exp(np.minimum(y, 700.0))))

    value, _ = integrate.quad_vec(integrand, 0.0, math.pi, epsabs=1e-14, epsrel=1e-10, norm='max', limit=4000)
    rho = alpha / (1.0 - alpha)
    return _as_result(rho * value / (math.pi * flat), shape)


def stable_cdf(alpha, s):
    """Distribution function P(Q_1 <= s) = 1/pi int_0^pi exp(-A w) du"""

    s = _check_stable(alpha, s)
    shape = s.shape
    flat = s.ravel()
    exponent = _zolotarev_exponent(alpha, flat)

    def integrand(u):
        y = exponent(u)
        with np.errstate(over='ignore'):
            return np.exp(-np.exp(np.minimum(y, 700.0)))

    value, _ = integrate.quad_vec(integrand, 0.0, math.pi, epsabs=1e-14, epsrel=1e-10, norm='max', limit=4000)
    return _as_result(value / math.pi, shape)
