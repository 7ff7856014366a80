##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Bernstein functions of the drift plus stable-mixture family

    phi(lambda) = drift * lambda + sum_j c_j * lambda ** beta_j

with c_j > 0 and beta_j in (0, 1]. Values are immutable; every function
accepts scalars or numpy arrays.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import integrate

from afpk.exceptions import InvalidParameterValue, NonConvergence

LOGGER = logging.getLogger('AFPK')

_NEWTON_MAXITER = 100
# tail integral cut where the majorant has decayed by exp(-80)
_TAIL_DECADES = 80.0


class ScalingCertificate(namedtuple('ScalingCertificate', 'c0 delta0')):
    """Weak lower scaling constants: c0 (R/r)^delta0 <= phi(R)/phi(r) <= R/r
    """

    def lower(self, ratio):
        """Lower bound of phi(R)/phi(r) for ratio = R/r >= 1"""
        return self.c0 * np.asarray(ratio, dtype=float) ** self.delta0

    def inverse_upper(self, ratio):
        """Upper bound of phi^-1(R)/phi^-1(r) for ratio = R/r >= 1"""
        return self.c0 ** (-1.0 / self.delta0) * np.asarray(ratio, dtype=float) ** (1.0 / self.delta0)

    @property
    def json(self):
        return {'c0': self.c0, 'delta0': self.delta0}


class BernsteinSpec(object):
    """Bernstein function phi(l) = drift*l + sum c_j l^beta_j

    :param float drift: nonnegative drift b
    :param terms: iterable of (coefficient, exponent) pairs
    """

    def __init__(self, drift=0.0, terms=()):
        self.drift = float(drift)
        self.terms = tuple((float(c), float(b)) for c, b in terms)
        self._validate()

    def _validate(self):
        if not np.isfinite(self.drift) or self.drift < 0:
            raise InvalidParameterValue('Drift must be nonnegative, got {}'.format(self.drift), 'drift')
        for coef, beta in self.terms:
            if not (np.isfinite(coef) and coef > 0):
                raise InvalidParameterValue('Coefficient must be positive, got {}'.format(coef), 'coef')
            if not 0 < beta <= 1:
                raise InvalidParameterValue('Exponent must lie in (0, 1], got {}'.format(beta), 'beta')
        if not self.terms and self.drift == 0:
            raise InvalidParameterValue('Bernstein function needs a term or a positive drift', 'terms')

    @classmethod
    def power(cls, beta, coef=1.0):
        """coef * lambda^beta"""
        return cls(terms=[(coef, beta)])

    @classmethod
    def brownian(cls, drift=1.0):
        """drift * lambda, the Laplacian itself"""
        return cls(drift=drift)

    @property
    def exponents(self):
        """Exponents present, the drift counting as exponent 1"""
        exps = [b for _, b in self.terms]
        if self.drift > 0:
            exps.append(1.0)
        return tuple(exps)

    @property
    def is_pure_power(self):
        """True when phi(l) = c l^beta for a single (c, beta)"""
        return len(self.monomials()) == 1

    def monomials(self):
        """(coefficient, exponent) pairs with the drift folded in"""
        monos = list(self.terms)
        if self.drift > 0:
            monos.append((self.drift, 1.0))
        merged = {}
        for c, b in monos:
            merged[b] = merged.get(b, 0.0) + c
        return tuple(sorted((c, b) for b, c in merged.items()))

    def __call__(self, lam):
        return evaluate(self, lam)

    def __eq__(self, other):
        return isinstance(other, BernsteinSpec) and self.json == other.json

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.drift, self.terms))

    def __repr__(self):
        return 'BernsteinSpec(drift={!r}, terms={!r})'.format(self.drift, list(self.terms))

    @property
    def json(self):
        return {
            'drift': self.drift,
            'terms': [{'coef': c, 'beta': b} for c, b in self.terms],
        }

    @classmethod
    def from_json(cls, json_input):
        return cls(drift=json_input.get('drift', 0.0),
                   terms=[(t['coef'], t['beta']) for t in json_input.get('terms', [])])


def _positive(lam, name='lambda'):
    lam = np.asarray(lam, dtype=float)
    if np.any(~(lam > 0)):
        raise InvalidParameterValue('{} must be positive'.format(name), name)
    return lam


def _result(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def evaluate(spec, lam):
    """phi(lambda) for lambda > 0

    :raises InvalidParameterValue: for lambda <= 0
    """

    lam = _positive(lam)
    value = spec.drift * lam
    for coef, beta in spec.terms:
        value = value + coef * lam ** beta
    return _result(value)


def derivative(spec, lam):
    """phi'(lambda) for lambda > 0"""

    lam = _positive(lam)
    value = np.full_like(lam, spec.drift)
    for coef, beta in spec.terms:
        value = value + coef * beta * lam ** (beta - 1.0)
    return _result(value)


def _log_slope(spec, lam):
    """d log phi / d log lambda, lies in [delta0, 1]"""
    return derivative(spec, lam) * lam / evaluate(spec, lam)


def inverse(spec, y):
    """phi^{-1}(y) for y > 0

    Pure powers invert in closed form. Otherwise Newton's method on
    u -> log phi(exp(u)) - log y, which is convex and increasing, started
    from the right of the root (the smallest single-term solution), so the
    iterates decrease monotonically to the root.
    """

    y = _positive(y, 'y')
    monos = spec.monomials()
    if len(monos) == 1:
        coef, beta = monos[0]
        return _result((y / coef) ** (1.0 / beta))

    start = np.min([(y / coef) ** (1.0 / beta) for coef, beta in monos], axis=0)
    u = np.log(start)
    logy = np.log(y)
    tol = 1e-14 * np.maximum(1.0, np.abs(logy))
    for iteration in range(_NEWTON_MAXITER):
        lam = np.exp(u)
        resid = np.log(evaluate(spec, lam)) - logy
        if np.all(np.abs(resid) <= tol):
            break
        step = resid / _log_slope(spec, lam)
        u = u - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(u))):
            break
    else:
        raise NonConvergence('Bernstein inverse did not converge after {} iterations'.format(_NEWTON_MAXITER),
                             'inverse')
    LOGGER.debug('Bernstein inverse converged after {} iterations'.format(iteration))
    return _result(np.exp(u))


def wls_certificate(spec):
    """Weak lower scaling certificate (c0=1, delta0=min exponent)"""

    return ScalingCertificate(1.0, min(spec.exponents))


def tail_integral(spec, lam, nu):
    """Quadrature of int_{1/lam}^inf r^-1 phi(r^-2)^nu dr and its bound

    :returns: (value, bound) with bound = c0^-nu / (2 delta0 nu) phi(lam^2)^nu
    """

    if lam <= 0 or nu <= 0:
        raise InvalidParameterValue('lambda and nu must be positive', 'tail_integral')
    cert = wls_certificate(spec)
    rate = 2.0 * cert.delta0 * nu
    # substitute r = exp(s) / lam; past s_unit the argument is below 1 and
    # the integrand is at most phi(1)^nu (lam^2 exp(-2s))^(delta0 nu)
    scale = float(lam)
    s_unit = max(0.0, math.log(scale))
    s_max = s_unit + _TAIL_DECADES / rate

    def integrand(s):
        y = (scale * math.exp(-s)) ** 2
        if y <= 0.0:
            return 0.0
        return evaluate(spec, y) ** nu

    value = 0.0
    for lower, upper in ((0.0, s_unit), (s_unit, s_max)):
        if upper > lower:
            piece, _ = integrate.quad(integrand, lower, upper, epsabs=0.0, epsrel=1e-10, limit=200)
            value += piece
    remainder = (evaluate(spec, 1.0) ** nu * min(scale, 1.0) ** (2.0 * cert.delta0 * nu) *
                 math.exp(-rate * (s_max - s_unit)) / rate)
    LOGGER.debug('Tail integral {} truncated at s = {}, remainder below {}'.format(value, s_max, remainder))
    bound = cert.c0 ** (-nu) / (2.0 * cert.delta0 * nu) * evaluate(spec, scale ** 2) ** nu
    return value, bound
