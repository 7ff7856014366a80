##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Fields on periodic boxes and anisotropic Fourier multipliers

A :class:`ScalarField` samples a function on the box prod_a [-L_a, L_a)
with N_a = 2^k points per axis, x_k = (k - N/2) dx. All spatial operators
are multipliers in m_phi(xi) = sum_i phi_i(|xi_i|^2) applied with
``scipy.fft``; the modified Littlewood-Paley pieces localize along the
level sets of m_phi.
"""

import logging
import math

import numpy as np
from scipy import fft

from afpk import configuration
from afpk.exceptions import InvalidParameterValue

LOGGER = logging.getLogger('AFPK')


def _workers():
    return configuration.get_thread_count()


def _is_power_of_two(n):
    return n >= 2 and n & (n - 1) == 0


class ScalarField(object):
    """Samples of a function on a centered periodic box

    :param spec: :class:`afpk.operator.OperatorSpec` the field belongs to
    :param sizes: points per axis, powers of two
    :param spacings: grid spacing per axis
    :param values: array of shape sizes (real or complex)
    """

    def __init__(self, spec, sizes, spacings, values):
        self.spec = spec
        self.sizes = tuple(int(n) for n in sizes)
        self.spacings = tuple(float(h) for h in spacings)
        if len(self.sizes) != len(self.spacings):
            raise InvalidParameterValue('Sizes and spacings differ in length', 'sizes')
        if spec is not None and len(self.sizes) != spec.total_dim:
            raise InvalidParameterValue('Field has {} axes, operator has {}'.format(
                len(self.sizes), spec.total_dim), 'sizes')
        for n in self.sizes:
            if not _is_power_of_two(n):
                raise InvalidParameterValue('Grid size {} is not a power of two'.format(n), 'grid.size')
        for h in self.spacings:
            if not h > 0:
                raise InvalidParameterValue('Grid spacing must be positive, got {}'.format(h), 'spacing')
        self.values = np.asarray(values)
        if self.values.shape != self.sizes:
            raise InvalidParameterValue('Values have shape {}, grid is {}'.format(
                self.values.shape, self.sizes), 'values')

    @classmethod
    def centered(cls, spec, sizes, half_widths, values=None):
        """Grid covering [-L_a, L_a) per axis"""
        spacings = [2.0 * float(hw) / n for n, hw in zip(sizes, half_widths)]
        if values is None:
            values = np.zeros(tuple(sizes))
        return cls(spec, sizes, spacings, values)

    @classmethod
    def from_function(cls, spec, sizes, half_widths, func):
        """Sample func(x_1, ..., x_d) on the mesh"""
        field = cls.centered(spec, sizes, half_widths)
        return field.with_values(func(*field.mesh()))

    def with_values(self, values):
        return ScalarField(self.spec, self.sizes, self.spacings, values)

    @property
    def ndim(self):
        return len(self.sizes)

    @property
    def half_widths(self):
        return tuple(n * h / 2.0 for n, h in zip(self.sizes, self.spacings))

    @property
    def cell_volume(self):
        return float(np.prod(self.spacings))

    def coordinates(self, axis):
        n = self.sizes[axis]
        return (np.arange(n) - n // 2) * self.spacings[axis]

    def mesh(self, sparse=True):
        return np.meshgrid(*[self.coordinates(a) for a in range(self.ndim)], indexing='ij', sparse=sparse)

    def frequencies(self, axis):
        """Angular frequencies in FFT order"""
        return 2.0 * math.pi * fft.fftfreq(self.sizes[axis], self.spacings[axis])

    def frequency_mesh(self):
        return np.meshgrid(*[self.frequencies(a) for a in range(self.ndim)], indexing='ij', sparse=True)

    def is_compatible(self, other):
        return self.sizes == other.sizes and np.allclose(self.spacings, other.spacings, rtol=1e-14, atol=0)

    def to_spectral(self):
        """FFT with x = 0 moved to index 0"""
        return fft.fftn(fft.ifftshift(self.values), workers=_workers())

    def from_spectral(self, values_hat, real=None):
        """New field from FFT-ordered coefficients"""
        values = fft.fftshift(fft.ifftn(values_hat, workers=_workers()))
        if real is None:
            real = not np.iscomplexobj(self.values)
        if real:
            values = values.real
        return self.with_values(values)

    def integral(self):
        return self.values.sum() * self.cell_volume

    def boundary_max(self):
        """Largest magnitude on the faces of the box"""
        values = np.abs(self.values)
        edge = 0.0
        for axis in range(self.ndim):
            edge = max(edge, np.max(np.take(values, 0, axis=axis)), np.max(np.take(values, -1, axis=axis)))
        return float(edge)

    def __repr__(self):
        return 'ScalarField(sizes={}, spacings={})'.format(self.sizes, self.spacings)


class SymbolField(object):
    """m_phi(xi) = sum_i phi_i(|xi_i|^2) sampled on the frequency grid of a field

    ``blocks`` holds the per-block terms phi_i(|xi_i|^2).
    """

    def __init__(self, spec, field):
        self.spec = spec
        freq = field.frequency_mesh()
        self.blocks = []
        for index in range(spec.ell):
            xi_sq = sum(freq[a] ** 2 for a in spec.axes(index))
            self.blocks.append(spec.component_symbol(index, xi_sq))
        self.values = np.broadcast_to(sum(self.blocks), field.sizes)

    def __array__(self, dtype=None):
        return np.asarray(self.values, dtype=dtype)


def symbol_field(spec, field):
    """:class:`SymbolField` of spec on the frequency grid of field"""
    return SymbolField(spec or field.spec, field)


def apply_multiplier(field, multiplier):
    """F^-1[multiplier F u] for a multiplier sampled in FFT order"""
    return field.from_spectral(np.asarray(multiplier) * field.to_spectral())


def apply_bessel_multiplier(field, gamma, spec=None):
    """(1 - phi.Delta)^{gamma/2} u"""
    if gamma == 0:
        return field.with_values(np.array(field.values, copy=True))
    m = symbol_field(spec, field).values
    return apply_multiplier(field, (1.0 + m) ** (gamma / 2.0))


def apply_generator(spec, field):
    """phi.Delta u, the multiplier -m_phi"""
    return apply_multiplier(field, -symbol_field(spec, field).values)


def apply_component_generator(spec, field, index):
    """phi_i(Delta_{x_i}) u for a single block"""
    return apply_multiplier(field, -np.broadcast_to(symbol_field(spec, field).blocks[index], field.sizes))


def derivative_multiplier(field, orders):
    """prod_a (i xi_a)^{m_a}; odd orders vanish on the Nyquist mode"""
    freq = field.frequency_mesh()
    mult = np.ones((1,) * field.ndim, dtype=complex)
    for axis, order in enumerate(orders):
        if not order:
            continue
        xi = np.array(freq[axis], dtype=float)
        if order % 2:
            xi[np.isclose(np.abs(xi), math.pi / field.spacings[axis])] = 0.0
        mult = mult * (1j * xi) ** order
    return mult


def apply_derivative(field, orders):
    """D^m u spectrally, orders per axis"""
    return apply_multiplier(field, derivative_multiplier(field, orders))


class LPWindow(object):
    """Dyadic window built from a smooth cutoff

    chi = 1 on [-1, 1], 0 outside [-2, 2], C-infinity in between; the
    profile chi(l) - chi(2 l) lives on 1/2 <= |l| <= 2 and
    sum_j profile(2^-j l) = 1 for l != 0.
    """

    @staticmethod
    def _psi(s):
        s = np.asarray(s, dtype=float)
        positive = s > 0
        return np.where(positive, np.exp(-1.0 / np.where(positive, s, 1.0)), 0.0)

    def cutoff(self, lam):
        lam = np.abs(np.asarray(lam, dtype=float))
        s = np.clip(lam - 1.0, 0.0, 1.0)
        left = self._psi(1.0 - s)
        right = self._psi(s)
        return left / (left + right)

    def profile(self, lam):
        lam = np.asarray(lam, dtype=float)
        return self.cutoff(lam) - self.cutoff(2.0 * lam)

    def dyadic(self, j, lam):
        """profile(2^-j lam)"""
        return self.profile(np.ldexp(np.asarray(lam, dtype=float), -int(j)))

    def low(self, lam):
        """sum_{j <= 0} profile(2^-j lam) = chi(lam)"""
        return self.cutoff(lam)


WINDOW = LPWindow()


def lp_levels(spec, field):
    """Highest level J such that m_phi <= 2^{J-1} on the grid"""
    m_max = float(np.max(symbol_field(spec, field).values))
    if m_max <= 1.0:
        return 1
    return int(math.ceil(math.log2(m_max))) + 1


def lp_project(spec, field, j):
    """Delta_j^phi f for integer j >= 1, S_0^phi f for j == 'S0'"""
    m = symbol_field(spec, field).values
    if j == 'S0':
        return apply_multiplier(field, WINDOW.low(m))
    return apply_multiplier(field, WINDOW.dyadic(j, m))


def lp_decompose(spec, field, levels=None):
    """[S_0 f, Delta_1 f, ..., Delta_J f]; the pieces sum to f on the grid"""
    if levels is None:
        levels = lp_levels(spec, field)
    m = symbol_field(spec, field).values
    u_hat = field.to_spectral()
    pieces = [field.from_spectral(WINDOW.low(m) * u_hat)]
    for j in range(1, levels + 1):
        pieces.append(field.from_spectral(WINDOW.dyadic(j, m) * u_hat))
    return pieces


def lp_norm(field, p=2):
    """Grid L_p norm (sum |u|^p dV)^{1/p}, p = inf for the maximum"""
    values = np.abs(field.values)
    if p == np.inf:
        return float(values.max())
    if not p >= 1:
        raise InvalidParameterValue('Lebesgue exponent must be >= 1, got {}'.format(p), 'p')
    return float((np.sum(values ** p) * field.cell_volume) ** (1.0 / p))


def sobolev_norm(field, gamma, p=2, spec=None):
    """||(1 - phi.Delta)^{gamma/2} u||_{L_p}; p = 2 is evaluated on the
    frequency side by Plancherel
    """
    if p == 2:
        m = symbol_field(spec, field).values
        u_hat = field.to_spectral()
        total = np.sum((1.0 + m) ** gamma * np.abs(u_hat) ** 2)
        return float(math.sqrt(total * field.cell_volume / np.prod(field.sizes)))
    return lp_norm(apply_bessel_multiplier(field, gamma, spec), p)


def _besov_weights(gamma, q, levels, weight):
    j = np.arange(1, levels + 1)
    if weight == 'dyadic':
        return 2.0 ** (j * gamma * q / 2.0)
    if weight == 'literal':
        return np.full(levels, 2.0 ** (gamma * q))
    raise InvalidParameterValue('Unknown Besov weight {}'.format(weight), 'weight')


def besov_norm(field, gamma, p=2, q=2, weight='dyadic', spec=None, levels=None):
    """||S_0 f||_p + (sum_{j>=1} w_j ||Delta_j f||_p^q)^{1/q}

    :param weight: 'dyadic' for w_j = 2^{j gamma q / 2}, 'literal' for
                   w_j = 2^{gamma q}
    """
    if not (p >= 1 and q >= 1):
        raise InvalidParameterValue('Besov exponents must be >= 1', 'p')
    pieces = lp_decompose(spec or field.spec, field, levels)
    low = lp_norm(pieces[0], p)
    norms = np.array([lp_norm(piece, p) for piece in pieces[1:]])
    weights = _besov_weights(gamma, q, len(norms), weight)
    return float(low + np.sum(weights * norms ** q) ** (1.0 / q))


def square_function_norm(field, gamma, p=2, spec=None, levels=None):
    """||S_0 f||_p + ||(sum_j 2^{j gamma} |Delta_j f|^2)^{1/2}||_p"""
    pieces = lp_decompose(spec or field.spec, field, levels)
    square = np.zeros(field.sizes)
    for j, piece in enumerate(pieces[1:], 1):
        square = square + 2.0 ** (j * gamma) * np.abs(piece.values) ** 2
    return lp_norm(pieces[0], p) + lp_norm(field.with_values(np.sqrt(square)), p)
