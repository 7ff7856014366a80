##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Transition densities of the independent array of subordinate Brownian
motions and the subordinated kernels

    q_{alpha,beta}(t, x) = int_0^inf p(r, x) phi_{alpha,beta}(t, r) dr,
    F[q_{alpha,beta}(t, .)](xi) = t^{alpha-beta} E_{alpha,1-beta+alpha}(-t^alpha m_phi(xi))

computed by quadrature in r (:func:`subordinated_kernel_quadrature`) and
by FFT of the Mittag-Leffler symbol (:func:`subordinated_kernel_spectral`),
together with the upper bound envelopes and mass laws they satisfy.

Derivative orders m_i act on the first axis of block i.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import integrate, special
from scipy.interpolate import RegularGridInterpolator

from afpk import bernstein, spectral
from afpk.exceptions import InvalidParameterValue, NonConvergence, UnsupportedDimension
from afpk.special import MLParams, mittag_leffler
from afpk.subordination import SubordinationParams, fractional_kernel_weight, tail_cutoff

LOGGER = logging.getLogger('AFPK')

DEFAULT_SIZES = {1: 1024, 2: 256, 3: 64}
DEFAULT_SCALE_FACTOR = 8.0

_QUAD_PANELS = 60
_QUAD_NODES = 16
_ENVELOPE_NODES = 32
_FOURIER_CUTOFF = 41.5


class KernelQuery(object):
    """Point request for D^m q_{alpha,beta}(t, x)

    :param alpha: order in (0, 1]
    :param beta: real
    :param t: positive time
    :param x: point in R^d
    :param orders: derivative order (0, 1 or 2) per block
    """

    def __init__(self, alpha, beta, t, x, orders=None):
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.t = float(t)
        self.x = np.atleast_1d(np.asarray(x, dtype=float))
        if not 0 < self.alpha <= 1:
            raise InvalidParameterValue('alpha must lie in (0, 1], got {}'.format(alpha), 'alpha')
        if not self.t > 0:
            raise InvalidParameterValue('t must be positive, got {}'.format(t), 't')
        self.orders = None if orders is None else tuple(int(m) for m in orders)
        if self.orders is not None and any(not 0 <= m <= 2 for m in self.orders):
            raise InvalidParameterValue('Derivative orders must be 0, 1 or 2', 'orders')

    def block_orders(self, spec):
        if self.orders is None:
            return (0,) * spec.ell
        if len(self.orders) != spec.ell:
            raise InvalidParameterValue('Need one derivative order per block', 'orders')
        return self.orders

    def __repr__(self):
        return 'KernelQuery(alpha={}, beta={}, t={}, x={}, orders={})'.format(
            self.alpha, self.beta, self.t, self.x.tolist(), self.orders)


class RegimeSplit(namedtuple('RegimeSplit', 'near_diagonal off_diagonal values')):
    """Near diagonal blocks i_1..i_l2 ordered by decreasing t^alpha phi_i(|x_i|^-2),
    off diagonal blocks j_1..j_l1 in index order, and the values themselves
    """
    __slots__ = ()

    @property
    def ell1(self):
        return len(self.off_diagonal)

    @property
    def ell2(self):
        return len(self.near_diagonal)


class BoundEnvelope(namedtuple('BoundEnvelope', 'value off_diagonal_factor lambda1 lambda2 lambda3 split')):
    """Right-hand side of the kernel upper bound with unit constant
    """
    __slots__ = ()

    @property
    def parts(self):
        return (self.off_diagonal_factor, self.lambda1, self.lambda2, self.lambda3)


# component densities

def _closed_form_kind(phi):
    monos = phi.monomials()
    if len(monos) != 1:
        return None, None
    coef, beta = monos[0]
    if beta == 1.0:
        return 'gauss', coef
    if beta == 0.5:
        return 'cauchy', coef
    return None, None


def _closed_form(kind, coef, dim, t, x, order):
    """Gaussian (4 pi s)^{-d/2} exp(-|x|^2 / 4s) and Poisson kernels with s = coef t"""

    s = coef * t
    rho_sq = np.sum(x * x, axis=-1)
    x1 = x[..., 0]
    if kind == 'gauss':
        p = (4.0 * math.pi * s) ** (-dim / 2.0) * np.exp(-rho_sq / (4.0 * s))
        if order == 0:
            return p
        if order == 1:
            return -p * x1 / (2.0 * s)
        return p * (x1 * x1 / (4.0 * s * s) - 1.0 / (2.0 * s))
    kappa = (dim + 1.0) / 2.0
    const = math.gamma(kappa) / math.pi ** kappa
    base = s * s + rho_sq
    if order == 0:
        return const * s * base ** (-kappa)
    if order == 1:
        return -2.0 * kappa * const * s * x1 * base ** (-kappa - 1.0)
    return const * s * (-2.0 * kappa * base ** (-kappa - 1.0) +
                        4.0 * kappa * (kappa + 1.0) * x1 * x1 * base ** (-kappa - 2.0))


def _fourier_integral(func, weight, wvar, epsabs):
    """int_0^inf func(k) w(wvar k) dk for w in {1, cos, sin}"""
    if weight is None or wvar == 0:
        if weight == 'sin':
            return 0.0
        return integrate.quad(func, 0.0, np.inf, epsabs=epsabs, epsrel=1e-10, limit=500)[0]
    return integrate.quad(func, 0.0, np.inf, weight=weight, wvar=wvar, epsabs=epsabs, limlst=100)[0]


def _fourier_point(phi, dim, t, x, order):
    """D^m p(t, x) along the first axis by radial Fourier inversion"""

    def decay(k):
        return math.exp(-t * bernstein.evaluate(phi, k * k)) if k > 0 else 1.0

    scale = bernstein.inverse(phi, 1.0 / t) ** ((dim + order) / 2.0)
    eps = 1e-12 * scale
    rho = float(np.sqrt(np.dot(x, x)))

    if dim == 1:
        xv = float(x[0])
        sign = 1.0 if xv >= 0 else -1.0
        if order == 0:
            return _fourier_integral(decay, 'cos', abs(xv), eps) / math.pi
        if order == 1:
            return -sign * _fourier_integral(lambda k: k * decay(k), 'sin', abs(xv), eps) / math.pi
        return -_fourier_integral(lambda k: k * k * decay(k), 'cos', abs(xv), eps) / math.pi

    if rho == 0.0:
        norm = 2.0 * math.pi if dim == 2 else 2.0 * math.pi ** 2
        if order == 0:
            return _fourier_integral(lambda k: k ** (dim - 1) * decay(k), None, 0.0, eps) / norm
        if order == 1:
            return 0.0
        return -_fourier_integral(lambda k: k ** (dim + 1) * decay(k), None, 0.0, eps) / (dim * norm)

    if dim == 2:
        kmax = math.sqrt(bernstein.inverse(phi, _FOURIER_CUTOFF / t))

        def bessel(func):
            return integrate.quad(func, 0.0, kmax, epsabs=eps, epsrel=1e-10, limit=2000)[0] / (2.0 * math.pi)

        profile = [bessel(lambda k: k * special.j0(k * rho) * decay(k))]
        if order >= 1:
            profile.append(-bessel(lambda k: k * k * special.j1(k * rho) * decay(k)))
        if order == 2:
            profile.append(-bessel(lambda k: k ** 3 * (special.j0(k * rho) - special.j1(k * rho) / (k * rho)) *
                                   decay(k)))
    else:
        norm = 2.0 * math.pi ** 2
        s0 = _fourier_integral(lambda k: k * decay(k), 'sin', rho, eps)
        profile = [s0 / (norm * rho)]
        if order >= 1:
            s1 = _fourier_integral(lambda k: k * k * decay(k), 'cos', rho, eps)
            profile.append((s1 / rho - s0 / rho ** 2) / norm)
        if order == 2:
            s2 = -_fourier_integral(lambda k: k ** 3 * decay(k), 'sin', rho, eps)
            profile.append((s2 / rho - 2.0 * s1 / rho ** 2 + 2.0 * s0 / rho ** 3) / norm)

    if order == 0:
        return profile[0]
    cosine = float(x[0]) / rho
    if order == 1:
        return profile[1] * cosine
    return profile[2] * cosine ** 2 + profile[1] * (1.0 - cosine ** 2) / rho


def component_density(phi, dim, t, x, order=0, method='auto'):
    """D^m p_i(t, x_i) of the subordinate Brownian motion with exponent phi

    :param phi: :class:`afpk.bernstein.BernsteinSpec`
    :param dim: block dimension 1..3
    :param t: time(s), broadcast against x[..., 0]
    :param x: point(s) of shape (..., dim)
    :param order: derivative order 0..2 along the first axis
    :param method: 'closed' (Gaussian and Poisson kernels only), 'fourier'
                   or 'auto'
    """

    if not 1 <= dim <= 3:
        raise UnsupportedDimension('Component dimension {} is not supported'.format(dim), 'dim')
    if order not in (0, 1, 2):
        raise InvalidParameterValue('Derivative order must be 0, 1 or 2', 'order')
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != dim:
        x = np.reshape(x, x.shape + (1,)) if dim == 1 else x
    if x.shape[-1] != dim:
        raise InvalidParameterValue('Point has {} coordinates, block has {}'.format(x.shape[-1], dim), 'x')
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise InvalidParameterValue('t must be positive', 't')
    shape = np.broadcast_shapes(t.shape, x.shape[:-1])
    t = np.broadcast_to(t, shape)
    x = np.broadcast_to(x, shape + (dim,))

    kind, coef = _closed_form_kind(phi)
    if method == 'closed' and kind is None:
        raise InvalidParameterValue('No closed form for {}'.format(phi), 'method')
    if method not in ('auto', 'closed', 'fourier'):
        raise InvalidParameterValue('Unknown method {}'.format(method), 'method')
    if kind is not None and method != 'fourier':
        value = _closed_form(kind, coef, dim, t, x, order)
    else:
        flat_t = t.reshape(-1)
        flat_x = x.reshape(-1, dim)
        value = np.array([_fourier_point(phi, dim, tt, xx, order) for tt, xx in zip(flat_t, flat_x)])
        value = value.reshape(shape)
    if np.ndim(value) == 0:
        return float(value)
    return value


def component_envelope(phi, dim, t, x, order=0):
    """Heat kernel bound (phi^-1(1/t))^{(d+m)/2} if t phi(|x|^-2) >= 1,
    t^{1/2} phi(|x|^-2)^{1/2} / |x|^{d+m} otherwise
    """

    x = np.atleast_1d(np.asarray(x, dtype=float))
    rho = float(np.sqrt(np.dot(x, x)))
    if rho == 0.0:
        return bernstein.inverse(phi, 1.0 / t) ** ((dim + order) / 2.0)
    level = bernstein.evaluate(phi, rho ** -2)
    if t * level >= 1.0:
        return bernstein.inverse(phi, 1.0 / t) ** ((dim + order) / 2.0)
    return math.sqrt(t * level) / rho ** (dim + order)


def product_density(spec, t, x, orders=None, method='auto'):
    """p(t, x) = prod_i D^{m_i} p_i(t, x_i)"""

    orders = orders or (0,) * spec.ell
    value = 1.0
    for index, (block, xi) in enumerate(zip(spec.blocks, spec.split(x))):
        value = value * component_density(block.phi, block.dim, t, xi, orders[index], method)
    return value


# spectral route

def natural_scale(phi, alpha, t):
    """(phi^-1(t^-alpha))^{-1/2}, the spatial scale of block phi at time t"""
    return bernstein.inverse(phi, float(t) ** (-alpha)) ** -0.5


def natural_grid(spec, alpha, t, sizes=None, scale_factor=DEFAULT_SCALE_FACTOR, half_widths=None):
    """Empty field with half width scale_factor times the natural scale per block

    :param sizes: points per axis (int or per axis list), default 1024 in
                  one dimension and 256 per axis otherwise
    :param half_widths: explicit half widths, overriding the scale rule
    """

    d = spec.total_dim
    if sizes is None or sizes == 0:
        sizes = DEFAULT_SIZES.get(d, 64)
    if np.isscalar(sizes):
        sizes = [int(sizes)] * d
    if half_widths is None:
        half_widths = []
        for block in spec.blocks:
            half_widths.extend([scale_factor * natural_scale(block.phi, alpha, t)] * block.dim)
    elif np.isscalar(half_widths):
        half_widths = [float(half_widths)] * d
    return spectral.ScalarField.centered(spec, sizes, half_widths)


def kernel_symbol(spec, alpha, beta, t, grid):
    """t^{alpha-beta} E_{alpha,1-beta+alpha}(-t^alpha m_phi(xi)) in FFT order"""

    m = spectral.symbol_field(spec, grid).values
    params = MLParams(alpha, 1.0 - beta + alpha)
    uniq, inverse = np.unique(m, return_inverse=True)
    values = mittag_leffler(params, -(float(t) ** alpha) * uniq)
    return float(t) ** (alpha - beta) * np.asarray(values)[inverse].reshape(m.shape)


def _orders_multiplier(spec, grid, orders):
    if not orders or not any(orders):
        return 1.0
    axis_orders = [0] * spec.total_dim
    for index, order in enumerate(orders):
        axis_orders[spec.offsets[index]] = order
    return spectral.derivative_multiplier(grid, axis_orders)


def subordinated_kernel_spectral(spec, alpha, beta, t, grid, orders=None, aliasing_tol=1e-8):
    """Whole field of D^m q_{alpha,beta}(t, .) by inverse FFT of the symbol

    :param grid: :class:`afpk.spectral.ScalarField` fixing the box
    """

    symbol = kernel_symbol(spec, alpha, beta, t, grid) * _orders_multiplier(spec, grid, orders)
    values = grid.from_spectral(symbol, real=True).values / grid.cell_volume
    field = spectral.ScalarField(spec, grid.sizes, grid.spacings, values)
    peak = np.max(np.abs(values))
    edge = field.boundary_max()
    if peak > 0 and edge > aliasing_tol * peak:
        LOGGER.warning('Kernel field not decayed at the box boundary: {:.3g} of the maximum'.format(edge / peak))
    return field


# quadrature route

def _panel_rule(r_max, panels=_QUAD_PANELS, nodes=_QUAD_NODES):
    """Composite Gauss-Legendre nodes and weights on dyadic panels of (0, r_max]"""

    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes)
    upper = r_max * 2.0 ** -np.arange(panels)
    lower = upper / 2.0
    half = (upper - lower)[:, None] / 2.0
    r = (lower[:, None] + half * (gl_x[None, :] + 1.0)).ravel()
    w = (half * gl_w[None, :]).ravel()
    return r, w


def kernel_weights(alpha, beta, t, tol=1e-10, **kwargs):
    """Quadrature nodes r_k and weights w_k phi_{alpha,beta}(t, r_k)

    :raises NonConvergence: when the weight at the truncation point is not
                            negligible
    """

    params = SubordinationParams(alpha)
    r_max = tail_cutoff(params, t)
    r, w = _panel_rule(r_max)
    weight = fractional_kernel_weight(params, beta, t, r, **kwargs)
    peak = np.max(np.abs(weight))
    edge = abs(weight[_QUAD_NODES - 1])
    if edge > tol * peak:
        raise NonConvergence('Subordination weight at r = {:.3g} is {:.3g} of its maximum'.format(r_max, edge / peak),
                             'subordinated_kernel_quadrature')
    return r, w * weight


def kernel_quadrature_points(spec, alpha, beta, t, points, orders=None, method='auto', **kwargs):
    """D^m q_{alpha,beta}(t, x) at points of shape (n, d) by quadrature in r"""

    points = np.atleast_2d(np.asarray(points, dtype=float))
    orders = orders or (0,) * spec.ell
    if alpha == 1.0:
        if beta != 1.0:
            raise InvalidParameterValue('alpha = 1 needs beta = 1 on the quadrature route', 'beta')
        return np.asarray(product_density(spec, t, points, orders, method))
    r, w = kernel_weights(alpha, beta, t, **kwargs)
    density = np.ones((r.size, points.shape[0]))
    for index, (block, xi) in enumerate(zip(spec.blocks, spec.split(points))):
        density = density * component_density(block.phi, block.dim, r[:, None], xi[None, :, :],
                                              orders[index], method)
    return w.dot(density)


def subordinated_kernel_quadrature(spec, query, method='auto', **kwargs):
    """D^m q_{alpha,beta}(t, x) for one :class:`KernelQuery`"""

    value = kernel_quadrature_points(spec, query.alpha, query.beta, query.t, query.x[None, :],
                                     query.block_orders(spec), method, **kwargs)
    return float(value[0])


# regimes and envelopes

def regime_values(spec, alpha, t, x):
    """t^alpha phi_i(|x_i|^-2) per block, infinite where x_i = 0"""

    norms = spec.block_norms(np.asarray(x, dtype=float))
    values = []
    for block, rho in zip(spec.blocks, norms):
        values.append(np.inf if rho == 0 else float(t) ** alpha * bernstein.evaluate(block.phi, rho ** -2))
    return values


def classify_regime(spec, alpha, t, x):
    """Split blocks into near diagonal (value >= 1, descending) and off diagonal"""

    values = regime_values(spec, alpha, t, x)
    near = sorted((i for i, v in enumerate(values) if v >= 1.0), key=lambda i: (-values[i], i))
    off = [i for i, v in enumerate(values) if v < 1.0]
    return RegimeSplit(tuple(near), tuple(off), tuple(values))


def _log_quadrature(func, lower, upper, nodes=_ENVELOPE_NODES):
    """int_lower^upper func(r) dr with Gauss-Legendre in log r"""

    if upper <= lower:
        return 0.0
    a, b = math.log(lower), math.log(upper)
    panels = max(1, int(math.ceil(b - a)))
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges)[:, None] / 2.0
    s = (edges[:-1, None] + half * (gl_x[None, :] + 1.0)).ravel()
    w = (half * gl_w[None, :]).ravel()
    r = np.exp(s)
    return float(np.sum(w * r * func(r)))


def _inverse_power(block, order, power):
    """r -> (phi^-1(r^-power))^{(d+m)/2}"""
    expo = (block.dim + order) / 2.0
    return lambda r: np.asarray(bernstein.inverse(block.phi, r ** -power)) ** expo


def _near_factor(block, order, level, ell2, t, alpha):
    """int_{phi(|x|^-2)^{-1/l2}}^{2^{1/l2} t^{alpha/l2}} (phi^-1(r^-l2))^{(d+m)/2} dr"""
    lower = level ** (-1.0 / ell2)
    upper = 2.0 ** (1.0 / ell2) * t ** (alpha / ell2)
    return _log_quadrature(_inverse_power(block, order, ell2), lower, upper)


def bound_envelope(spec, query):
    """Kernel upper bound with unit constant

    t^{l1 alpha/2 - beta} prod_{off} phi_j(|x_j|^-2)^{1/2} / |x_j|^{d_j+m_j}
    times Lambda = Lambda^1 + Lambda^2 + sum_k lambda^k. With a single near
    diagonal block Lambda^1 and Lambda^2 coincide and only Lambda^2 is
    counted; without near diagonal blocks Lambda = 1.

    :raises InvalidParameterValue: when a block of x vanishes
    """

    alpha, beta, t = query.alpha, query.beta, query.t
    orders = query.block_orders(spec)
    norms = spec.block_norms(query.x)
    if np.any(norms == 0):
        raise InvalidParameterValue('Envelope needs x_i != 0 in every block', 'x')
    split = classify_regime(spec, alpha, t, query.x)
    levels = [bernstein.evaluate(b.phi, rho ** -2) for b, rho in zip(spec.blocks, norms)]

    off = 1.0
    for j in split.off_diagonal:
        off *= math.sqrt(levels[j]) / norms[j] ** (spec.blocks[j].dim + orders[j])

    near = split.near_diagonal
    ell2 = len(near)
    lam1 = lam2 = lam3 = 0.0
    if ell2 == 0:
        total = 1.0
    else:
        factors = [_near_factor(spec.blocks[i], orders[i], levels[i], ell2, t, alpha) for i in near]
        if ell2 > 1:
            lam1 = float(np.prod(factors))

        last = near[-1]

        def joint(r):
            value = np.ones_like(r)
            for i in near:
                value = value * _inverse_power(spec.blocks[i], orders[i], 1.0)(r)
            return value

        lam2 = _log_quadrature(joint, 1.0 / levels[last], 2.0 * t ** alpha)

        for k in range(2, ell2 + 1):
            head = near[:k - 1]

            def partial(r, head=head, k=k):
                value = r ** (k - 2.0)
                for i in head:
                    value = value * _inverse_power(spec.blocks[i], orders[i], ell2)(r)
                return value

            lower = levels[near[k - 2]] ** (-1.0 / ell2)
            upper = 2.0 ** (1.0 / ell2) * t ** (alpha / ell2)
            lam3 += _log_quadrature(partial, lower, upper) * float(np.prod(factors[k - 1:]))
        total = lam1 + lam2 + lam3

    value = t ** (split.ell1 * alpha / 2.0 - beta) * off * total
    return BoundEnvelope(value, off, lam1, lam2, lam3, split)


# mass laws and marginals

KernelMass = namedtuple('KernelMass', 'mass box tail')


def _box_probability(phi, r, half_width):
    """P(|Y_r| <= half_width) for one coordinate, Y_r with characteristic
    function exp(-r phi(xi^2)), from (2/pi) int_0^inf sin(u)/u exp(-r phi(u^2/L^2)) du
    """

    def decay(u):
        if u == 0.0:
            return 1.0
        return math.exp(-r * bernstein.evaluate(phi, (u / half_width) ** 2))

    head, _ = integrate.quad(lambda u: decay(u) * (math.sin(u) / u if u else 1.0), 0.0, math.pi,
                             epsabs=1e-13, limit=200)
    tail, _ = integrate.quad(lambda u: decay(u) / u, math.pi, np.inf, weight='sin', wvar=1.0,
                             epsabs=1e-13, limlst=200)
    return 2.0 / math.pi * (head + tail)


def exit_probability(phi, r, half_width):
    """P(|Y_r| > half_width) for one coordinate of the subordinate Brownian
    motion with exponent phi, vectorised over r
    """

    r = np.atleast_1d(np.asarray(r, dtype=float))
    kind, coef = _closed_form_kind(phi)
    if kind == 'gauss':
        value = special.erfc(half_width / (2.0 * np.sqrt(coef * r)))
    elif kind == 'cauchy':
        value = 1.0 - 2.0 / math.pi * np.arctan(half_width / (coef * r))
    else:
        value = np.array([1.0 - _box_probability(phi, rr, half_width) for rr in r])
    return np.clip(value, 0.0, 1.0)


def kernel_tail(spec, alpha, beta, t, half_widths, weight_floor=1e-15):
    """Upper bound of the mass of |q_{alpha,beta}(t, .)| outside the box
    prod_j [-L_j, L_j]

    int |phi_{alpha,beta}(t, r)| P(Y_r outside the box) dr with the blocks
    independent given r and a union bound over the axes of one block.
    """

    if alpha == 1.0:
        if beta != 1.0:
            raise InvalidParameterValue('alpha = 1 needs beta = 1 for the tail bound', 'beta')
        r, w = np.array([float(t)]), np.array([1.0])
    else:
        r, w = kernel_weights(alpha, beta, t)
    w = np.abs(w)
    keep = w > weight_floor * np.max(w)
    r, w = r[keep], w[keep]
    inside = np.ones_like(r)
    axis = 0
    for block in spec.blocks:
        leaving = np.zeros_like(r)
        for _ in range(block.dim):
            leaving = leaving + exit_probability(block.phi, r, half_widths[axis])
            axis += 1
        inside = inside * (1.0 - np.minimum(leaving, 1.0))
    return float(np.dot(w, 1.0 - inside))


def kernel_mass_parts(spec, alpha, beta, t, grid=None, **grid_kwargs):
    """Mass of |q_{alpha,beta}(t, .)| as box quadrature plus tail bound

    The field is computed on a box twice as wide with the same spacing so the
    inner box only sees periodic images from beyond three half widths.

    :returns: :class:`KernelMass` (mass, box, tail)
    """

    if grid is None:
        grid = natural_grid(spec, alpha, t, **grid_kwargs)
    wide = spectral.ScalarField.centered(spec, [2 * n for n in grid.sizes], [2.0 * h for h in grid.half_widths])
    field = subordinated_kernel_spectral(spec, alpha, beta, t, wide)
    inner = tuple(slice(n // 2, n // 2 + n) for n in grid.sizes)
    box = float(np.sum(np.abs(field.values[inner])) * field.cell_volume)
    tail = kernel_tail(spec, alpha, beta, t, grid.half_widths)
    LOGGER.debug('Kernel mass at t={}: box {} tail {}'.format(t, box, tail))
    return KernelMass(box + tail, box, tail)


def kernel_mass(spec, alpha, beta, t, grid=None, **grid_kwargs):
    """int |q_{alpha,beta}(t, x)| dx, box quadrature plus tail bound"""

    return kernel_mass_parts(spec, alpha, beta, t, grid, **grid_kwargs).mass


def marginal_envelope(spec, alpha, beta, index, order, t, x_i):
    """Right-hand side of the marginal bound for block index

    t^{3 alpha/2 - beta} phi_i(|x_i|^-2)^{1/2} / |x_i|^{d_i+m} off the diagonal,
    sum_{k=1..l} t^{alpha - alpha/k - beta} int (phi_i^-1(r^-k))^{(d_i+m)/2} dr
    near it
    """

    block = spec.blocks[index]
    x_i = np.atleast_1d(np.asarray(x_i, dtype=float))
    rho = float(np.sqrt(np.dot(x_i, x_i)))
    if rho == 0:
        raise InvalidParameterValue('Marginal bound needs x_i != 0', 'x')
    level = bernstein.evaluate(block.phi, rho ** -2)
    if t ** alpha * level <= 1.0:
        return t ** (1.5 * alpha - beta) * math.sqrt(level) / rho ** (block.dim + order)
    total = 0.0
    for k in range(1, spec.ell + 1):
        lower = level ** (-1.0 / k)
        upper = 2.0 ** (1.0 / k) * t ** (alpha / k)
        total += t ** (alpha - alpha / k - beta) * _log_quadrature(_inverse_power(block, order, k), lower, upper)
    return total


def marginal_field(spec, alpha, beta, index, order, t, grid=None, **grid_kwargs):
    """int |D^m_{x_i} q| over the other blocks, on the axes of block index

    :returns: (coordinates per axis of block index, values)
    """

    if grid is None:
        grid = natural_grid(spec, alpha, t, **grid_kwargs)
    orders = [0] * spec.ell
    orders[index] = order
    field = subordinated_kernel_spectral(spec, alpha, beta, t, grid, orders, aliasing_tol=np.inf)
    own = spec.axes(index)
    others = tuple(a for a in range(spec.total_dim) if a not in own)
    volume = float(np.prod([field.spacings[a] for a in others])) if others else 1.0
    values = np.sum(np.abs(field.values), axis=others) * volume if others else np.abs(field.values)
    return [field.coordinates(a) for a in own], values


def marginal_bound_check(spec, alpha, beta, index, order, t, x_i, grid=None, **grid_kwargs):
    """(lhs, rhs) of the marginal bound at x_i

    lhs integrates |D^m_{x_i} q_{alpha,beta}(t, x)| over the other blocks on
    the spectral grid and interpolates at x_i.
    """

    if spec.ell < 2:
        raise InvalidParameterValue('Marginal bounds need at least two blocks', 'operator.ell')
    coords, values = marginal_field(spec, alpha, beta, index, order, t, grid, **grid_kwargs)
    x_i = np.atleast_1d(np.asarray(x_i, dtype=float))
    interp = RegularGridInterpolator(coords, values, method='cubic' if values.ndim == 1 else 'linear')
    lhs = float(interp(x_i[None, :])[0])
    rhs = marginal_envelope(spec, alpha, beta, index, order, t, x_i)
    return lhs, rhs


def chapman_kolmogorov_defect(spec, t, s, grid):
    """max |p(t+s) - p(t) * p(s)| / max p(t+s) on grid, convolution by FFT"""

    fields = [subordinated_kernel_spectral(spec, 1.0, 1.0, tau, grid) for tau in (t, s, t + s)]
    conv = grid.from_spectral(fields[0].to_spectral() * fields[1].to_spectral(), real=True)
    diff = np.max(np.abs(conv.values * grid.cell_volume - fields[2].values))
    return float(diff / np.max(np.abs(fields[2].values)))
