##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Solution operators of the time fractional equation

    d_t^alpha u = phi.Delta u + f,   u(0) = u_0

All solvers work mode by mode in Fourier space. The zero initial solution

    u(t) = int_0^t (t-s)^{alpha-1} E_{alpha,alpha}(-(t-s)^alpha m_phi) f(s) ds

is integrated exactly against the piecewise-linear interpolant of f in
time, using M0(tau) = tau^alpha E_{alpha,alpha+1}(-m tau^alpha) and
M1(tau) = tau^{alpha+1} (E_{alpha,alpha+1} - E_{alpha,alpha+2})(-m tau^alpha),
the first two moments of the memory kernel.
"""

import logging
import math

import numpy as np
from scipy import fft, signal
from scipy.interpolate import RegularGridInterpolator

from afpk import bernstein, configuration, fraccalc, spectral
from afpk.exceptions import EmptyCylinder, InvalidParameterValue, StepSizeRejected
from afpk.special import MLParams, mittag_leffler

LOGGER = logging.getLogger('AFPK')

HALF_STEP_TOLERANCE = 1e-3


class SpaceTimeField(object):
    """u(t_k, x) on a :class:`afpk.fraccalc.TimeGrid` times the box of a
    :class:`afpk.spectral.ScalarField`

    :param grid: time grid
    :param template: field fixing operator, sizes and spacings
    :param values: array of shape (n + 1,) + sizes
    """

    def __init__(self, grid, template, values):
        self.grid = grid
        self.template = template
        self.values = np.asarray(values)
        expected = (grid.n + 1,) + template.sizes
        if self.values.shape != expected:
            raise InvalidParameterValue('Space-time values have shape {}, grid is {}'.format(
                self.values.shape, expected), 'values')

    @classmethod
    def from_function(cls, grid, template, func):
        """Sample func(t, x_1, ..., x_d) on every node"""
        mesh = template.mesh()
        values = np.stack([np.broadcast_to(func(t, *mesh), template.sizes) for t in grid.nodes])
        return cls(grid, template, values)

    @classmethod
    def constant(cls, grid, field):
        """field at every node"""
        return cls(grid, field, np.repeat(field.values[None], grid.n + 1, axis=0))

    @property
    def spec(self):
        return self.template.spec

    @property
    def spatial_axes(self):
        return tuple(range(1, self.values.ndim))

    def node(self, k):
        return self.template.with_values(self.values[k])

    def with_values(self, values):
        return SpaceTimeField(self.grid, self.template, values)

    def to_spectral(self):
        axes = self.spatial_axes
        return fft.fftn(fft.ifftshift(self.values, axes=axes), axes=axes, workers=_workers())

    def from_spectral(self, values_hat, real=True):
        axes = self.spatial_axes
        values = fft.fftshift(fft.ifftn(values_hat, axes=axes, workers=_workers()), axes=axes)
        return self.with_values(values.real if real else values)

    def spatial_norms(self, p=2):
        """L_p norm in x per node"""
        values = np.abs(self.values).reshape(self.grid.n + 1, -1)
        if p == np.inf:
            return values.max(axis=1)
        return (np.sum(values ** p, axis=1) * self.template.cell_volume) ** (1.0 / p)

    def norm(self, p=2, q=2):
        """L_q((0, T); L_p) norm, right Riemann sum over the nodes t_1..t_n"""
        norms = self.spatial_norms(p)[1:]
        if q == np.inf:
            return float(norms.max())
        return float((np.sum(norms ** q) * self.grid.h) ** (1.0 / q))


def _workers():
    return configuration.get_thread_count()


def _symbol(spec, template):
    return spectral.symbol_field(spec or template.spec, template).values


def _unique_modes(m):
    uniq, inverse = np.unique(m, return_inverse=True)
    return uniq, inverse.reshape(m.shape)


def memory_moments(alpha, tau, m):
    """(M0, M1) of the memory kernel for lags tau (n,) and modes m (k,)

    :returns: two arrays of shape (n, k)
    """

    tau = np.asarray(tau, dtype=float)[:, None]
    m = np.asarray(m, dtype=float)[None, :]
    z = -(tau ** alpha) * m
    e1 = np.asarray(mittag_leffler(MLParams(alpha, alpha + 1.0), z))
    e2 = np.asarray(mittag_leffler(MLParams(alpha, alpha + 2.0), z))
    m0 = tau ** alpha * e1
    m1 = tau ** (alpha + 1.0) * (e1 - e2)
    return m0, m1


def step_weights(alpha, grid, m, interpolation='linear'):
    """Lag weights of the product integration rule per mode

    linear: u_k = sum_{n=1..k} wA_n f_{k-n} + wB_n f_{k-n+1};
    constant: u_k = sum_{n=1..k} wB_n f_{k-n+1} with wB_n = M0(nh) - M0((n-1)h).

    :returns: (wA, wB) of shape (n + 1, modes), row 0 zero
    """

    h = grid.h
    lags = h * np.arange(grid.n + 1)
    m0, m1 = memory_moments(alpha, lags, m)
    d0 = np.zeros_like(m0)
    d1 = np.zeros_like(m1)
    d0[1:] = np.diff(m0, axis=0)
    d1[1:] = np.diff(m1, axis=0)
    if interpolation == 'constant':
        return np.zeros_like(d0), d0
    if interpolation != 'linear':
        raise InvalidParameterValue('Unknown interpolation {}'.format(interpolation), 'interpolation')
    start = lags[:, None] - h
    w_a = (d1 - start * d0) / h
    w_b = ((start + h) * d0 - d1) / h
    w_a[0] = 0.0
    w_b[0] = 0.0
    return w_a, w_b


def _duhamel(spec, alpha, f, interpolation):
    """Fourier coefficients of the zero initial solution"""

    m = _symbol(spec, f.template)
    uniq, inverse = _unique_modes(m)
    w_a, w_b = step_weights(alpha, f.grid, uniq, interpolation)
    f_hat = f.to_spectral().reshape(f.grid.n + 1, -1)
    index = inverse.reshape(-1)
    w_a = w_a[:, index]
    w_b = w_b[:, index]

    n = f.grid.n
    u_hat = np.zeros_like(f_hat)
    if interpolation == 'linear':
        u_hat += signal.fftconvolve(w_a, f_hat, axes=0)[:n + 1]
    # sum_{n>=1} wB_n f_{k-n+1} = sum_{j>=0} wB_{j+1} f_{k-j}
    shifted = np.zeros_like(w_b)
    shifted[:-1] = w_b[1:]
    tail = np.array(f_hat, copy=True)
    tail[0] = 0.0
    u_hat += signal.fftconvolve(shifted, tail, axes=0)[:n + 1]
    u_hat[0] = 0.0
    return u_hat.reshape((n + 1,) + f.template.sizes)


def solve_zero_init(spec, alpha, f, interpolation='linear', check=True, tol=HALF_STEP_TOLERANCE):
    """Zero initial solution G_0 f of d_t^alpha u = phi.Delta u + f

    :param f: :class:`SpaceTimeField` forcing
    :param interpolation: 'linear' or 'constant' interpolation of f in time
    :param check: compare with the solution on every other node and raise
                  :class:`afpk.exceptions.StepSizeRejected` when they differ
                  by more than tol in relative L_2(L_2)
    """

    if not 0 < alpha <= 1:
        raise InvalidParameterValue('alpha must lie in (0, 1], got {}'.format(alpha), 'alpha')
    u_hat = _duhamel(spec, alpha, f, interpolation)
    u = f.from_spectral(u_hat, real=not np.iscomplexobj(f.values))

    if check and f.grid.n % 2 == 0 and f.grid.n >= 4:
        coarse_grid = fraccalc.TimeGrid(2.0 * f.grid.h, f.grid.n // 2)
        coarse_f = SpaceTimeField(coarse_grid, f.template, f.values[::2])
        coarse = _duhamel(spec, alpha, coarse_f, interpolation)
        fine = u_hat[::2]
        scale = np.sqrt(np.sum(np.abs(fine) ** 2))
        diff = np.sqrt(np.sum(np.abs(fine - coarse) ** 2))
        LOGGER.debug('Half-step difference {} (scale {})'.format(diff, scale))
        if scale > 0 and diff > tol * scale:
            raise StepSizeRejected('Half-step comparison differs by {:.3g} relative'.format(diff / scale),
                                   'solve_zero_init')
    return u


def _dyadic_unit_rule(panels=20, nodes=8):
    """Gauss-Legendre on [2^-panels, 1] in dyadic panels plus [0, 2^-panels]"""

    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes)
    upper = 2.0 ** -np.arange(panels + 1)
    lower = np.concatenate([upper[1:], [0.0]])
    half = (upper - lower)[:, None] / 2.0
    w = (lower[:, None] + half * (gl_x[None, :] + 1.0)).ravel()
    weights = (half * gl_w[None, :]).ravel()
    return w, weights


def solve_zero_init_direct(spec, alpha, f, panels=20, nodes=8):
    """Zero initial solution by direct time quadrature of the Duhamel
    integral against the spectral kernel q_{alpha,1}

    With tau = t w^{1/alpha}, tau^{alpha-1} d tau = t^alpha / alpha dw, and
    f is interpolated linearly in time.
    """

    grid = f.grid
    m = _symbol(spec, f.template)
    uniq, inverse = _unique_modes(m)
    f_hat = f.to_spectral().reshape(grid.n + 1, -1)
    w, weights = _dyadic_unit_rule(panels, nodes)

    u_hat = np.zeros_like(f_hat)
    times = grid.nodes[1:]
    params = MLParams(alpha, alpha)
    z = -(times[:, None, None] ** alpha) * w[None, :, None] * uniq[None, None, :]
    kernel_values = np.asarray(mittag_leffler(params, z))
    index = inverse.reshape(-1)
    for k, t in enumerate(times, 1):
        tau = t * w ** (1.0 / alpha)
        position = np.clip((t - tau) / grid.h, 0.0, grid.n)
        j = np.minimum(np.floor(position).astype(int), grid.n - 1)
        frac = (position - j)[:, None]
        f_at = f_hat[j] * (1.0 - frac) + f_hat[j + 1] * frac
        u_hat[k] = (t ** alpha / alpha) * np.sum(weights[:, None] * kernel_values[k - 1][:, index] * f_at, axis=0)
    u_hat = u_hat.reshape((grid.n + 1,) + f.template.sizes)
    return f.from_spectral(u_hat, real=not np.iscomplexobj(f.values))


def propagate_initial(spec, alpha, u0, t):
    """F^-1[E_{alpha,1}(-t^alpha m_phi) F u0]"""

    if t < 0:
        raise InvalidParameterValue('t must be nonnegative, got {}'.format(t), 't')
    if t == 0:
        return u0.with_values(np.array(u0.values, copy=True))
    m = _symbol(spec, u0)
    uniq, inverse = _unique_modes(m)
    symbol = np.asarray(mittag_leffler(MLParams(alpha, 1.0), -(float(t) ** alpha) * uniq))[inverse]
    return spectral.apply_multiplier(u0, symbol)


def propagate_series(spec, alpha, u0, grid):
    """propagate_initial on every node of grid as a :class:`SpaceTimeField`"""

    m = _symbol(spec, u0)
    uniq, inverse = _unique_modes(m)
    z = -(grid.nodes[:, None] ** alpha) * uniq[None, :]
    symbol = np.asarray(mittag_leffler(MLParams(alpha, 1.0), z))[:, inverse.reshape(-1)]
    u0_hat = u0.to_spectral().reshape(-1)
    template = u0.with_values(np.zeros(u0.sizes))
    stf = SpaceTimeField(grid, template, np.zeros((grid.n + 1,) + u0.sizes))
    return stf.from_spectral((symbol * u0_hat[None, :]).reshape((grid.n + 1,) + u0.sizes),
                             real=not np.iscomplexobj(u0.values))


def solve(spec, alpha, f=None, u0=None, grid=None, q=2, **kwargs):
    """u = propagate(u0) + G_0 f

    :raises InvalidParameterValue: for u0 given with alpha q <= 1
    """

    if f is None and (u0 is None or grid is None):
        raise InvalidParameterValue('Need a forcing or an initial value with a time grid', 'f')
    if u0 is not None and alpha * q <= 1:
        raise InvalidParameterValue('Initial values need alpha q > 1, got {}'.format(alpha * q), 'u0')
    if f is not None:
        u = solve_zero_init(spec, alpha, f, **kwargs)
        grid = f.grid
    else:
        u = None
    if u0 is not None:
        free = propagate_series(spec, alpha, u0, grid)
        u = free if u is None else u.with_values(u.values + free.values)
    return u


def _generator_series(spec, u):
    m = _symbol(spec, u.template)
    return u.from_spectral(-m[None] * u.to_spectral(), real=not np.iscomplexobj(u.values))


def residual(spec, alpha, u, f=None, u0=None):
    """d_t^alpha (u - u0) - phi.Delta u - f with the L1 Caputo derivative
    (central differences for alpha = 1); node t = 0 is set to zero

    :param u0: :class:`afpk.spectral.ScalarField`, default zero
    """

    values = np.asarray(u.values, dtype=float)
    shifted = values - (0.0 if u0 is None else u0.values[None])
    time_part = fraccalc.caputo_derivative(fraccalc.TimeSeries(u.grid, shifted), alpha).values
    result = time_part - _generator_series(spec, u).values
    if f is not None:
        result = result - f.values
    result[0] = 0.0
    return u.with_values(result)


def residual_norm(spec, alpha, u, f=None, u0=None):
    """Relative L_2(L_2) residual: ||residual|| / (||phi.Delta u|| + ||f||)"""

    res = residual(spec, alpha, u, f, u0)
    scale = _generator_series(spec, u).norm() + (f.norm() if f is not None else 0.0)
    if scale == 0:
        return 0.0
    return res.norm() / scale


def regularity_probe(spec, alpha, f, p=2, q=2, **kwargs):
    """||phi.Delta G_0 f||_{L_q(L_p)} / ||f||_{L_q(L_p)}

    :raises InvalidParameterValue: for f = 0
    """

    denominator = f.norm(p, q)
    if denominator == 0:
        raise InvalidParameterValue('Forcing vanishes, ratio undefined', 'f')
    u = solve_zero_init(spec, alpha, f, **kwargs)
    return _generator_series(spec, u).norm(p, q) / denominator


class CylinderSpec(object):
    """Q_b = (t0 - b, t0 + b) x prod_i B(x0_i, kappa_i(b)),
    kappa_i(b) = (phi_i^-1(b^-alpha))^{-1/2}
    """

    def __init__(self, spec, alpha, center_t, center_x, b):
        if not b > 0:
            raise EmptyCylinder('Cylinder size must be positive, got {}'.format(b), 'b')
        self.spec = spec
        self.alpha = float(alpha)
        self.center_t = float(center_t)
        self.center_x = np.atleast_1d(np.asarray(center_x, dtype=float))
        if self.center_x.size != spec.total_dim:
            raise InvalidParameterValue('Center needs {} coordinates'.format(spec.total_dim), 'center_x')
        self.b = float(b)
        self.radii = tuple(bernstein.inverse(block.phi, self.b ** -self.alpha) ** -0.5 for block in spec.blocks)

    @property
    def volume(self):
        vol = 2.0 * self.b
        for block, radius in zip(self.spec.blocks, self.radii):
            vol *= math.pi ** (block.dim / 2.0) / math.gamma(block.dim / 2.0 + 1.0) * radius ** block.dim
        return vol

    def sample(self, rng, n):
        """n uniform points (t, x) in the cylinder, shape (n, 1 + d)"""
        t = self.center_t + self.b * rng.uniform(-1.0, 1.0, n)
        parts = [t[:, None]]
        for index, (block, radius) in enumerate(zip(self.spec.blocks, self.radii)):
            direction = rng.standard_normal((n, block.dim))
            direction /= np.linalg.norm(direction, axis=1)[:, None]
            length = radius * rng.uniform(0.0, 1.0, n) ** (1.0 / block.dim)
            center = self.center_x[list(self.spec.axes(index))]
            parts.append(center[None, :] + direction * length[:, None])
        return np.concatenate(parts, axis=1)

    def check_inside(self, grid, template):
        """:raises EmptyCylinder: when Q_b leaves the computational box"""
        if self.center_t + self.b > grid.T:
            raise EmptyCylinder('Cylinder reaches beyond T = {}'.format(grid.T), 'b')
        for index, radius in enumerate(self.radii):
            for axis in self.spec.axes(index):
                coords = template.coordinates(axis)
                if (self.center_x[axis] - radius < coords[0] or
                        self.center_x[axis] + radius > coords[-1]):
                    raise EmptyCylinder('Cylinder leaves the box along axis {}'.format(axis + 1), 'b')

    @staticmethod
    def doubling_bound(spec, alpha, lam):
        """Upper bound of |Q_{lam b}| / |Q_b| for lam >= 1"""
        cert = min(spec.certificates, key=lambda c: c.delta0)
        d = spec.total_dim
        return lam * cert.c0 ** (-d / cert.delta0) * lam ** (alpha * d / (2.0 * cert.delta0))


def oscillation_probe(spec, alpha, f, cylinders, n_points=10000, seed=0, **kwargs):
    """sup over cylinders of the mean oscillation of phi.Delta G_0 f,
    normalized by ||f||_inf; times before 0 see the zero extension

    :raises EmptyCylinder: for a cylinder outside the box
    """

    f_inf = float(np.max(np.abs(f.values)))
    if f_inf == 0:
        raise InvalidParameterValue('Forcing vanishes, ratio undefined', 'f')
    for cylinder in cylinders:
        cylinder.check_inside(f.grid, f.template)
    g = _generator_series(spec, solve_zero_init(spec, alpha, f, **kwargs))
    axes = [f.grid.nodes] + [f.template.coordinates(a) for a in range(f.template.ndim)]
    interp = RegularGridInterpolator(axes, g.values, bounds_error=False, fill_value=None)

    rng = np.random.default_rng(seed)
    best = 0.0
    for cylinder in cylinders:
        points = cylinder.sample(rng, n_points)
        values = np.where(points[:, 0] < 0.0, 0.0, interp(np.clip(points, [-np.inf] + [-np.inf] * f.template.ndim,
                                                                   [f.grid.T] + [np.inf] * f.template.ndim)))
        oscillation = float(np.mean(np.abs(values - values.mean())))
        LOGGER.debug('Mean oscillation {} on cylinder b={}'.format(oscillation, cylinder.b))
        best = max(best, oscillation)
    return best / f_inf


def _time_rule(T, panels=40, nodes=8):
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes)
    upper = T * 2.0 ** -np.arange(panels)
    lower = np.append(upper[1:], 0.0)
    half = (upper - lower)[:, None] / 2.0
    return (lower[:, None] + half * (gl_x[None, :] + 1.0)).ravel(), (half * gl_w[None, :]).ravel()


def trace_probe(spec, alpha, gamma, u0, T=1.0, q=2, weight='dyadic'):
    """(||u0||_{B^{gamma+2-2/(alpha q)}_{2,2}},
    ||u||_{L_2(H^{gamma+2})} + ||d_t^alpha u||_{L_2(H^gamma)}) for the
    propagated solution on (0, T); time integrals per mode by Gauss-Legendre
    on dyadic panels

    :raises InvalidParameterValue: for alpha q <= 1
    """

    if alpha * q <= 1:
        raise InvalidParameterValue('Trace probe needs alpha q > 1, got {}'.format(alpha * q), 'alpha')
    besov = spectral.besov_norm(u0, gamma + 2.0 - 2.0 / (alpha * q), 2, 2, weight=weight, spec=spec)

    m = _symbol(spec, u0)
    uniq, inverse = _unique_modes(m)
    t, w = _time_rule(float(T))
    e = np.asarray(mittag_leffler(MLParams(alpha, 1.0), -(t[:, None] ** alpha) * uniq[None, :]))
    energy = np.sum(w[:, None] * e * e, axis=0)[inverse]
    coeff = np.abs(u0.to_spectral()) ** 2 * u0.cell_volume / np.prod(u0.sizes)
    solution = math.sqrt(float(np.sum((1.0 + m) ** (gamma + 2.0) * energy * coeff)))
    derivative = math.sqrt(float(np.sum((1.0 + m) ** gamma * m * m * energy * coeff)))
    return besov, solution + derivative


def main_estimate_ratio(spec, alpha, u, f=None, u0=None, gamma=0.0, q=2):
    """(||u|| + ||d_t^alpha u|| + ||phi.Delta u||) / (||f|| + ||u0||_B) in L_2(L_2)"""

    values = np.asarray(u.values, dtype=float)
    shifted = values - (0.0 if u0 is None else u0.values[None])
    time_part = u.with_values(fraccalc.caputo_derivative(fraccalc.TimeSeries(u.grid, shifted), alpha).values)
    numerator = u.norm() + time_part.norm() + _generator_series(spec, u).norm()
    denominator = f.norm() if f is not None else 0.0
    if u0 is not None:
        denominator += spectral.besov_norm(u0, gamma + 2.0 - 2.0 / (alpha * q), 2, 2, spec=spec)
    if denominator == 0:
        raise InvalidParameterValue('Data vanish, ratio undefined', 'f')
    return numerator / denominator
