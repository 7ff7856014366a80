##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""The experiment kinds of the command line runner

Each kind is an :class:`afpk.app.Experiment` whose handler turns an
:class:`afpk.app.ExperimentRequest` into CSV reports, optional field files
and acceptance checks.
"""

import logging
import math

import numpy as np
from scipy import fft
from scipy.interpolate import RegularGridInterpolator

from afpk import kernel, montecarlo, solver, spectral
from afpk.app import Experiment
from afpk.inout.inputs import LiteralInput
from afpk.inout.outputs import CsvReport
from afpk.validator.allowed_value import RANGECLOSURETYPE

LOGGER = logging.getLogger('AFPK')

# residuals below this count as exact when checking convergence ratios
RESIDUAL_FLOOR = 1e-10


def _positive(identifier, title, default):
    return LiteralInput(identifier, title, data_type='float',
                        allowed_values=[(0.0, None, RANGECLOSURETYPE.OPEN)], default=default)


def _drift(values):
    values = np.abs(np.asarray(values, dtype=float))
    return float(values.max() / values.min())


def _axis_columns(spec):
    return ['x_{}'.format(a + 1) for a in range(spec.total_dim)]


def _gaussian(template, width=1.0):
    mesh = template.mesh()
    return template.with_values(np.exp(-sum(x ** 2 for x in mesh) / width ** 2) * np.ones(template.sizes))


def band_limited(template, rng, cutoff=0.25):
    """Random real field with Fourier support |xi_a| <= cutoff * pi / dx_a,
    scaled to unit maximum
    """

    coeffs = rng.standard_normal(template.sizes) + 1j * rng.standard_normal(template.sizes)
    freq = template.frequency_mesh()
    for axis, xi in enumerate(freq):
        coeffs = coeffs * (np.abs(xi) <= cutoff * math.pi / template.spacings[axis])
    values = np.real(fft.ifftn(coeffs))
    values = fft.fftshift(values)
    return template.with_values(values / np.max(np.abs(values)))


def _dyadic(levels):
    return [2.0 ** k for k in range(-levels, levels + 1)]


# kernel-table

def _kernel_table(request, response):
    spec, alpha, beta, t = request.spec, request.alpha, request.beta, request.t
    inputs = request.inputs
    s = np.linspace(inputs['x_min'], inputs['x_max'], inputs['points'])
    points = s[:, None] * np.ones(spec.total_dim)[None, :]

    q_quad = kernel.kernel_quadrature_points(spec, alpha, beta, t, points)
    field = kernel.subordinated_kernel_spectral(spec, alpha, beta, t, request.grid())
    coords = [field.coordinates(a) for a in range(field.ndim)]
    q_spec = RegularGridInterpolator(coords, field.values, method='cubic', bounds_error=False,
                                     fill_value=None)(points)
    envelope = np.array([kernel.bound_envelope(spec, kernel.KernelQuery(alpha, beta, t, x)).value
                         for x in points])

    report = CsvReport(['t'] + _axis_columns(spec) + ['q_quad', 'q_spec', 'envelope', 'ratio'], 'kernel-table')
    for x, qq, qs, env in zip(points, q_quad, q_spec, envelope):
        report.add_row(t, *(list(x) + [qq, qs, env, abs(qq) / env]))
    response.add_report(report)
    if request.fields:
        response.add_field('kernel', field)

    scale = np.max(np.abs(q_spec))
    mask = np.abs(q_spec) > inputs['floor'] * scale
    error = float(np.max(np.abs(q_quad - q_spec)[mask]) / scale) if np.any(mask) else 0.0
    response.check('route agreement', error <= inputs['tolerance'],
                   'relative difference {:.3g}, tolerance {:.3g}'.format(error, inputs['tolerance']))


KERNEL_TABLE = Experiment(
    _kernel_table, 'kernel-table', 'Kernel by subordination quadrature and by FFT',
    abstract='Points x = s (1, ..., 1) for s from x_min to x_max.',
    inputs=[
        LiteralInput('experiment.points', 'Points', data_type='positiveInteger', default='64'),
        _positive('experiment.x_min', 'Smallest s', '0.1'),
        _positive('experiment.x_max', 'Largest s', '4.0'),
        _positive('experiment.tolerance', 'Relative route difference', '1e-4'),
        _positive('experiment.floor', 'Values below floor * max are not compared', '1e-6'),
    ],
    reports=[('kernel-table', 't, x_1..x_d, q_quad, q_spec, envelope, ratio')])


# verify-bounds

def _sample_points(spec, alpha, t, rng, n, decades):
    """Points with block radii log-uniform around the natural scale at t"""

    parts = []
    for block in spec.blocks:
        scale = kernel.natural_scale(block.phi, alpha, t)
        direction = rng.standard_normal((n, block.dim))
        direction /= np.linalg.norm(direction, axis=1)[:, None]
        radius = scale * 10.0 ** rng.uniform(-decades, decades, n)
        parts.append(direction * radius[:, None])
    return np.concatenate(parts, axis=1)


def _verify_bounds(request, response):
    spec, alpha, beta = request.spec, request.alpha, request.beta
    inputs = request.inputs
    report = CsvReport(['t', 'sup_ratio', 'near_sup', 'off_sup', 'near_points', 'off_points'], 'verify-bounds')
    sups, near_sups = [], []
    for k in (-inputs['dilation'], 0, inputs['dilation']):
        t = request.t * 2.0 ** k
        rng = np.random.default_rng(request.seed)
        points = _sample_points(spec, alpha, t, rng, inputs['points'], inputs['decades'])
        values = kernel.kernel_quadrature_points(spec, alpha, beta, t, points)
        near_ratios, off_ratios = [], []
        for x, q in zip(points, values):
            env = kernel.bound_envelope(spec, kernel.KernelQuery(alpha, beta, t, x))
            ratio = abs(q) / env.value
            if env.split.ell1 == 0:
                near_ratios.append(ratio)
            else:
                off_ratios.append(ratio)
        near_sup = max(near_ratios, default=0.0)
        off_sup = max(off_ratios, default=0.0)
        sups.append(max(near_sup, off_sup))
        # off-diagonal ratios carry an extra t^alpha from the envelope's time factor
        if near_ratios:
            near_sups.append(near_sup)
        report.add_row(t, sups[-1], near_sup, off_sup, len(near_ratios), len(off_ratios))
    response.add_report(report)
    finite = bool(np.all(np.isfinite(sups)))
    response.check('envelope finite', finite, 'sups {}'.format(', '.join('{:.3g}'.format(s) for s in sups)))
    drift = _drift(near_sups) if near_sups else float('inf')
    response.check('envelope drift', finite and drift < inputs['max_drift'],
                   'near-diagonal drift {:.3g}'.format(drift))


VERIFY_BOUNDS = Experiment(
    _verify_bounds, 'verify-bounds', 'Kernel against its upper bound under time dilation',
    abstract='Sup of |q| / envelope at t 2^-k, t, t 2^k over random points in both regimes.',
    inputs=[
        LiteralInput('experiment.points', 'Points per time', data_type='positiveInteger', default='1000'),
        LiteralInput('experiment.dilation', 'k', data_type='nonNegativeInteger', default='4'),
        _positive('experiment.decades', 'Radius spread in decades', '2.0'),
        _positive('experiment.max_drift', 'Allowed max / min of the near-diagonal sups', '3.0'),
    ],
    reports=[('verify-bounds', 't, sup_ratio, near_sup, off_sup, near_points, off_points')])


# mass-scan

def _mass_scan(request, response):
    spec, alpha, beta = request.spec, request.alpha, request.beta
    inputs = request.inputs
    report = CsvReport(['t', 'mass', 'box', 'tail', 'scaled_mass'], 'mass-scan')
    masses, scaled = [], []
    for t in _dyadic(inputs['levels']):
        parts = kernel.kernel_mass_parts(spec, alpha, beta, t, grid=request.grid(t))
        masses.append(parts.mass)
        scaled.append(parts.mass * t ** (beta - alpha))
        report.add_row(t, parts.mass, parts.box, parts.tail, scaled[-1])
    response.add_report(report)
    if beta == alpha:
        error = float(np.max(np.abs(np.array(masses) - 1.0)))
        response.check('unit mass', error <= inputs['tolerance'], 'max |mass - 1| {:.3g}'.format(error))
    else:
        drift = _drift(scaled)
        response.check('mass scaling', drift <= inputs['max_drift'], 'drift {:.3g}'.format(drift))


MASS_SCAN = Experiment(
    _mass_scan, 'mass-scan', 'Kernel mass over dyadic times',
    abstract='Mass of |q| at t = 2^-levels..2^levels as box quadrature plus tail bound; '
             'scaled_mass = mass t^(beta - alpha).',
    inputs=[
        LiteralInput('experiment.levels', 'Dyadic levels', data_type='nonNegativeInteger', default='3'),
        _positive('experiment.tolerance', 'Unit mass tolerance for beta = alpha', '1e-3'),
        _positive('experiment.max_drift', 'Allowed max / min of scaled_mass', '1.5'),
    ],
    reports=[('mass-scan', 't, mass, box, tail, scaled_mass')])


# solve

def _solve(request, response):
    spec, alpha = request.spec, request.alpha
    inputs = request.inputs
    template = request.grid(request.T)
    bump = _gaussian(template, inputs['width'])
    forcing = solver.SpaceTimeField.constant(request.time_grid(), bump.with_values(inputs['amplitude'] * bump.values))
    u0 = bump if inputs['initial'] else None
    u = solver.solve(spec, alpha, forcing, u0, interpolation=inputs['interpolation'])

    report = CsvReport(['t', 'l2_norm', 'sup_norm', 'mass'], 'solve')
    l2 = u.spatial_norms(2)
    sup = u.spatial_norms(np.inf)
    for k, t in enumerate(u.grid.nodes):
        report.add_row(t, l2[k], sup[k], float(np.sum(u.values[k]) * template.cell_volume))
    response.add_report(report)
    if request.fields:
        response.add_series('u', u)


SOLVE = Experiment(
    _solve, 'solve', 'Solution for a Gaussian forcing',
    abstract='f = amplitude exp(-|x|^2 / width^2) on (0, T); u0 the same bump when initial is true.',
    inputs=[
        _positive('experiment.amplitude', 'Forcing amplitude', '1.0'),
        _positive('experiment.width', 'Bump width', '1.0'),
        LiteralInput('experiment.initial', 'Use an initial value', data_type='boolean', default='false'),
        LiteralInput('experiment.interpolation', 'Forcing interpolation in time', data_type='string',
                     allowed_values=['linear', 'constant'], default='linear'),
    ],
    reports=[('solve', 't, l2_norm, sup_norm, mass')])


# residual

def _manufactured(spec, alpha, template, time_grid, width):
    """Forcing of u = t g: d_t^alpha (t g) - phi.Delta (t g)"""

    g = _gaussian(template, width)
    lap = spectral.apply_generator(spec, g).values
    t = time_grid.nodes[:, None]
    shape = (time_grid.n + 1,) + template.sizes
    values = (t ** (1.0 - alpha) / math.gamma(2.0 - alpha)) * g.values.reshape(1, -1) - t * lap.reshape(1, -1)
    return solver.SpaceTimeField(time_grid, template, values.reshape(shape))


def _residual(request, response):
    spec, alpha = request.spec, request.alpha
    inputs = request.inputs
    template = request.grid(request.T)
    report = CsvReport(['nt', 'h', 'residual', 'ratio'], 'residual')
    residuals = []
    for level in range(inputs['refinements']):
        time_grid = request.time_grid(request.nt * 2 ** level)
        if inputs['case'] == 'propagator':
            u0 = _gaussian(template, inputs['width'])
            u = solver.propagate_series(spec, alpha, u0, time_grid)
            value = solver.residual_norm(spec, alpha, u, None, u0)
        else:
            f = _manufactured(spec, alpha, template, time_grid, inputs['width'])
            u = solver.solve_zero_init(spec, alpha, f, check=False)
            value = solver.residual_norm(spec, alpha, u, f)
        ratio = residuals[-1] / value if residuals and value > 0 else float('nan')
        residuals.append(value)
        report.add_row(time_grid.n, time_grid.h, value, ratio)
    response.add_report(report)

    response.check('residual size', residuals[0] <= inputs['tolerance'],
                   'residual {:.3g} at nt = {}'.format(residuals[0], request.nt))
    for coarse, fine in zip(residuals[:-1], residuals[1:]):
        if coarse < RESIDUAL_FLOOR:
            continue
        response.check('residual decrease', fine == 0 or coarse / fine >= inputs['min_ratio'],
                       'ratio {:.3g}'.format(coarse / fine if fine else float('inf')))


RESIDUAL = Experiment(
    _residual, 'residual', 'Residual of computed solutions under time refinement',
    abstract='case propagator: free evolution of a Gaussian; case manufactured: u = t exp(-|x|^2 / width^2).',
    inputs=[
        LiteralInput('experiment.case', 'Solution', data_type='string',
                     allowed_values=['propagator', 'manufactured'], default='manufactured'),
        LiteralInput('experiment.refinements', 'Number of time grids', data_type='positiveInteger', default='3'),
        _positive('experiment.width', 'Gaussian width', '1.0'),
        _positive('experiment.tolerance', 'Relative residual at time.nt', '3e-2'),
        _positive('experiment.min_ratio', 'Required decrease per refinement', '1.4'),
    ],
    reports=[('residual', 'nt, h, residual, ratio')])


# mc-compare

def _mc_compare(request, response):
    spec, alpha, t = request.spec, request.alpha, request.t
    inputs = request.inputs
    config = montecarlo.SamplerConfig(spec, alpha, t, inputs['paths'], request.seed, request.chunk)
    samples = montecarlo.sample_endpoints(config, request.executor)
    analytic = kernel.subordinated_kernel_spectral(spec, alpha, alpha, t, request.grid())
    distance = montecarlo.density_distance(samples, analytic)

    report = CsvReport(['axis', 'ks', 'chi2_p', 'clipped'], 'mc-compare')
    for axis, (ks, p) in enumerate(zip(distance.axis_ks, distance.axis_chi2_p), 1):
        report.add_row(axis, ks, p, distance.clipped)
    response.add_report(report)
    if inputs['dump_samples']:
        dump = CsvReport(['path_id'] + _axis_columns(spec), 'samples')
        for index, x in enumerate(samples):
            dump.add_row(index, *x)
        response.add_report(dump)
    response.check('marginal laws', distance.ks < inputs['ks_tolerance'], 'KS {:.3g}'.format(distance.ks))


MC_COMPARE = Experiment(
    _mc_compare, 'mc-compare', 'Monte Carlo endpoints against the analytic density',
    abstract='Per axis KS distance and chi-square p-value of X_{R_t} against q_{alpha,alpha}(t).',
    inputs=[
        LiteralInput('experiment.paths', 'Sample paths', data_type='positiveInteger', default='100000'),
        _positive('experiment.ks_tolerance', 'Largest accepted KS distance', '0.015'),
        LiteralInput('experiment.dump_samples', 'Write samples.csv', data_type='boolean', default='false'),
    ],
    reports=[('mc-compare', 'axis, ks, chi2_p, clipped'), ('samples', 'path_id, x_1..x_d')])


# norms

def _norms(request, response):
    spec = request.spec
    inputs = request.inputs
    template = request.grid()
    rng = np.random.default_rng(request.seed)
    report = CsvReport(['field', 'sobolev', 'besov', 'square_function', 'ratio'], 'norms')
    ratios = []
    for index in range(inputs['count']):
        field = band_limited(template, rng, inputs['cutoff'])
        sobolev = spectral.sobolev_norm(field, inputs['gamma'], 2, spec)
        besov = spectral.besov_norm(field, inputs['gamma'], 2, 2, spec=spec)
        square = spectral.square_function_norm(field, inputs['gamma'], 2, spec)
        ratios.append(besov / sobolev)
        report.add_row(index + 1, sobolev, besov, square, ratios[-1])
    response.add_report(report)
    low, high = min(ratios), max(ratios)
    passed = inputs['min_ratio'] <= low and high <= inputs['max_ratio']
    response.check('norm equivalence', passed, 'ratios in [{:.3g}, {:.3g}]'.format(low, high))


NORMS = Experiment(
    _norms, 'norms', 'Besov, Sobolev and square function norms of random fields',
    abstract='p = q = 2 norms of band-limited random fields; ratio = besov / sobolev.',
    inputs=[
        LiteralInput('experiment.count', 'Number of fields', data_type='positiveInteger', default='10'),
        LiteralInput('experiment.gamma', 'Smoothness', data_type='float', default='1.0'),
        LiteralInput('experiment.cutoff', 'Band limit as a fraction of Nyquist', data_type='float',
                     allowed_values=[(0.0, 1.0, RANGECLOSURETYPE.OPENCLOSED)], default='0.25'),
        _positive('experiment.min_ratio', 'Smallest accepted besov / sobolev', '0.25'),
        _positive('experiment.max_ratio', 'Largest accepted besov / sobolev', '4.0'),
    ],
    reports=[('norms', 'field, sobolev, besov, square_function, ratio')])


# trace-probe

PROFILES = {
    'gaussian': lambda r2, x1: np.exp(-r2),
    'algebraic': lambda r2, x1: (1.0 + r2) ** -2,
    'odd': lambda r2, x1: x1 * np.exp(-r2 / 2.0),
}


def _profile_field(template, name, lam):
    mesh = template.mesh()
    scaled = [lam * x for x in mesh]
    r2 = sum(x ** 2 for x in scaled)
    return template.with_values(PROFILES[name](r2, scaled[0]) * np.ones(template.sizes))


def _trace_probe(request, response):
    spec, alpha = request.spec, request.alpha
    inputs = request.inputs
    template = request.grid(request.T)
    report = CsvReport(['profile', 'lambda', 'besov', 'solution', 'ratio'], 'trace-probe')
    drifts = {}
    for name in sorted(PROFILES):
        ratios = []
        for lam in _dyadic(inputs['dilations']):
            u0 = _profile_field(template, name, lam)
            besov, norm = solver.trace_probe(spec, alpha, inputs['gamma'], u0, request.T)
            ratios.append(norm / besov)
            report.add_row(name, lam, besov, norm, ratios[-1])
        drifts[name] = _drift(ratios)
    response.add_report(report)
    for name, drift in sorted(drifts.items()):
        response.check('trace drift {}'.format(name), drift < inputs['max_drift'], 'drift {:.3g}'.format(drift))


TRACE_PROBE = Experiment(
    _trace_probe, 'trace-probe', 'Solution norm of the free evolution against the Besov trace norm',
    abstract='Profiles gaussian, algebraic, odd dilated by 2^-k..2^k; needs alpha > 1/2.',
    inputs=[
        LiteralInput('experiment.gamma', 'Smoothness', data_type='float', default='0.0'),
        LiteralInput('experiment.dilations', 'k', data_type='nonNegativeInteger', default='2'),
        _positive('experiment.max_drift', 'Allowed max / min of the ratios', '3.0'),
    ],
    reports=[('trace-probe', 'profile, lambda, besov, solution, ratio')])


# bmo-probe

def _bmo_probe(request, response):
    spec, alpha = request.spec, request.alpha
    inputs = request.inputs
    template = request.grid(request.T)
    mesh = template.mesh()
    bounded = template.with_values(np.tanh(inputs['steepness'] * mesh[0]) * np.ones(template.sizes))
    forcing = solver.SpaceTimeField.constant(request.time_grid(), bounded)

    report = CsvReport(['b', 'oscillation'], 'bmo-probe')
    values = []
    for k in range(inputs['levels'], -1, -1):
        b = 2.0 ** -k * request.T / 2.0
        cylinder = solver.CylinderSpec(spec, alpha, request.T - b, np.zeros(spec.total_dim), b)
        value = solver.oscillation_probe(spec, alpha, forcing, [cylinder], inputs['points'], request.seed)
        values.append(value)
        report.add_row(b, value)
    response.add_report(report)
    drift = _drift(values)
    response.check('oscillation drift', drift < inputs['max_drift'], 'drift {:.3g}'.format(drift))


BMO_PROBE = Experiment(
    _bmo_probe, 'bmo-probe', 'Mean oscillation of phi.Delta u for a bounded forcing',
    abstract='f = tanh(steepness x_1); cylinders of size b = 2^-k T / 2 ending at T, centred at x = 0.',
    inputs=[
        LiteralInput('experiment.levels', 'k', data_type='nonNegativeInteger', default='4'),
        LiteralInput('experiment.points', 'Sample points per cylinder', data_type='positiveInteger',
                     default='10000'),
        _positive('experiment.steepness', 'Steepness of the forcing', '4.0'),
        _positive('experiment.max_drift', 'Allowed max / min of the oscillations', '2.0'),
    ],
    reports=[('bmo-probe', 'b, oscillation')])


# regularity-probe

def _regularity_probe(request, response):
    spec, alpha = request.spec, request.alpha
    inputs = request.inputs
    template = request.grid(request.T)
    time_grid = request.time_grid()
    rng = np.random.default_rng(request.seed)
    report = CsvReport(['forcing', 'lambda', 'ratio'], 'regularity-probe')
    ratios = []
    for index in range(inputs['forcings']):
        space = band_limited(template, rng, inputs['cutoff']).values
        modes = rng.standard_normal(3)
        for lam in _dyadic(inputs['dilations']):
            s = lam * time_grid.nodes / time_grid.T
            profile = modes[0] + modes[1] * np.cos(math.pi * s) + modes[2] * np.sin(math.pi * s)
            f = solver.SpaceTimeField(time_grid, template, profile.reshape((-1,) + (1,) * template.ndim) * space)
            ratio = solver.regularity_probe(spec, alpha, f, check=False)
            ratios.append(ratio)
            report.add_row(index + 1, lam, ratio)
    response.add_report(report)
    drift = _drift(ratios)
    response.check('regularity drift', drift < inputs['max_drift'], 'drift {:.3g}'.format(drift))


REGULARITY_PROBE = Experiment(
    _regularity_probe, 'regularity-probe', 'Maximal regularity ratio for random forcings',
    abstract='||phi.Delta G_0 f|| / ||f|| in L_2(L_2) for band-limited forcings with dilated time profiles.',
    inputs=[
        LiteralInput('experiment.forcings', 'Number of forcings', data_type='positiveInteger', default='20'),
        LiteralInput('experiment.dilations', 'k, time dilations 2^-k..2^k', data_type='nonNegativeInteger',
                     default='2'),
        LiteralInput('experiment.cutoff', 'Band limit as a fraction of Nyquist', data_type='float',
                     allowed_values=[(0.0, 1.0, RANGECLOSURETYPE.OPENCLOSED)], default='0.25'),
        _positive('experiment.max_drift', 'Allowed max / min of the ratios', '3.0'),
    ],
    reports=[('regularity-probe', 'forcing, lambda, ratio')])


EXPERIMENTS = [KERNEL_TABLE, VERIFY_BOUNDS, MASS_SCAN, SOLVE, RESIDUAL, MC_COMPARE, NORMS, TRACE_PROBE,
               BMO_PROBE, REGULARITY_PROBE]
