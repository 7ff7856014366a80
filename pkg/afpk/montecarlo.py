##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Monte Carlo simulation of the time-changed subordinate Brownian array

The endpoint X_{R_t} is drawn in three stages: one inverse stable time
R_t = (t / Q)^alpha shared by all blocks, one subordinator value per block
S_i = b_i R + sum_j (c_ij R)^{1/beta_ij} Q^{(beta_ij)}, and a Gaussian with
covariance 2 S_i per block (E exp(i xi B_s) = exp(-s |xi|^2)).

Streams are spawned from ``numpy.random.SeedSequence(seed)`` once per chunk
of paths, so results only depend on seed, chunk size and path count.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import stats

from afpk import subordination
from afpk.exceptions import InsufficientSamples, InvalidParameterValue

LOGGER = logging.getLogger('AFPK')

MIN_SAMPLES = 1000
DEFAULT_CHUNK = 4096
CHI2_BINS = 64
MIN_EXPECTED = 5.0


class SamplerConfig(namedtuple('SamplerConfig', 'spec alpha t n_paths seed chunk')):
    """Endpoint sampler settings

    :param spec: :class:`afpk.operator.OperatorSpec`
    :param alpha: time order in (0, 1]
    :param t: time, positive
    :param n_paths: number of endpoints
    :param seed: root seed of the stream tree
    :param chunk: paths per spawned stream
    """
    __slots__ = ()

    def __new__(cls, spec, alpha, t, n_paths, seed=0, chunk=DEFAULT_CHUNK):
        alpha = float(alpha)
        t = float(t)
        if not 0 < alpha <= 1:
            raise InvalidParameterValue('alpha must lie in (0, 1], got {}'.format(alpha), 'alpha')
        if not t > 0:
            raise InvalidParameterValue('t must be positive, got {}'.format(t), 't')
        if int(n_paths) < 1:
            raise InvalidParameterValue('Need at least one path, got {}'.format(n_paths), 'n_paths')
        if int(chunk) < 1:
            raise InvalidParameterValue('Chunk size must be positive, got {}'.format(chunk), 'chunk')
        return super(SamplerConfig, cls).__new__(cls, spec, alpha, t, int(n_paths), int(seed), int(chunk))

    @property
    def n_chunks(self):
        return -(-self.n_paths // self.chunk)


def _check_index(alpha):
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise InvalidParameterValue('Stable index must lie in (0, 1], got {}'.format(alpha), 'alpha')
    return alpha


def sample_stable_array(alpha, rng, size):
    """Chambers-Mallows-Stuck draws of Q with E exp(-lam Q) = exp(-lam^alpha)

        Q = sin(alpha U) / sin(U)^{1/alpha} * (sin((1 - alpha) U) / E)^{(1 - alpha)/alpha}

    with U uniform on (0, pi) and E standard exponential; alpha = 1 gives Q = 1.
    """

    alpha = _check_index(alpha)
    if alpha == 1:
        return np.ones(size)
    u = rng.uniform(0.0, math.pi, size)
    e = rng.standard_exponential(size)
    return (np.sin(alpha * u) / np.sin(u) ** (1.0 / alpha) *
            (np.sin((1.0 - alpha) * u) / e) ** ((1.0 - alpha) / alpha))


def sample_stable(alpha, rng):
    """Single draw of :func:`sample_stable_array`"""
    return float(sample_stable_array(alpha, rng, 1)[0])


def empirical_laplace(samples, lam):
    """Mean of exp(-lam Q) and its standard error"""

    values = np.exp(-float(lam) * np.asarray(samples))
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def _draw(config, rng, n):
    """n endpoints, shape (n, d)"""

    if config.alpha < 1:
        time = (config.t / sample_stable_array(config.alpha, rng, n)) ** config.alpha
    else:
        time = np.full(n, config.t)
    parts = []
    for block in config.spec.blocks:
        clock = np.zeros(n)
        for coef, beta in block.phi.monomials():
            if beta == 1:
                clock += coef * time
            else:
                clock += (coef * time) ** (1.0 / beta) * sample_stable_array(beta, rng, n)
        parts.append(np.sqrt(2.0 * clock)[:, None] * rng.standard_normal((n, block.dim)))
    return np.concatenate(parts, axis=1)


def sample_endpoint(config, rng):
    """One endpoint X_{R_t} drawn from rng, shape (d,)"""
    return _draw(config, rng, 1)[0]


def chunk_streams(config):
    """One Philox generator per chunk, spawned from the root seed"""
    children = np.random.SeedSequence(config.seed).spawn(config.n_chunks)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def _chunk_job(args):
    config, index, rng = args
    start = index * config.chunk
    return _draw(config, rng, min(config.chunk, config.n_paths - start))


def sample_endpoints(config, mapper=map):
    """config.n_paths endpoints, shape (n_paths, d)

    :param mapper: map-like callable used to run the chunks, for example the
                   ``map`` of a :class:`afpk.processing.Processing`
    """

    jobs = [(config, index, rng) for index, rng in enumerate(chunk_streams(config))]
    chunks = list(mapper(_chunk_job, jobs))
    LOGGER.debug('Drew {} endpoints in {} chunks'.format(config.n_paths, len(chunks)))
    return np.concatenate(chunks, axis=0)


def analytic_covariance(spec, alpha, t, first=0, second=1):
    """Cov(|x_first|^2, |x_second|^2) for two Brownian blocks phi_i = b_i lambda

    Conditionally on R both squared norms have mean 2 b_i d_i R, hence the
    covariance 4 b_1 b_2 d_1 d_2 Var(R).
    """

    product = 4.0
    for index in (first, second):
        block = spec.blocks[index]
        monos = block.phi.monomials()
        if len(monos) != 1 or monos[0][1] != 1:
            raise InvalidParameterValue('Block {} is not Brownian, second moments diverge'.format(index + 1),
                                        'spec')
        product *= monos[0][0] * block.dim
    if alpha == 1:
        return 0.0
    params = subordination.SubordinationParams(alpha)
    variance = subordination.moment(params, t, 2) - subordination.moment(params, t, 1) ** 2
    return product * variance


DensityDistance = namedtuple('DensityDistance', 'ks chi2_p axis_ks axis_chi2_p clipped')


def marginal_cdf(field, axis):
    """Cell edges and CDF of the normalized axis marginal of a density field"""

    others = tuple(a for a in range(field.ndim) if a != axis)
    density = np.clip(np.asarray(field.values, dtype=float), 0.0, None)
    marginal = density.sum(axis=others) if others else density
    mass = np.cumsum(marginal)
    cdf = np.concatenate([[0.0], mass / mass[-1]])
    spacing = field.spacings[axis]
    edges = np.append(field.coordinates(axis) - spacing / 2.0, field.coordinates(axis)[-1] + spacing / 2.0)
    return edges, cdf


def _merged_bins(expected, observed):
    """Merge neighbouring bins until every expected count reaches MIN_EXPECTED"""

    exp_out, obs_out = [], []
    e_acc = o_acc = 0.0
    for e, o in zip(expected, observed):
        e_acc += e
        o_acc += o
        if e_acc >= MIN_EXPECTED:
            exp_out.append(e_acc)
            obs_out.append(o_acc)
            e_acc = o_acc = 0.0
    if e_acc > 0 and exp_out:
        exp_out[-1] += e_acc
        obs_out[-1] += o_acc
    return np.array(exp_out), np.array(obs_out)


def density_distance(samples, analytic_field, n_bins=CHI2_BINS):
    """Per-marginal Kolmogorov-Smirnov distance and chi-square p-value of
    samples against a density sampled on a grid

    Samples outside the box are dropped and reported as ``clipped``.

    :returns: :class:`DensityDistance` with the largest distance and the
              smallest p-value over the axes
    :raises InsufficientSamples: below MIN_SAMPLES samples in the box
    """

    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    if samples.shape[1] != analytic_field.ndim:
        raise InvalidParameterValue('Samples have {} coordinates, field has {}'.format(
            samples.shape[1], analytic_field.ndim), 'samples')
    inside = np.ones(samples.shape[0], dtype=bool)
    for axis in range(analytic_field.ndim):
        half = analytic_field.half_widths[axis]
        inside &= np.abs(samples[:, axis]) < half - analytic_field.spacings[axis] / 2.0
    clipped = 1.0 - inside.mean()
    if clipped > 0.01:
        LOGGER.warning('{:.2%} of the samples lie outside the box'.format(clipped))
    samples = samples[inside]
    if samples.shape[0] < MIN_SAMPLES:
        raise InsufficientSamples('Need {} samples in the box, got {}'.format(MIN_SAMPLES, samples.shape[0]),
                                  'samples')

    axis_ks, axis_p = [], []
    for axis in range(analytic_field.ndim):
        edges, cdf = marginal_cdf(analytic_field, axis)

        def field_cdf(x, edges=edges, cdf=cdf):
            return np.interp(x, edges, cdf)

        axis_ks.append(float(stats.kstest(samples[:, axis], field_cdf).statistic))

        bins = np.linspace(edges[0], edges[-1], n_bins + 1)
        observed, _ = np.histogram(samples[:, axis], bins=bins)
        expected = np.diff(field_cdf(bins)) * samples.shape[0]
        expected, observed = _merged_bins(expected, observed.astype(float))
        expected *= observed.sum() / expected.sum()
        axis_p.append(float(stats.chisquare(observed, expected).pvalue))
    LOGGER.info('KS distances {} chi-square p-values {}'.format(axis_ks, axis_p))
    return DensityDistance(max(axis_ks), min(axis_p), tuple(axis_ks), tuple(axis_p), float(clipped))
