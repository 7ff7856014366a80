##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for the Monte Carlo sampler and the distribution comparison
"""

import math
import unittest

import numpy as np

from afpk import montecarlo
from afpk.bernstein import BernsteinSpec
from afpk.exceptions import InsufficientSamples, InvalidParameterValue
from afpk.montecarlo import SamplerConfig
from afpk.operator import OperatorSpec
from afpk.spectral import ScalarField

BROWNIAN = OperatorSpec.single(BernsteinSpec.brownian())
TWO_BROWNIAN = OperatorSpec([(1, BernsteinSpec.brownian()), (1, BernsteinSpec.brownian())])


def normal_field(variance, size=512, half_width=12.0):
    return ScalarField.from_function(BROWNIAN, [size], [half_width],
                                     lambda x: np.exp(-x ** 2 / (2.0 * variance)) / math.sqrt(2.0 * math.pi * variance))


class StableSamplerTest(unittest.TestCase):
    """Chambers-Mallows-Stuck draws"""

    def test_laplace_transform(self):
        """E exp(-lam Q) = exp(-lam^alpha) within four standard errors"""
        rng = np.random.default_rng(12345)
        for alpha in (0.3, 0.5, 0.8):
            samples = montecarlo.sample_stable_array(alpha, rng, 200000)
            self.assertTrue(np.all(samples > 0))
            for lam in (0.5, 1.0, 2.0):
                mean, error = montecarlo.empirical_laplace(samples, lam)
                self.assertLess(abs(mean - math.exp(-lam ** alpha)), 4.0 * error)

    def test_unit_index(self):
        """alpha = 1 is the constant one"""
        rng = np.random.default_rng(1)
        np.testing.assert_array_equal(montecarlo.sample_stable_array(1.0, rng, 5), np.ones(5))
        self.assertEqual(montecarlo.sample_stable(1.0, rng), 1.0)

    def test_invalid_index(self):
        """Index in (0, 1]"""
        with self.assertRaises(InvalidParameterValue):
            montecarlo.sample_stable_array(1.5, np.random.default_rng(0), 3)


class SamplerConfigTest(unittest.TestCase):
    """Sampler settings"""

    def test_chunks(self):
        """Ceiling of paths over chunk"""
        self.assertEqual(SamplerConfig(BROWNIAN, 0.5, 1.0, 10, chunk=4).n_chunks, 3)
        self.assertEqual(SamplerConfig(BROWNIAN, 0.5, 1.0, 8, chunk=4).n_chunks, 2)

    def test_invalid(self):
        """Order, time, paths and chunk size"""
        for kwargs in ({'alpha': 0.0}, {'t': -1.0}, {'n_paths': 0}, {'chunk': 0}):
            arguments = {'spec': BROWNIAN, 'alpha': 0.5, 't': 1.0, 'n_paths': 10}
            arguments.update(kwargs)
            with self.assertRaises(InvalidParameterValue):
                SamplerConfig(**arguments)


class EndpointTest(unittest.TestCase):
    """Endpoints of the time-changed process"""

    def test_deterministic(self):
        """Same seed and chunk size, same endpoints"""
        config = SamplerConfig(TWO_BROWNIAN, 0.5, 1.0, 1000, seed=42, chunk=256)
        first = montecarlo.sample_endpoints(config)
        second = montecarlo.sample_endpoints(config)
        self.assertEqual(first.shape, (1000, 2))
        np.testing.assert_array_equal(first, second)
        other = montecarlo.sample_endpoints(config._replace(seed=43))
        self.assertFalse(np.array_equal(first, other))

    def test_single_endpoint(self):
        """One draw has the operator dimension"""
        config = SamplerConfig(TWO_BROWNIAN, 0.5, 1.0, 1)
        self.assertEqual(montecarlo.sample_endpoint(config, np.random.default_rng(0)).shape, (2,))

    def test_heat_kernel(self):
        """alpha = 1 and a Brownian block sample N(0, 2 t)"""
        config = SamplerConfig(BROWNIAN, 1.0, 1.0, 20000, seed=7)
        samples = montecarlo.sample_endpoints(config)
        distance = montecarlo.density_distance(samples, normal_field(2.0))
        self.assertLess(distance.ks, 0.02)
        self.assertGreater(distance.chi2_p, 1e-3)
        self.assertEqual(distance.clipped, 0.0)

    def test_block_covariance(self):
        """Cov(|x_1|^2, |x_2|^2) = 4 Var(R_t) for two unit Brownian blocks"""
        expected = montecarlo.analytic_covariance(TWO_BROWNIAN, 0.5, 1.0)
        self.assertAlmostEqual(expected, 4.0 * (2.0 - 4.0 / math.pi), places=12)
        config = SamplerConfig(TWO_BROWNIAN, 0.5, 1.0, 400000, seed=11)
        samples = montecarlo.sample_endpoints(config)
        estimate = np.cov(samples[:, 0] ** 2, samples[:, 1] ** 2)[0, 1]
        self.assertLess(abs(estimate - expected), 0.1 * expected)

    def test_covariance_special_cases(self):
        """Independent blocks for alpha = 1, no second moments for stable blocks"""
        self.assertEqual(montecarlo.analytic_covariance(TWO_BROWNIAN, 1.0, 1.0), 0.0)
        mixed = OperatorSpec([(1, BernsteinSpec.brownian()), (1, BernsteinSpec.power(0.5))])
        with self.assertRaises(InvalidParameterValue):
            montecarlo.analytic_covariance(mixed, 0.5, 1.0)


class DensityDistanceTest(unittest.TestCase):
    """Samples against a gridded density"""

    def test_matching(self):
        """Standard normal samples against the standard normal density"""
        samples = np.random.default_rng(5).standard_normal(20000)
        distance = montecarlo.density_distance(samples, normal_field(1.0))
        self.assertLess(distance.ks, 0.02)
        self.assertEqual(len(distance.axis_ks), 1)

    def test_mismatch(self):
        """Wrong variance is detected"""
        samples = 2.0 * np.random.default_rng(5).standard_normal(20000)
        distance = montecarlo.density_distance(samples, normal_field(1.0))
        self.assertGreater(distance.ks, 0.1)
        self.assertLess(distance.chi2_p, 1e-6)

    def test_too_few_samples(self):
        """Below the minimum in the box"""
        samples = np.random.default_rng(5).standard_normal(500)
        with self.assertRaises(InsufficientSamples):
            montecarlo.density_distance(samples, normal_field(1.0))

    def test_clipped(self):
        """Samples outside the box are dropped and counted"""
        samples = np.append(np.random.default_rng(5).standard_normal(2000), [50.0] * 20)
        distance = montecarlo.density_distance(samples, normal_field(1.0))
        self.assertAlmostEqual(distance.clipped, 20.0 / 2020.0)

    def test_dimension_mismatch(self):
        """Sample coordinates must match the field"""
        with self.assertRaises(InvalidParameterValue):
            montecarlo.density_distance(np.zeros((2000, 2)), normal_field(1.0))

    def test_marginal_cdf(self):
        """Monotone from zero to one"""
        edges, cdf = montecarlo.marginal_cdf(normal_field(1.0), 0)
        self.assertEqual(edges.size, cdf.size)
        self.assertEqual(cdf[0], 0.0)
        self.assertAlmostEqual(cdf[-1], 1.0)
        self.assertTrue(np.all(np.diff(cdf) >= 0))


def load_tests(loader=None, tests=None, pattern=None):
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(StableSamplerTest),
        loader.loadTestsFromTestCase(SamplerConfigTest),
        loader.loadTestsFromTestCase(EndpointTest),
        loader.loadTestsFromTestCase(DensityDistanceTest),
    ]
    return unittest.TestSuite(suite_list)
