##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for the Mittag-Leffler function and the stable law
"""

import math
import unittest

import mpmath
import numpy as np
from scipy import special as sp

from afpk import special
from afpk.exceptions import InvalidParameterValue
from afpk.special import MLParams, mittag_leffler


def ml_reference(a, b, z, terms=900, dps=90):
    """Power series in high precision"""
    with mpmath.workdps(dps):
        z = mpmath.mpf(z)
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        return float(mpmath.fsum(z ** k * mpmath.rgamma(a * k + b) for k in range(terms)))


class MittagLefflerTest(unittest.TestCase):
    """E_{a,b} on the negative axis"""

    def test_params(self):
        """Order outside (0, 1] is rejected"""
        with self.assertRaises(InvalidParameterValue):
            MLParams(0.0, 1.0)
        with self.assertRaises(InvalidParameterValue):
            MLParams(1.5, 1.0)

    def test_positive_argument(self):
        """z > 0 is rejected"""
        with self.assertRaises(InvalidParameterValue):
            mittag_leffler(MLParams(0.5, 1.0), 1.0)

    def test_unit_order_is_exp(self):
        """E_{1,1} = exp"""
        z = -np.linspace(0, 50, 101)
        np.testing.assert_allclose(mittag_leffler(MLParams(1.0, 1.0), z), np.exp(z), rtol=0, atol=1e-12)

    def test_unit_order_shifted(self):
        """E_{1,2}(z) = (exp(z) - 1) / z"""
        z = -np.array([0.5, 3.0, 10.0, 40.0])
        np.testing.assert_allclose(mittag_leffler(MLParams(1.0, 2.0), z), np.expm1(z) / z, rtol=1e-12)

    def test_half_order_erfcx(self):
        """E_{1/2,1}(-z) = exp(z^2) erfc(z) on [0, 20]"""
        z = np.linspace(0, 20, 200)
        values = mittag_leffler(MLParams(0.5, 1.0), -z)
        np.testing.assert_allclose(values, sp.erfcx(z), rtol=0, atol=1e-10)

    def test_regimes_against_series(self):
        """Series, contour and asymptotic regimes against high precision sums"""
        cases = [(a, b, x) for a, b in [(0.7, 1.0), (0.7, 0.7), (0.7, 1.7)] for x in [0.5, 3.0, 8.0, 20.0]]
        cases += [(0.3, 1.0, 0.5), (0.3, 1.0, 3.0), (0.3, 0.3, 3.0)]
        for a, b, x in cases:
            expected = ml_reference(a, b, -x)
            value = mittag_leffler(MLParams(a, b), -x)
            self.assertAlmostEqual(value, expected, delta=1e-9 * max(1.0, abs(expected)),
                                   msg="E_{},{}(-{})".format(a, b, x))

    def test_reference_value(self):
        """E_{0.7,1}(-8) to 60 digits is 0.04606999238536238..."""
        expected = 0.04606999238536238
        self.assertAlmostEqual(ml_reference(0.7, 1.0, -8.0), expected, delta=1e-14)
        self.assertAlmostEqual(mittag_leffler(MLParams(0.7, 1.0), -8.0), expected, delta=1e-13)

    def test_forced_methods_agree(self):
        """Contour integral and asymptotic expansion overlap"""
        params = MLParams(0.6, 1.0)
        z = -np.array([15.0, 25.0])
        np.testing.assert_allclose(mittag_leffler(params, z, method='integral'),
                                   mittag_leffler(params, z, method='asymptotic'), rtol=1e-8)

    def test_shape(self):
        """Scalars stay scalars, arrays keep their shape"""
        params = MLParams(0.5, 1.0)
        self.assertIsInstance(mittag_leffler(params, -1.0), float)
        self.assertEqual(mittag_leffler(params, -np.ones((3, 4))).shape, (3, 4))

    def test_unknown_method(self):
        """Unknown method name"""
        with self.assertRaises(InvalidParameterValue):
            mittag_leffler(MLParams(0.5, 1.0), -1.0, method='pade')

    def test_complete_monotonicity(self):
        """E_{a,1}(-x) decreases from 1 for a <= 1"""
        x = np.linspace(0, 30, 121)
        values = mittag_leffler(MLParams(0.8, 1.0), -x)
        self.assertAlmostEqual(values[0], 1.0)
        self.assertTrue(np.all(np.diff(values) < 0))
        self.assertTrue(np.all(values > 0))


class StableLawTest(unittest.TestCase):
    """One-sided stable density"""

    def test_levy_density(self):
        """alpha = 1/2 is the Levy law"""
        s = np.logspace(-1, 3, 40)
        expected = s ** -1.5 * np.exp(-1.0 / (4.0 * s)) / (2.0 * math.sqrt(math.pi))
        np.testing.assert_allclose(special.stable_density(0.5, s), expected, rtol=1e-8)

    def test_levy_cdf(self):
        """alpha = 1/2 distribution function"""
        s = np.logspace(-1, 3, 40)
        np.testing.assert_allclose(special.stable_cdf(0.5, s), sp.erfc(0.5 / np.sqrt(s)), rtol=1e-8, atol=1e-13)

    def test_laplace_transform(self):
        """int exp(-s) g(s) ds = exp(-1)"""
        alpha = 0.7
        u, w = np.polynomial.legendre.leggauss(16)
        # s = exp(v) on unit panels of v in [-12, 6]
        v = (np.arange(-12, 6)[:, None] + 0.5 * (u[None, :] + 1.0)).ravel()
        weights = np.tile(0.5 * w, 18)
        s = np.exp(v)
        value = np.sum(weights * s * np.exp(-s) * special.stable_density(alpha, s))
        self.assertAlmostEqual(value, math.exp(-1.0), places=7)

    def test_invalid_index(self):
        """alpha = 1 has no density"""
        with self.assertRaises(InvalidParameterValue):
            special.stable_density(1.0, 1.0)
        with self.assertRaises(InvalidParameterValue):
            special.stable_density(0.5, 0.0)


def load_tests(loader=None, tests=None, pattern=None):
    """Load local tests
    """
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(MittagLefflerTest),
        loader.loadTestsFromTestCase(StableLawTest),
    ]
    return unittest.TestSuite(suite_list)
