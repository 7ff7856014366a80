##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for fields, multipliers and Littlewood-Paley norms
"""

import unittest

import numpy as np

from afpk import spectral
from afpk.bernstein import BernsteinSpec
from afpk.exceptions import InvalidParameterValue
from afpk.experiments import band_limited
from afpk.operator import OperatorSpec
from afpk.spectral import WINDOW, ScalarField


def gaussian_field(spec, size=128, half_width=10.0):
    dims = spec.total_dim
    return ScalarField.from_function(spec, [size] * dims, [half_width] * dims,
                                     lambda *x: np.exp(-sum(xi ** 2 for xi in x)))


class ScalarFieldTest(unittest.TestCase):
    """Grid layout"""

    def setUp(self):
        self.spec = OperatorSpec.single(BernsteinSpec.brownian())

    def test_coordinates(self):
        """x = 0 sits at index N/2"""
        field = ScalarField.centered(self.spec, [8], [4.0])
        np.testing.assert_allclose(field.coordinates(0), np.arange(-4.0, 4.0))
        self.assertEqual(field.half_widths, (4.0,))
        self.assertAlmostEqual(field.cell_volume, 1.0)

    def test_power_of_two(self):
        """Sizes must be powers of two"""
        with self.assertRaises(InvalidParameterValue):
            ScalarField.centered(self.spec, [12], [1.0])

    def test_dimension_mismatch(self):
        """Axes must match the operator"""
        with self.assertRaises(InvalidParameterValue):
            ScalarField.centered(self.spec, [8, 8], [1.0, 1.0])

    def test_spectral_roundtrip(self):
        """FFT there and back"""
        field = gaussian_field(self.spec)
        back = field.from_spectral(field.to_spectral())
        np.testing.assert_allclose(back.values, field.values, atol=1e-14)
        self.assertAlmostEqual(field.integral(), np.sqrt(np.pi), places=10)

    def test_boundary_max(self):
        """Largest value on the faces"""
        field = ScalarField.centered(self.spec, [8], [4.0], np.arange(8.0))
        self.assertEqual(field.boundary_max(), 7.0)


class MultiplierTest(unittest.TestCase):
    """Fourier multipliers"""

    def test_laplacian(self):
        """phi(l) = l gives the Laplacian"""
        spec = OperatorSpec.single(BernsteinSpec.brownian())
        field = gaussian_field(spec)
        x = field.coordinates(0)
        expected = (4.0 * x ** 2 - 2.0) * np.exp(-x ** 2)
        np.testing.assert_allclose(spectral.apply_generator(spec, field).values, expected, atol=1e-10)

    def test_derivative(self):
        """First derivative"""
        spec = OperatorSpec.single(BernsteinSpec.brownian())
        field = gaussian_field(spec)
        x = field.coordinates(0)
        np.testing.assert_allclose(spectral.apply_derivative(field, [1]).values, -2.0 * x * np.exp(-x ** 2),
                                   atol=1e-10)

    def test_component_generators(self):
        """Block generators add up to the full generator"""
        spec = OperatorSpec([(1, BernsteinSpec.power(0.5)), (1, BernsteinSpec.brownian())])
        field = gaussian_field(spec, size=64)
        total = spectral.apply_generator(spec, field).values
        parts = sum(spectral.apply_component_generator(spec, field, i).values for i in range(2))
        np.testing.assert_allclose(parts, total, atol=1e-12)

    def test_bessel_identity(self):
        """gamma = 0 copies the field"""
        spec = OperatorSpec.single(BernsteinSpec.power(0.5))
        field = gaussian_field(spec)
        result = spectral.apply_bessel_multiplier(field, 0.0)
        np.testing.assert_array_equal(result.values, field.values)
        self.assertIsNot(result.values, field.values)


class LittlewoodPaleyTest(unittest.TestCase):
    """Window, decomposition and norms"""

    def setUp(self):
        self.spec = OperatorSpec([(1, BernsteinSpec.power(0.5)), (1, BernsteinSpec.brownian())])
        self.template = ScalarField.centered(self.spec, [64, 64], [8.0, 8.0])
        self.rng = np.random.default_rng(42)

    def test_partition_of_unity(self):
        """sum_j profile(2^-j l) = 1"""
        lam = np.logspace(-8, 8, 200)
        total = sum(WINDOW.dyadic(j, lam) for j in range(-40, 41))
        np.testing.assert_allclose(total, 1.0, atol=1e-12)

    def test_window_support(self):
        """profile lives on [1/2, 2], low on [0, 2]"""
        self.assertEqual(WINDOW.profile(0.4), 0.0)
        self.assertEqual(WINDOW.profile(2.5), 0.0)
        self.assertEqual(WINDOW.low(0.5), 1.0)
        self.assertEqual(WINDOW.low(2.0), 0.0)

    def test_reconstruction(self):
        """S_0 f + sum_j Delta_j f = f"""
        field = band_limited(self.template, self.rng, 0.5)
        pieces = spectral.lp_decompose(self.spec, field)
        total = sum(piece.values for piece in pieces)
        np.testing.assert_allclose(total, field.values, atol=1e-8)

    def test_project(self):
        """lp_project matches the decomposition"""
        field = band_limited(self.template, self.rng, 0.5)
        pieces = spectral.lp_decompose(self.spec, field)
        np.testing.assert_allclose(spectral.lp_project(self.spec, field, 2).values, pieces[2].values, atol=1e-14)
        np.testing.assert_allclose(spectral.lp_project(self.spec, field, 'S0').values, pieces[0].values,
                                   atol=1e-14)

    def test_sobolev_plancherel(self):
        """gamma = 0 is the L_2 norm; p = 2 by Plancherel and by the multiplier agree"""
        field = band_limited(self.template, self.rng)
        self.assertAlmostEqual(spectral.sobolev_norm(field, 0.0), spectral.lp_norm(field), places=10)
        by_multiplier = spectral.lp_norm(spectral.apply_bessel_multiplier(field, 1.5))
        self.assertAlmostEqual(spectral.sobolev_norm(field, 1.5) / by_multiplier, 1.0, places=10)

    def test_besov_sobolev_equivalence(self):
        """p = q = 2 Besov and Sobolev norms within a factor four"""
        for _ in range(10):
            field = band_limited(self.template, self.rng)
            sobolev = spectral.sobolev_norm(field, 1.0)
            besov = spectral.besov_norm(field, 1.0)
            square = spectral.square_function_norm(field, 1.0)
            self.assertTrue(0.25 <= besov / sobolev <= 4.0)
            self.assertTrue(0.25 <= square / sobolev <= 4.0)

    def test_besov_weights(self):
        """Unknown weight and exponents below one"""
        field = band_limited(self.template, self.rng)
        with self.assertRaises(InvalidParameterValue):
            spectral.besov_norm(field, 1.0, weight='uniform')
        with self.assertRaises(InvalidParameterValue):
            spectral.besov_norm(field, 1.0, p=0.5)

    def test_lp_norm(self):
        """Maximum norm and invalid exponents"""
        field = self.template.with_values(np.full((64, 64), -2.0))
        self.assertEqual(spectral.lp_norm(field, np.inf), 2.0)
        with self.assertRaises(InvalidParameterValue):
            spectral.lp_norm(field, 0.5)


def load_tests(loader=None, tests=None, pattern=None):
    """Load local tests
    """
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(ScalarFieldTest),
        loader.loadTestsFromTestCase(MultiplierTest),
        loader.loadTestsFromTestCase(LittlewoodPaleyTest),
    ]
    return unittest.TestSuite(suite_list)
