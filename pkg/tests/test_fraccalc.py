##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for fractional integrals and derivatives on uniform grids
"""

import math
import unittest

import numpy as np

from afpk import fraccalc
from afpk.exceptions import InvalidParameterValue
from afpk.fraccalc import TimeGrid, TimeSeries


class TimeGridTest(unittest.TestCase):
    """TimeGrid and TimeSeries"""

    def test_uniform(self):
        """n steps on [0, T]"""
        grid = TimeGrid.uniform(2.0, 8)
        self.assertAlmostEqual(grid.h, 0.25)
        self.assertAlmostEqual(grid.T, 2.0)
        self.assertEqual(grid.nodes.size, 9)
        self.assertEqual(grid.refine().n, 16)

    def test_invalid(self):
        """Degenerate grids"""
        with self.assertRaises(InvalidParameterValue):
            TimeGrid(0.0, 4)
        with self.assertRaises(InvalidParameterValue):
            TimeGrid(0.1, 1)

    def test_series_length(self):
        """Values must match the nodes"""
        with self.assertRaises(InvalidParameterValue):
            TimeSeries(TimeGrid.uniform(1.0, 4), np.zeros(4))


class IntegralTest(unittest.TestCase):
    """Riemann-Liouville integral"""

    def test_linear_exact(self):
        """Product integration is exact on linear data"""
        grid = TimeGrid.uniform(1.0, 16)
        t = grid.nodes
        result = fraccalc.fractional_integral(TimeSeries(grid, 1.0 + 2.0 * t), 0.3)
        expected = t ** 0.3 / math.gamma(1.3) + 2.0 * t ** 1.3 / math.gamma(2.3)
        np.testing.assert_allclose(result.values, expected, rtol=1e-12, atol=1e-14)

    def test_semigroup_on_cubic(self):
        """I^1/2 I^1/2 = I^1 on t^3 with error below 5 h^2"""
        for n in (16, 32, 64):
            grid = TimeGrid.uniform(1.0, n)
            series = TimeSeries.sample(grid, lambda t: t ** 3)
            half = fraccalc.fractional_integral(series, 0.5)
            twice = fraccalc.fractional_integral(half, 0.5)
            error = np.max(np.abs(twice.values - grid.nodes ** 4 / 4.0))
            self.assertLessEqual(error, 5.0 * grid.h ** 2)

    def test_zero_order(self):
        """I^0 is the identity"""
        grid = TimeGrid.uniform(1.0, 4)
        series = TimeSeries.sample(grid, np.sin)
        np.testing.assert_array_equal(fraccalc.fractional_integral(series, 0.0).values, series.values)

    def test_negative_order(self):
        """Negative orders are rejected"""
        grid = TimeGrid.uniform(1.0, 4)
        with self.assertRaises(InvalidParameterValue):
            fraccalc.fractional_integral(TimeSeries.sample(grid, np.sin), -0.5)


class DerivativeTest(unittest.TestCase):
    """Caputo and Riemann-Liouville derivatives"""

    def test_caputo_linear(self):
        """L1 is exact on t"""
        grid = TimeGrid.uniform(1.0, 32)
        result = fraccalc.caputo_derivative(TimeSeries.sample(grid, lambda t: t), 0.5)
        np.testing.assert_allclose(result.values, np.sqrt(grid.nodes) / math.gamma(1.5), rtol=1e-12, atol=1e-14)

    def test_caputo_order(self):
        """Observed order of the L1 scheme on t^2 is 2 - alpha"""
        errors = []
        for n in (512, 1024):
            grid = TimeGrid.uniform(1.0, n)
            result = fraccalc.caputo_derivative(TimeSeries.sample(grid, lambda t: t ** 2), 0.5)
            exact = 2.0 * grid.nodes ** 1.5 / math.gamma(2.5)
            errors.append(np.max(np.abs(result.values - exact)))
        self.assertGreaterEqual(math.log2(errors[0] / errors[1]), 1.45)

    def test_caputo_constant(self):
        """Constants have zero derivative"""
        grid = TimeGrid.uniform(1.0, 8)
        result = fraccalc.caputo_derivative(TimeSeries(grid, np.full(9, 3.0)), 0.7)
        np.testing.assert_allclose(result.values, 0.0, atol=1e-14)

    def test_caputo_unit_order(self):
        """alpha = 1 is the ordinary derivative"""
        grid = TimeGrid.uniform(1.0, 10)
        result = fraccalc.caputo_derivative(TimeSeries.sample(grid, lambda t: t ** 2), 1.0)
        np.testing.assert_allclose(result.values, 2.0 * grid.nodes, atol=1e-12)

    def test_caputo_fields(self):
        """Values with spatial axes are differentiated per point"""
        grid = TimeGrid.uniform(1.0, 16)
        t = grid.nodes[:, None, None]
        values = t * np.arange(6.0).reshape(1, 3, 2)
        result = fraccalc.caputo_derivative(TimeSeries(grid, values), 0.5)
        self.assertEqual(result.values.shape, values.shape)
        np.testing.assert_allclose(result.values[:, 2, 1], 5.0 * np.sqrt(grid.nodes) / math.gamma(1.5), rtol=1e-12)

    def test_rl_constant(self):
        """D^1/2 1 = t^-1/2 / Gamma(1/2) away from the origin"""
        grid = TimeGrid.uniform(1.0, 256)
        result = fraccalc.rl_derivative(TimeSeries(grid, np.ones(257)), 0.5)
        inner = grid.nodes >= 0.25
        np.testing.assert_allclose(result.values[inner], 1.0 / np.sqrt(math.pi * grid.nodes[inner]), rtol=1e-3)

    def test_order_range(self):
        """Derivative orders above one are rejected"""
        grid = TimeGrid.uniform(1.0, 4)
        with self.assertRaises(InvalidParameterValue):
            fraccalc.caputo_derivative(TimeSeries.sample(grid, np.sin), 1.5)


def load_tests(loader=None, tests=None, pattern=None):
    """Load local tests
    """
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(TimeGridTest),
        loader.loadTestsFromTestCase(IntegralTest),
        loader.loadTestsFromTestCase(DerivativeTest),
    ]
    return unittest.TestSuite(suite_list)
