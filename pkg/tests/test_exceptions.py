##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for exceptions and their exit codes
"""

import unittest

from afpk import exceptions
from afpk.exceptions import (AcceptanceFailure, AfpkException, ConfigurationError, InvalidParameterValue,
                             MissingParameterValue, StepSizeRejected, UnsupportedDimension)


class ExceptionsTest(unittest.TestCase):

    def test_exit_codes(self):
        """Configuration 2, acceptance 3, everything else 4"""
        self.assertEqual(ConfigurationError('x').code, exceptions.EXIT_CONFIG)
        self.assertEqual(MissingParameterValue('x').code, exceptions.EXIT_CONFIG)
        self.assertEqual(InvalidParameterValue('x').code, exceptions.EXIT_CONFIG)
        self.assertEqual(AcceptanceFailure('x').code, exceptions.EXIT_ACCEPTANCE)
        self.assertEqual(StepSizeRejected('x').code, exceptions.EXIT_INTERNAL)
        self.assertEqual(AfpkException('x').code, exceptions.EXIT_INTERNAL)
        self.assertEqual((exceptions.EXIT_CONFIG, exceptions.EXIT_ACCEPTANCE, exceptions.EXIT_INTERNAL), (2, 3, 4))

    def test_code_override(self):
        """Explicit code wins over the class code"""
        self.assertEqual(ConfigurationError('x', code=4).code, 4)
        self.assertEqual(ConfigurationError('x').code, 2)

    def test_message(self):
        """Name, description and locator"""
        error = InvalidParameterValue('alpha must lie in (0, 1]', 'time.alpha')
        self.assertEqual(error.name, 'InvalidParameterValue')
        self.assertEqual(str(error), 'InvalidParameterValue: alpha must lie in (0, 1] (time.alpha)')
        self.assertEqual(str(AfpkException('boom')), 'AfpkException: boom')

    def test_hierarchy(self):
        """Dimension errors are parameter errors"""
        self.assertTrue(issubclass(UnsupportedDimension, InvalidParameterValue))
        self.assertTrue(issubclass(ConfigurationError, AfpkException))


def load_tests(loader=None, tests=None, pattern=None):
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(ExceptionsTest),
    ]
    return unittest.TestSuite(suite_list)
