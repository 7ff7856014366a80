##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""
AFPK exceptions

Every exception carries the exit code the command line front end returns
when it escapes a run: 2 for configuration and parameter errors, 3 for a
failed acceptance gate, 4 for numerical or internal failures.
"""

import logging

LOGGER = logging.getLogger('AFPK')

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCEPTANCE = 3
EXIT_INTERNAL = 4


class AfpkException(Exception):
    """Base exception class
    """

    code = EXIT_INTERNAL
    locator = ""

    def __init__(self, description, locator="", code=None):
        if code is not None:
            self.code = code
        self.description = description
        self.locator = locator
        msg = 'Exception: code: {}, description: {}, locator: {}'.format(self.code, self.description, self.locator)
        LOGGER.debug(msg)

        Exception.__init__(self, description)

    @property
    def name(self):
        """The exception name."""
        return self.__class__.__name__

    def __str__(self):
        if self.locator:
            return '{}: {} ({})'.format(self.name, self.description, self.locator)
        return '{}: {}'.format(self.name, self.description)


class ConfigurationError(AfpkException):
    """Malformed or unreadable configuration
    """
    code = EXIT_CONFIG


class InvalidParameterValue(AfpkException):
    """Invalid parameter value exception implementation
    """
    code = EXIT_CONFIG


class MissingParameterValue(AfpkException):
    """Missing parameter value exception implementation
    """
    code = EXIT_CONFIG


class UnsupportedDimension(InvalidParameterValue):
    """Block dimension outside 1..3
    """


class GridTooCoarse(AfpkException):
    """Richardson check between two refinements failed
    """
    code = EXIT_INTERNAL


class NonConvergence(AfpkException):
    """Iteration or quadrature did not reach its tolerance
    """
    code = EXIT_INTERNAL


class StepSizeRejected(AfpkException):
    """Half-step comparison of a time integrator exceeded tolerance
    """
    code = EXIT_INTERNAL


class InsufficientSamples(AfpkException):
    """Too few samples for a statistical comparison
    """
    code = EXIT_INTERNAL


class EmptyCylinder(AfpkException):
    """Cylinder has no volume or lies outside the computational box
    """
    code = EXIT_INTERNAL


class AcceptanceFailure(AfpkException):
    """A probe exceeded its acceptance tolerance
    """
    code = EXIT_ACCEPTANCE
