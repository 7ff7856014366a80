##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

import sys
import unittest

from tests import test_bernstein
from tests import test_cli
from tests import test_configuration
from tests import test_dblog
from tests import test_exceptions
from tests import test_experiments
from tests import test_formats
from tests import test_fraccalc
from tests import test_inout
from tests import test_kernel
from tests import test_literaltypes
from tests import test_montecarlo
from tests import test_operator
from tests import test_processing
from tests import test_solver
from tests import test_special
from tests import test_spectral
from tests import test_subordination
from tests.validator import test_literalvalidators


def load_tests(loader=None, tests=None, pattern=None):
    """Load tests
    """

    return unittest.TestSuite([
        test_exceptions.load_tests(),
        test_configuration.load_tests(),
        test_literaltypes.load_tests(),
        test_literalvalidators.load_tests(),
        test_formats.load_tests(),
        test_inout.load_tests(),
        test_dblog.load_tests(),
        test_processing.load_tests(),
        test_bernstein.load_tests(),
        test_special.load_tests(),
        test_subordination.load_tests(),
        test_operator.load_tests(),
        test_fraccalc.load_tests(),
        test_spectral.load_tests(),
        test_kernel.load_tests(),
        test_solver.load_tests(),
        test_montecarlo.load_tests(),
        test_experiments.load_tests(),
        test_cli.load_tests(),
    ])


if __name__ == "__main__":
    result = unittest.TextTestRunner(verbosity=2).run(load_tests())
    if not result.wasSuccessful():
        sys.exit(1)
