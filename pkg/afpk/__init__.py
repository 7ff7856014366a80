##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

import logging

__version__ = '1.0.0'

LOGGER = logging.getLogger('AFPK')
LOGGER.debug('setting core variables')

from afpk.bernstein import BernsteinSpec  # noqa: E402
from afpk.operator import Block, OperatorSpec  # noqa: E402
from afpk.special import MLParams, mittag_leffler  # noqa: E402
from afpk.subordination import SubordinationParams  # noqa: E402
from afpk.fraccalc import TimeGrid, TimeSeries  # noqa: E402
from afpk.spectral import ScalarField  # noqa: E402
from afpk.kernel import KernelQuery  # noqa: E402
from afpk.solver import CylinderSpec, SpaceTimeField  # noqa: E402
from afpk.montecarlo import SamplerConfig  # noqa: E402

if __name__ == "__main__":
    pass
