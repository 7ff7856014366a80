##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

from afpk.app.Experiment import Experiment, ExperimentRequest, ExperimentResponse  # noqa: F401
from afpk.app.Runner import Runner  # noqa: F401
