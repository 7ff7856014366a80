##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

from collections import namedtuple

_RUN_STATUS = namedtuple('RunStatus', ['UNKNOWN', 'ACCEPTED', 'STARTED', 'SUCCEEDED', 'REJECTED', 'FAILED'])
RUN_STATUS = _RUN_STATUS(0, 1, 2, 3, 4, 5)
