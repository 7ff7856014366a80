##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Allowed value kinds and range closures shared by literal inputs and
their validators
"""

import math
import operator
from collections import namedtuple

_ALLOWEDVALUETYPE = namedtuple('ALLOWEDVALUETYPE', 'VALUE, RANGE')
_RANGECLOSURETYPE = namedtuple('RANGECLOSURETYPE', 'OPEN, CLOSED, OPENCLOSED, CLOSEDOPEN')

ALLOWEDVALUETYPE = _ALLOWEDVALUETYPE('value', 'range')
RANGECLOSURETYPE = _RANGECLOSURETYPE('open', 'closed', 'open-closed', 'closed-open')

# closure -> (lower comparison, upper comparison)
_COMPARISONS = {
    RANGECLOSURETYPE.OPEN: (operator.lt, operator.lt),
    RANGECLOSURETYPE.CLOSED: (operator.le, operator.le),
    RANGECLOSURETYPE.OPENCLOSED: (operator.lt, operator.le),
    RANGECLOSURETYPE.CLOSEDOPEN: (operator.le, operator.lt),
}


def in_range(minval, maxval, closure, data):
    """True if data lies in the interval, None bounds are unbounded"""

    lower = -math.inf if minval is None else minval
    upper = math.inf if maxval is None else maxval
    below, above = _COMPARISONS.get(closure, _COMPARISONS[RANGECLOSURETYPE.CLOSEDOPEN])
    return below(lower, data) and above(data, upper)
