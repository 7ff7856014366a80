##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

""" Validator functions used for LiteralInputs
"""
import logging
import math

from afpk.inout.literaltypes import AnyValue
from afpk.validator.mode import MODE
from afpk.validator.allowed_value import ALLOWEDVALUETYPE, in_range


LOGGER = logging.getLogger('AFPK')


def validate_anyvalue(data_input, mode):
    """Any value is valid, STRICT mode still rejects nan and inf
    """

    if mode >= MODE.STRICT:
        return _finite(data_input.data)
    return True


def validate_allowed_values(data_input, mode):
    """Validate allowed values
    """

    passed = False
    if mode == MODE.NONE:
        passed = True
    else:
        data = data_input.data

        LOGGER.debug('validating allowed values: {} in {}'.format(data, data_input.allowed_values))
        values = data if isinstance(data, (list, tuple)) else [data]
        passed = all(_allowed(data_input.allowed_values, item) for item in values)
        if passed and mode >= MODE.STRICT:
            passed = all(_finite(item) for item in values)

    LOGGER.debug('validation result: {}'.format(passed))
    return passed


def _finite(data):
    items = data if isinstance(data, (list, tuple)) else [data]
    return all(not isinstance(item, float) or math.isfinite(item) for item in items)


def _allowed(allowed_values, data):
    passed = False
    for value in allowed_values:

        if isinstance(value, AnyValue):
            passed = True

        elif value.allowed_type == ALLOWEDVALUETYPE.VALUE:
            passed = _validate_value(value, data)

        elif value.allowed_type == ALLOWEDVALUETYPE.RANGE:
            passed = _validate_range(value, data)

        if passed is True:
            break
    return passed


def _validate_value(value, data):
    """Validate data against given value directly

    :param value: allowed value
    :param data: the data itself (string or number)
    """

    passed = False
    if data == value.value:
        passed = True

    return passed


def _validate_range(interval, data):
    """Validate data against given range, None bounds are unbounded
    """

    LOGGER.debug('validating range: {} in {}'.format(data, interval))
    if isinstance(data, str):
        return False
    passed = in_range(interval.minval, interval.maxval, interval.range_closure, data)

    LOGGER.debug('validation result: {}'.format(passed))
    return passed
