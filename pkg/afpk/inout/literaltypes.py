##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Literaltypes are used for LiteralInputs, to make sure configuration values are OK
"""

import logging

from afpk.exceptions import ConfigurationError
from afpk.validator.allowed_value import ALLOWEDVALUETYPE, RANGECLOSURETYPE

LOGGER = logging.getLogger('AFPK')

LITERAL_DATA_TYPES = ('float', 'boolean', 'integer', 'string',
                      'positiveInteger', 'nonNegativeInteger',
                      'powerOfTwo', 'floatList')


class AnyValue(object):
    """Specifies that any value is allowed for this quantity.
    """

    @property
    def value(self):
        return None

    @property
    def json(self):
        return {
            'type': 'anyvalue',
        }

    def __eq__(self, other):
        return isinstance(other, AnyValue) and self.json == other.json


class AllowedValue(object):
    """List of all valid values and/or ranges of values for this quantity.
    The values are evaluated in literal validator functions

    :param afpk.validator.allowed_value.ALLOWEDVALUETYPE allowed_type: VALUE or RANGE
    :param value: single value
    :param minval: minimal value in case of Range, None for unbounded
    :param maxval: maximal value in case of Range, None for unbounded
    :param afpk.validator.allowed_value.RANGECLOSURETYPE range_closure:
    """

    def __init__(self, allowed_type=None, value=None,
                 minval=None, maxval=None,
                 range_closure=RANGECLOSURETYPE.CLOSED):

        self.allowed_type = allowed_type
        self.value = value
        self.minval = minval
        self.maxval = maxval
        self.range_closure = range_closure

        if not self.allowed_type:
            # automatically set allowed_type: RANGE or VALUE
            if self.minval is not None or self.maxval is not None:
                self.allowed_type = ALLOWEDVALUETYPE.RANGE
            else:
                self.allowed_type = ALLOWEDVALUETYPE.VALUE

    def __eq__(self, other):
        return isinstance(other, AllowedValue) and self.json == other.json

    def __repr__(self):
        if self.allowed_type == ALLOWEDVALUETYPE.VALUE:
            return repr(self.value)
        return '{}({}, {})'.format(self.range_closure, self.minval, self.maxval)

    @property
    def json(self):
        return {
            'type': 'allowedvalue',
            'allowed_type': self.allowed_type,
            'value': self.value,
            'minval': self.minval,
            'maxval': self.maxval,
            'range_closure': self.range_closure
        }


ALLOWED_VALUES_TYPES = (AllowedValue, AnyValue)


def get_converter(convertor):
    """function for decoration of convert
    """

    def decorator_selector(data_type, data):
        if data_type not in LITERAL_DATA_TYPES:
            raise ConfigurationError(
                "Invalid data_type value of LiteralInput "
                "set to '{}'".format(data_type))
        try:
            return _CONVERTERS[data_type](data)
        except ValueError:
            raise ConfigurationError(
                "Could not convert value '{}' to format '{}'".format(
                    data, data_type))

    return decorator_selector


@get_converter
def convert(data_type, data):
    """Convert data to target value
    """

    return data_type, data


def convert_boolean(inpt):
    """Return boolean value from input boolean input

    >>> convert_boolean('true')
    True
    >>> convert_boolean('FaLsE')
    False
    >>> convert_boolean(0)
    False
    """

    if isinstance(inpt, bool):
        return inpt
    text = str(inpt).strip().lower()
    if text in ('true', 't', 'yes', '1'):
        return True
    if text in ('false', 'f', 'no', '0'):
        return False
    raise ValueError(inpt)


def convert_float(inpt):
    """Return float value from inpt

    >>> convert_float('1')
    1.0
    """

    return float(inpt)


def convert_integer(inpt):
    """Return integer value from input inpt, rejecting fractions

    >>> convert_integer('12')
    12
    """

    value = float(inpt)
    if not value.is_integer():
        raise ValueError(inpt)
    return int(value)


def convert_string(inpt):
    """Return string value from input lit_input

    >>> convert_string(1)
    '1'
    """

    return str(inpt).strip()


def convert_positiveInteger(inpt):
    """Return value of input, a positive integer"""

    inpt = convert_integer(inpt)
    if inpt <= 0:
        raise ConfigurationError(
            'The value "{}" is not of type positiveInteger'.format(inpt))
    return inpt


def convert_nonNegativeInteger(inpt):
    """Return value of input, a nonnegative integer"""

    inpt = convert_integer(inpt)
    if inpt < 0:
        raise ConfigurationError(
            'The value "{}" is not of type nonNegativeInteger'.format(inpt))
    return inpt


def convert_powerOfTwo(inpt):
    """Return value of input, a power of two (grid sizes)"""

    inpt = convert_positiveInteger(inpt)
    if inpt & (inpt - 1):
        raise ConfigurationError(
            'The value "{}" is not a power of two'.format(inpt))
    return inpt


def convert_floatList(inpt):
    """Comma or whitespace separated floats

    >>> convert_floatList('0.5, 1 2')
    [0.5, 1.0, 2.0]
    """

    if isinstance(inpt, (list, tuple)):
        return [float(item) for item in inpt]
    items = str(inpt).replace(',', ' ').split()
    if not items:
        raise ValueError(inpt)
    return [float(item) for item in items]


_CONVERTERS = {
    'string': convert_string,
    'integer': convert_integer,
    'float': convert_float,
    'boolean': convert_boolean,
    'positiveInteger': convert_positiveInteger,
    'nonNegativeInteger': convert_nonNegativeInteger,
    'powerOfTwo': convert_powerOfTwo,
    'floatList': convert_floatList,
}


def make_allowedvalues(allowed_values):
    """convert given value list to AllowedValue objects

    A two element tuple is a closed range, a three element tuple
    (minval, maxval, closure) a range with the given closure.

    :return: list of afpk.inout.literaltypes.AllowedValue
    """

    new_allowedvalues = []

    if not isinstance(allowed_values, (tuple, list)):
        allowed_values = [allowed_values]

    for value in allowed_values:

        if value in ALLOWED_VALUES_TYPES:
            # value is equal to one of the allowed classes objects
            new_allowedvalues.append(value())
        elif isinstance(value, ALLOWED_VALUES_TYPES):
            # value is an instance of one of the allowed classes
            new_allowedvalues.append(value)

        elif type(value) == tuple:
            closure = value[2] if len(value) > 2 else RANGECLOSURETYPE.CLOSED
            new_allowedvalues.append(
                AllowedValue(allowed_type=ALLOWEDVALUETYPE.RANGE, minval=value[0], maxval=value[1],
                             range_closure=closure)
            )

        else:
            new_allowedvalues.append(AllowedValue(value=value))

    return new_allowedvalues


def is_anyvalue(value):
    """Check for any value object of given value
    """

    is_av = False

    if value is AnyValue:
        is_av = True
    elif value is None:
        is_av = True
    elif isinstance(value, AnyValue):
        is_av = True
    elif str(value).lower() == 'anyvalue':
        is_av = True

    return is_av
