##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Typed configuration literals

A :class:`LiteralInput` names one ``section.option`` key, converts the raw
text to its data type and validates it against its allowed values.
"""

import logging
from copy import deepcopy

from afpk.exceptions import ConfigurationError, MissingParameterValue
from afpk.inout.literaltypes import (LITERAL_DATA_TYPES, AllowedValue, AnyValue, convert, is_anyvalue,
                                     make_allowedvalues)
from afpk.validator import get_validator
from afpk.validator.mode import MODE

LOGGER = logging.getLogger('AFPK')


class LiteralInput(object):
    """
    :param str identifier: ``section.option`` key of the input
    :param str title: Title of the input
    :param afpk.inout.literaltypes.LITERAL_DATA_TYPES data_type: data type
    :param str abstract: Input abstract
    :param afpk.validator.mode.MODE mode: validation mode (none to strict)
    :param allowed_values: :class:`afpk.inout.literaltypes.AnyValue`, values, or
                           (minval, maxval[, closure]) ranges
    :param default: raw or typed default, None makes the input mandatory
    """

    def __init__(self, identifier, title=None, data_type='string', abstract='',
                 mode=MODE.SIMPLE, allowed_values=None, default=None):

        if data_type not in LITERAL_DATA_TYPES:
            raise ConfigurationError("Invalid data_type value of LiteralInput set to '{}'".format(data_type))
        if '.' not in identifier:
            raise ConfigurationError('Input identifier {} is not section.option'.format(identifier))
        self.identifier = identifier
        self.title = title or identifier
        self.data_type = data_type
        self.abstract = abstract
        self.valid_mode = mode
        self.default = default

        self.any_value = allowed_values is None or (
            not isinstance(allowed_values, (tuple, list)) and is_anyvalue(allowed_values))
        self.allowed_values = [AnyValue()] if self.any_value else make_allowedvalues(allowed_values)

        self._data = None
        self.data_set = False

    @property
    def section(self):
        return self.identifier.split('.', 1)[0]

    @property
    def option(self):
        return self.identifier.split('.', 1)[1]

    @property
    def validator(self):
        """Get validator for any value as well as allowed_values
        :rtype: function
        """

        if self.any_value:
            return get_validator('anyvalue')
        return get_validator('allowedvalues')

    @property
    def data(self):
        return self._data

    @data.setter
    def data(self, value):
        try:
            self._data = convert(self.data_type, value)
        except ConfigurationError as e:
            raise ConfigurationError(e.description, locator=self.identifier)
        self._check_valid()

    def _check_valid(self):
        """Validate this input using given validator
        """

        validate = self.validator
        _valid = validate(self, self.valid_mode)
        if not _valid:
            self.data_set = False
            raise ConfigurationError('Value {!r} not allowed, expected one of {}'.format(
                self._data, self.allowed_values), locator=self.identifier)
        self.data_set = True

    def read(self, parser):
        """Set data from parser, falling back to the default

        Empty values count as missing.

        :raises MissingParameterValue: for a mandatory key that is absent
        """

        raw = None
        if parser.has_section(self.section) and parser.has_option(self.section, self.option):
            raw = parser.get(self.section, self.option, raw=True)
        if raw is None or str(raw).strip() == '':
            if self.default is None:
                raise MissingParameterValue('Missing configuration key {}'.format(self.identifier),
                                            locator=self.identifier)
            raw = self.default
        self.data = raw
        LOGGER.debug('{} = {!r}'.format(self.identifier, self.data))
        return self.data

    @property
    def json(self):
        """Get JSON representation of the input
        """
        return {
            'identifier': self.identifier,
            'title': self.title,
            'abstract': self.abstract,
            'type': 'literal',
            'data_type': self.data_type,
            'allowed_values': [value.json for value in self.allowed_values],
            'any_value': self.any_value,
            'mode': self.valid_mode,
            'default': self.default,
            'data': self.data,
        }

    @classmethod
    def from_json(cls, json_input):
        allowed_values = []
        for allowed_value in json_input['allowed_values']:
            if allowed_value['type'] == 'anyvalue':
                allowed_values.append(AnyValue())
            elif allowed_value['type'] == 'allowedvalue':
                allowed_values.append(AllowedValue(
                    allowed_type=allowed_value['allowed_type'],
                    value=allowed_value['value'],
                    minval=allowed_value['minval'],
                    maxval=allowed_value['maxval'],
                    range_closure=allowed_value['range_closure']
                ))

        instance = cls(
            identifier=json_input['identifier'],
            title=json_input['title'],
            abstract=json_input['abstract'],
            data_type=json_input['data_type'],
            mode=json_input['mode'],
            allowed_values=None if json_input['any_value'] else allowed_values,
            default=json_input['default'],
        )
        if json_input.get('data') is not None:
            instance.data = json_input['data']
        return instance

    def clone(self):
        """Create copy of yourself
        """
        return deepcopy(self)
