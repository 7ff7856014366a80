##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Validating functions for configuration literals
"""

import logging

from afpk.validator.mode import MODE  # noqa: F401

LOGGER = logging.getLogger('AFPK')


def get_validator(identifier):
    """Return validator function for given allowed values kind

    identifier is 'allowedvalues' or 'anyvalue'
    """

    # literalvalidator needs afpk.inout.literaltypes, which imports this package
    from afpk.validator.literalvalidator import validate_allowed_values, validate_anyvalue

    validators = {
        'allowedvalues': validate_allowed_values,
        'anyvalue': validate_anyvalue,
    }
    if identifier in validators:
        LOGGER.debug('validator: {}'.format(validators[identifier]))
        return validators[identifier]
    else:
        LOGGER.debug('any value validator')
        return validate_anyvalue
