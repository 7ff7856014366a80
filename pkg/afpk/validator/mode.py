##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Validation modes
"""


class MODE():
    """Validation mode enumeration

    NONE accepts anything that converts, SIMPLE checks allowed values,
    STRICT additionally rejects non-finite numbers.
    """
    NONE = 0
    SIMPLE = 1
    STRICT = 2
