##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""List of known output formats"""

from collections import namedtuple

_FORMATS = namedtuple('FORMATS', 'CSV, FIELD, CONFIG')


class Format(object):
    """Output format specification

    Predefined Formats are stored in :class:`afpk.inout.formats.FORMATS`

    :param str mime_type: mimetype definition
    :param str extension: file extension
    :param bool binary: written in binary mode
    """

    def __init__(self, mime_type, extension=None, binary=False):
        self.mime_type = mime_type
        self.extension = extension or ''
        self.binary = binary

    def file_name(self, name):
        """name with the format extension appended once"""
        if self.extension and not name.endswith(self.extension):
            return name + self.extension
        return name

    @property
    def json(self):
        return {
            'mime_type': self.mime_type,
            'extension': self.extension,
            'binary': self.binary,
        }

    def __eq__(self, other):
        return isinstance(other, Format) and self.json == other.json

    def __repr__(self):
        return 'Format({!r})'.format(self.mime_type)


FORMATS = _FORMATS(
    Format('text/csv', extension='.csv'),
    Format('application/x-afpk-field', extension='.afpk', binary=True),
    Format('text/plain', extension='.cfg'),
)


def get_format(frmt):
    """Return Format instance based on given short name (CSV, FIELD, CONFIG)

    >>> get_format('CSV').extension
    '.csv'
    """

    return getattr(FORMATS, frmt.upper())
