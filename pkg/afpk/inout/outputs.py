##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""CSV reports

Numbers are written with 17 significant digits through ``format``, which
does not depend on the locale. Footer comment lines carry the hash of the
effective configuration and the package version; the rows above them are
the report body.
"""

import csv
import io
import logging
import numbers

import numpy as np

from afpk import __version__
from afpk.exceptions import InvalidParameterValue

LOGGER = logging.getLogger('AFPK')

FLOAT_FORMAT = '{:.17g}'
FOOTER_PREFIX = '# '


def format_value(value):
    """Text of a report cell

    >>> format_value(0.1)
    '0.10000000000000001'
    >>> format_value(3)
    '3'
    """

    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return FLOAT_FORMAT.format(float(value))
    return str(value)


class CsvReport(object):
    """Table with a fixed header

    :param columns: column names
    :param str title: report name, used as file name by the storage
    """

    def __init__(self, columns, title='report'):
        self.columns = tuple(columns)
        self.title = title
        self.rows = []

    def add_row(self, *values, **named):
        """Append one row, positional in column order or by column name"""

        if named:
            if values:
                raise InvalidParameterValue('Mix of positional and named report values', 'row')
            missing = [c for c in self.columns if c not in named]
            if missing:
                raise InvalidParameterValue('Report row misses columns {}'.format(missing), 'row')
            values = [named[c] for c in self.columns]
        if len(values) != len(self.columns):
            raise InvalidParameterValue('Report row has {} values, header has {}'.format(
                len(values), len(self.columns)), 'row')
        self.rows.append(tuple(values))

    def add_rows(self, rows):
        for row in rows:
            self.add_row(*row)

    def column(self, name):
        index = self.columns.index(name)
        return np.array([row[index] for row in self.rows])

    def body(self):
        """Header and rows as text"""

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def footer(self, config_hash):
        return '{}config-hash: {}\n{}version: {}\n'.format(FOOTER_PREFIX, config_hash, FOOTER_PREFIX, __version__)

    def dumps(self, config_hash=''):
        return self.body() + self.footer(config_hash)

    def write(self, fp, config_hash=''):
        fp.write(self.dumps(config_hash))

    def __len__(self):
        return len(self.rows)


def split_footer(text):
    """(body, footer) of report text"""

    body, footer = [], []
    for line in text.splitlines(True):
        (footer if line.startswith(FOOTER_PREFIX) else body).append(line)
    return ''.join(body), ''.join(footer)
