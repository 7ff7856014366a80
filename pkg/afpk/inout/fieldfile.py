##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Binary field files

Layout, all little endian::

    b'AFPK1'
    uint32        number of axes d
    uint32 * d    sizes
    float64 * d   spacings
    float64 * N   values, row-major
"""

import io
import logging
import struct

import numpy as np

from afpk.exceptions import InvalidParameterValue
from afpk.inout.formats import FORMATS
from afpk.spectral import ScalarField

LOGGER = logging.getLogger('AFPK')

MAGIC = b'AFPK1'


def dumps(field):
    """Encode a real :class:`afpk.spectral.ScalarField` to bytes"""

    values = np.asarray(field.values)
    if np.iscomplexobj(values):
        raise InvalidParameterValue('Field files hold real values only', 'values')
    ndim = len(field.sizes)
    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack('<I', ndim))
    buf.write(struct.pack('<{}I'.format(ndim), *field.sizes))
    buf.write(struct.pack('<{}d'.format(ndim), *field.spacings))
    buf.write(np.ascontiguousarray(values, dtype='<f8').tobytes(order='C'))
    return buf.getvalue()


def loads(data, spec=None):
    """Decode bytes written by :func:`dumps`

    :param spec: operator attached to the returned field
    :raises InvalidParameterValue: for a wrong magic or a truncated file
    """

    if data[:len(MAGIC)] != MAGIC:
        raise InvalidParameterValue('Not a field file, magic {!r}'.format(data[:len(MAGIC)]), 'magic')
    offset = len(MAGIC)
    try:
        (ndim,) = struct.unpack_from('<I', data, offset)
        offset += 4
        sizes = struct.unpack_from('<{}I'.format(ndim), data, offset)
        offset += 4 * ndim
        spacings = struct.unpack_from('<{}d'.format(ndim), data, offset)
        offset += 8 * ndim
    except struct.error as e:
        raise InvalidParameterValue('Truncated field header: {}'.format(e), 'header')
    count = int(np.prod(sizes)) if ndim else 1
    if len(data) - offset != 8 * count:
        raise InvalidParameterValue('Field body has {} bytes, expected {}'.format(len(data) - offset, 8 * count),
                                    'values')
    values = np.frombuffer(data, dtype='<f8', count=count, offset=offset).astype(float).reshape(sizes)
    return ScalarField(spec, sizes, spacings, values)


def write_field(field, path):
    """Write field to path, the field extension is appended if missing"""

    path = FORMATS.FIELD.file_name(path)
    with open(path, 'wb') as fp:
        fp.write(dumps(field))
    LOGGER.debug('Wrote field {} to {}'.format(field, path))
    return path


def read_field(path, spec=None):
    with open(path, 'rb') as fp:
        return loads(fp.read(), spec)

