##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Domain objects built from the loaded configuration
"""

import logging
import re

from afpk.bernstein import BernsteinSpec
from afpk.exceptions import ConfigurationError, InvalidParameterValue
from afpk.inout.inputs import LiteralInput
from afpk.inout.literaltypes import RANGECLOSURETYPE
from afpk.kernel import DEFAULT_SIZES, natural_grid
from afpk.operator import Block, OperatorSpec

LOGGER = logging.getLogger("AFPK")

_TERM = re.compile(r'^(?P<block>[1-9][0-9]*)\.term\.(?P<term>[1-9][0-9]*)\.(?P<field>coef|beta)$')

TIME_INPUTS = [
    LiteralInput('time.alpha', 'Time order', data_type='float',
                 allowed_values=[(0.0, 1.0, RANGECLOSURETYPE.OPENCLOSED)], default='0.5'),
    LiteralInput('time.t', 'Kernel time', data_type='float',
                 allowed_values=[(0.0, None, RANGECLOSURETYPE.OPEN)], default='1.0'),
    LiteralInput('time.T', 'Solver horizon', data_type='float',
                 allowed_values=[(0.0, None, RANGECLOSURETYPE.OPEN)], default='1.0'),
    LiteralInput('time.nt', 'Time steps', data_type='positiveInteger', default='128'),
]


def operator_from_config(parser):
    """:class:`afpk.operator.OperatorSpec` from the operator and phi sections

    A block without phi keys is the Laplacian (drift 1).
    """

    ell = LiteralInput('operator.ell', data_type='positiveInteger').read(parser)
    drifts = {}
    terms = {}
    if parser.has_section('phi'):
        for option in parser.options('phi'):
            raw = parser.get('phi', option, raw=True)
            if option.endswith('.drift') and option.count('.') == 1:
                block = int(option.split('.')[0])
                drifts[block] = LiteralInput('phi.' + option, data_type='float',
                                             allowed_values=[(0.0, None)]).read(parser)
                continue
            match = _TERM.match(option)
            if not match:
                raise ConfigurationError('Unknown configuration key phi.{}'.format(option), locator='phi.' + option)
            key = (int(match.group('block')), int(match.group('term')))
            try:
                terms.setdefault(key, {})[match.group('field')] = float(raw)
            except ValueError:
                raise ConfigurationError('Could not convert value {!r} to float'.format(raw), locator='phi.' + option)

    blocks = []
    for index in range(1, ell + 1):
        dim = LiteralInput('operator.dim.{}'.format(index), data_type='positiveInteger',
                           default='1').read(parser)
        block_terms = []
        for (block, number), values in sorted(terms.items()):
            if block != index:
                continue
            if 'beta' not in values:
                raise ConfigurationError('Term {} of block {} has no exponent'.format(number, index),
                                         locator='phi.{}.term.{}.beta'.format(index, number))
            block_terms.append((values.get('coef', 1.0), values['beta']))
        drift = drifts.get(index, 0.0 if block_terms else 1.0)
        try:
            blocks.append(Block(dim, BernsteinSpec(drift, block_terms)))
        except InvalidParameterValue as e:
            raise ConfigurationError(e.description, locator='phi.{}'.format(index))
    referenced = set(b for b, _ in terms) | set(drifts)
    if referenced and max(referenced) > ell:
        raise ConfigurationError('phi block {} beyond operator.ell = {}'.format(max(referenced), ell),
                                 locator='phi.{}'.format(max(referenced)))
    try:
        return OperatorSpec(blocks)
    except InvalidParameterValue as e:
        raise ConfigurationError(e.description, locator='operator')


def time_from_config(parser):
    """dict with alpha, beta, t, T, nt; beta defaults to alpha"""

    values = {inpt.option: inpt.clone().read(parser) for inpt in TIME_INPUTS}
    beta = LiteralInput('time.beta', data_type='float', allowed_values=[(0.0, None, RANGECLOSURETYPE.OPEN)],
                        default=str(values['alpha'])).read(parser)
    values['beta'] = beta
    return values


def grid_sizes(parser, spec):
    """Per axis grid sizes from grid.size and grid.size.<axis>"""

    size = LiteralInput('grid.size', data_type='nonNegativeInteger', default='0').read(parser)
    if size == 0:
        size = DEFAULT_SIZES.get(spec.total_dim, 64)
    sizes = []
    for axis in range(1, spec.total_dim + 1):
        sizes.append(LiteralInput('grid.size.{}'.format(axis), data_type='powerOfTwo',
                                  default=str(size)).read(parser))
    return sizes


def grid_half_widths(parser, spec):
    """Per axis half widths, None for the natural scale rule"""

    width = LiteralInput('grid.half_width', data_type='float', allowed_values=[(0.0, None)],
                         default='0').read(parser)
    widths = []
    for axis in range(1, spec.total_dim + 1):
        widths.append(LiteralInput('grid.half_width.{}'.format(axis), data_type='float',
                                   allowed_values=[(0.0, None)], default=str(width)).read(parser))
    if all(w == 0 for w in widths):
        return None
    if any(w == 0 for w in widths):
        raise ConfigurationError('Set every grid.half_width.<axis> or none', locator='grid.half_width')
    return widths


def grid_from_config(parser, spec, alpha, t):
    """Empty :class:`afpk.spectral.ScalarField` for the configured box"""

    scale = LiteralInput('grid.scale_factor', data_type='float',
                         allowed_values=[(0.0, None, RANGECLOSURETYPE.OPEN)], default='8').read(parser)
    return natural_grid(spec, alpha, t, sizes=grid_sizes(parser, spec), scale_factor=scale,
                        half_widths=grid_half_widths(parser, spec))
