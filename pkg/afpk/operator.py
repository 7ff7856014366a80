##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Anisotropy vector: blocks of dimension d_i, each carrying a Bernstein
function phi_i, with generator sum_i phi_i(Delta_{x_i}) and symbol
m_phi(xi) = sum_i phi_i(|xi_i|^2)
"""

import logging
from collections import namedtuple

import numpy as np

from afpk.bernstein import BernsteinSpec, evaluate, wls_certificate
from afpk.exceptions import InvalidParameterValue, UnsupportedDimension

LOGGER = logging.getLogger('AFPK')

MAX_BLOCK_DIM = 3

Block = namedtuple('Block', 'dim phi')


class OperatorSpec(object):
    """Blocks (dim, phi) of the operator phi_1(Delta_{x_1}) + ... + phi_l(Delta_{x_l})

    :param blocks: iterable of (dim, BernsteinSpec)
    """

    def __init__(self, blocks):
        self.blocks = tuple(Block(int(dim), phi) for dim, phi in blocks)
        if not self.blocks:
            raise InvalidParameterValue('Operator needs at least one block', 'blocks')
        for index, block in enumerate(self.blocks):
            if not 1 <= block.dim <= MAX_BLOCK_DIM:
                raise UnsupportedDimension('Block {} has dimension {}, supported are 1..{}'.format(
                    index + 1, block.dim, MAX_BLOCK_DIM), 'operator.dim.{}'.format(index + 1))
            if not isinstance(block.phi, BernsteinSpec):
                raise InvalidParameterValue('Block {} carries no Bernstein function'.format(index + 1), 'phi')

    @classmethod
    def single(cls, phi, dim=1):
        """One block"""
        return cls([(dim, phi)])

    @property
    def ell(self):
        return len(self.blocks)

    @property
    def dims(self):
        return tuple(b.dim for b in self.blocks)

    @property
    def total_dim(self):
        return sum(self.dims)

    @property
    def certificates(self):
        return tuple(wls_certificate(b.phi) for b in self.blocks)

    @property
    def offsets(self):
        """Index of the first axis of every block"""
        return tuple(int(o) for o in np.cumsum((0,) + self.dims[:-1]))

    def axes(self, index):
        """Axes (as a tuple) belonging to block index"""
        start = self.offsets[index]
        return tuple(range(start, start + self.blocks[index].dim))

    def split(self, x):
        """Split points of shape (..., d) into per-block arrays (..., d_i)"""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.total_dim:
            raise InvalidParameterValue('Point has {} coordinates, operator needs {}'.format(
                x.shape[-1], self.total_dim), 'x')
        return [x[..., list(self.axes(i))] for i in range(self.ell)]

    def block_norms(self, x):
        """|x_i| per block, shape (..., l)"""
        return np.stack([np.sqrt(np.sum(xi * xi, axis=-1)) for xi in self.split(x)], axis=-1)

    def component_symbol(self, index, xi_sq):
        """phi_i(|xi_i|^2), zero at xi_i = 0"""
        xi_sq = np.asarray(xi_sq, dtype=float)
        positive = xi_sq > 0
        return np.where(positive, evaluate(self.blocks[index].phi, np.where(positive, xi_sq, 1.0)), 0.0)

    def symbol(self, xi_sq_blocks):
        """m_phi from the per-block squared frequency norms"""
        return sum(self.component_symbol(i, sq) for i, sq in enumerate(xi_sq_blocks))

    def __eq__(self, other):
        return isinstance(other, OperatorSpec) and self.json == other.json

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'OperatorSpec({!r})'.format([(b.dim, b.phi) for b in self.blocks])

    @property
    def json(self):
        return {'blocks': [{'dim': b.dim, 'phi': b.phi.json} for b in self.blocks]}

    @classmethod
    def from_json(cls, json_input):
        return cls([(b['dim'], BernsteinSpec.from_json(b['phi'])) for b in json_input['blocks']])
