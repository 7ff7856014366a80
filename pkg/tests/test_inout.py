##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for configuration inputs, reports, field files and storage
"""

import os
import shutil
import struct
import tempfile
import unittest

import numpy as np

from afpk import configuration
from afpk.bernstein import BernsteinSpec
from afpk.exceptions import ConfigurationError, InvalidParameterValue, MissingParameterValue
from afpk.inout import fieldfile
from afpk.inout.inputs import LiteralInput
from afpk.inout.outputs import CsvReport, format_value, split_footer
from afpk.inout.storage import STORE_TYPE, FileStorage, MemoryStorage
from afpk.operator import OperatorSpec
from afpk.spectral import ScalarField
from afpk.validator.allowed_value import RANGECLOSURETYPE

SPEC = OperatorSpec([(1, BernsteinSpec.brownian()), (1, BernsteinSpec.power(0.5))])


def parser_with(**options):
    parser = configuration.new_parser()
    for key, value in options.items():
        section, option = key.split('__', 1)
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, option, value)
    return parser


def sample_field():
    values = np.arange(32.0).reshape(8, 4) / 7.0
    return ScalarField(SPEC, [8, 4], [0.25, 0.5], values)


class LiteralInputTest(unittest.TestCase):
    """Typed configuration keys"""

    def test_read(self):
        """Convert and validate"""
        inpt = LiteralInput('time.alpha', data_type='float',
                            allowed_values=[(0.0, 1.0, RANGECLOSURETYPE.OPENCLOSED)])
        self.assertEqual(inpt.read(parser_with(time__alpha='0.25')), 0.25)
        self.assertTrue(inpt.data_set)
        self.assertEqual((inpt.section, inpt.option), ('time', 'alpha'))

    def test_rejected(self):
        """Out of range value carries the key as locator"""
        inpt = LiteralInput('time.alpha', data_type='float',
                            allowed_values=[(0.0, 1.0, RANGECLOSURETYPE.OPENCLOSED)])
        with self.assertRaises(ConfigurationError) as cm:
            inpt.read(parser_with(time__alpha='0'))
        self.assertEqual(cm.exception.locator, 'time.alpha')
        with self.assertRaises(ConfigurationError):
            inpt.read(parser_with(time__alpha='half'))

    def test_default(self):
        """Empty or absent values fall back to the default"""
        inpt = LiteralInput('grid.size', data_type='powerOfTwo', default='64')
        self.assertEqual(inpt.read(parser_with(grid__size='')), 64)
        self.assertEqual(inpt.read(configuration.new_parser()), 64)

    def test_mandatory(self):
        """No default makes the key mandatory"""
        with self.assertRaises(MissingParameterValue):
            LiteralInput('experiment.kind').read(configuration.new_parser())

    def test_allowed_strings(self):
        """String choices"""
        inpt = LiteralInput('processing.mode', allowed_values=['serial', 'multiprocessing'])
        self.assertEqual(inpt.read(parser_with(processing__mode='serial')), 'serial')
        with self.assertRaises(ConfigurationError):
            inpt.read(parser_with(processing__mode='mpi'))

    def test_identifier(self):
        """section.option identifiers and known data types"""
        with self.assertRaises(ConfigurationError):
            LiteralInput('alpha')
        with self.assertRaises(ConfigurationError):
            LiteralInput('time.alpha', data_type='double')

    def test_json(self):
        """JSON there and back keeps data and allowed values"""
        inpt = LiteralInput('time.alpha', 'Order', data_type='float', allowed_values=[(0.0, 1.0)], default='0.5')
        inpt.read(configuration.new_parser())
        clone = LiteralInput.from_json(inpt.json)
        self.assertEqual(clone.json, inpt.json)
        self.assertEqual(clone.data, 0.5)
        self.assertEqual(inpt.clone().json, inpt.json)


class CsvReportTest(unittest.TestCase):
    """CSV reports with footer"""

    def test_format(self):
        """17 significant digits, integers and booleans as text"""
        self.assertEqual(format_value(0.1), '0.10000000000000001')
        self.assertEqual(format_value(np.int64(3)), '3')
        self.assertEqual(format_value(True), 'true')
        self.assertEqual(float(format_value(1.0 / 3.0)), 1.0 / 3.0)

    def test_dumps(self):
        """Header, rows, then footer comments"""
        report = CsvReport(['x', 'q'], 'kernel-table')
        report.add_row(0.5, 1.25)
        report.add_row(q=2.0, x=1.0)
        body, footer = split_footer(report.dumps('abc'))
        self.assertEqual(body, 'x,q\n0.5,1.25\n1,2\n')
        self.assertIn('# config-hash: abc\n', footer)
        self.assertIn('# version: ', footer)
        np.testing.assert_array_equal(report.column('q'), [1.25, 2.0])
        self.assertEqual(len(report), 2)

    def test_bad_rows(self):
        """Wrong length, missing names, mixed styles"""
        report = CsvReport(['x', 'q'])
        with self.assertRaises(InvalidParameterValue):
            report.add_row(1.0)
        with self.assertRaises(InvalidParameterValue):
            report.add_row(x=1.0)
        with self.assertRaises(InvalidParameterValue):
            report.add_row(1.0, q=2.0)


class FieldFileTest(unittest.TestCase):
    """Binary field format"""

    def test_layout(self):
        """Magic, axis count, sizes, spacings, little endian values"""
        data = fieldfile.dumps(sample_field())
        self.assertEqual(data[:5], b'AFPK1')
        self.assertEqual(struct.unpack_from('<I', data, 5), (2,))
        self.assertEqual(struct.unpack_from('<2I', data, 9), (8, 4))
        self.assertEqual(struct.unpack_from('<2d', data, 17), (0.25, 0.5))
        self.assertEqual(len(data), 33 + 8 * 32)
        self.assertEqual(struct.unpack_from('<d', data, 33 + 8 * 5)[0], 5.0 / 7.0)

    def test_bit_exact(self):
        """Values survive bit for bit"""
        field = sample_field()
        back = fieldfile.loads(fieldfile.dumps(field), SPEC)
        self.assertEqual(back.sizes, field.sizes)
        self.assertEqual(tuple(back.spacings), tuple(field.spacings))
        self.assertEqual(back.values.tobytes(), field.values.tobytes())

    def test_bad_data(self):
        """Wrong magic, truncated body, complex values"""
        data = fieldfile.dumps(sample_field())
        with self.assertRaises(InvalidParameterValue):
            fieldfile.loads(b'XXXX1' + data[5:])
        with self.assertRaises(InvalidParameterValue):
            fieldfile.loads(data[:-8])
        with self.assertRaises(InvalidParameterValue):
            fieldfile.loads(data[:7])
        field = sample_field()
        with self.assertRaises(InvalidParameterValue):
            fieldfile.dumps(field.with_values(field.values + 1j))


class StorageTest(unittest.TestCase):
    """Memory and file storage"""

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_memory(self):
        """Names get their format extension"""
        store = MemoryStorage()
        report = CsvReport(['x'], 'mass-scan')
        report.add_row(1.0)
        self.assertEqual(store.store_report(report, 'h'), (STORE_TYPE.MEMORY, 'mass-scan.csv'))
        self.assertEqual(store.store_field('kernel', sample_field()), (STORE_TYPE.MEMORY, 'kernel.afpk'))
        self.assertEqual(store.store_text('effective', 'a.b = 1\n'), (STORE_TYPE.MEMORY, 'effective.cfg'))
        self.assertTrue(store.items['mass-scan.csv'].startswith('x\n1\n'))

    def test_file(self):
        """Directory created lazily"""
        target = os.path.join(self.tmpdir, 'out')
        store = FileStorage(target)
        self.assertFalse(os.path.exists(target))
        report = CsvReport(['x'], 'kernel-table')
        report.add_row(0.5)
        kind, path = store.store_report(report, 'h')
        self.assertEqual(kind, STORE_TYPE.PATH)
        with open(path) as fp:
            self.assertEqual(split_footer(fp.read())[0], 'x\n0.5\n')
        _, path = store.store_field('kernel', sample_field())
        self.assertEqual(fieldfile.read_field(path, SPEC).values.tobytes(), sample_field().values.tobytes())


def load_tests(loader=None, tests=None, pattern=None):
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(LiteralInputTest),
        loader.loadTestsFromTestCase(CsvReportTest),
        loader.loadTestsFromTestCase(FieldFileTest),
        loader.loadTestsFromTestCase(StorageTest),
    ]
    return unittest.TestSuite(suite_list)
