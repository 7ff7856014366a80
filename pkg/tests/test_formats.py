##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for Formats
"""

import unittest

from afpk.inout.formats import FORMATS, Format, get_format


class FormatsTest(unittest.TestCase):
    """Formats test cases"""

    def test_format_class(self):
        """Test afpk.inout.formats.Format class
        """
        frmt = Format('mimetype', extension='.x', binary=True)

        self.assertEqual(frmt.mime_type, 'mimetype')
        self.assertEqual(frmt.file_name('a'), 'a.x')
        self.assertEqual(frmt.file_name('a.x'), 'a.x')

        describeel = frmt.json

        self.assertEqual(describeel["mime_type"], 'mimetype')
        self.assertTrue(describeel["binary"])
        self.assertNotEqual(frmt, get_format('CSV'))

    def test_getformat(self):
        """test for afpk.inout.formats.get_format function
        """

        frmt = get_format('field')
        self.assertEqual(frmt, FORMATS.FIELD)
        self.assertTrue(frmt.binary)
        with self.assertRaises(AttributeError):
            get_format('GML')

    def test_json_out(self):
        """Test json export
        """

        outjson = get_format('CSV').json
        self.assertEqual(outjson['extension'], '.csv')
        self.assertEqual(outjson['mime_type'], 'text/csv')
        self.assertFalse(outjson['binary'])


def load_tests(loader=None, tests=None, pattern=None):
    """Load local tests
    """
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(FormatsTest)
    ]
    return unittest.TestSuite(suite_list)
