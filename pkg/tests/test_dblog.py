##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Unit tests for the run ledger
"""

import unittest

from afpk import dblog
from afpk.dblog import RunInstance, get_session
from afpk.response.status import RUN_STATUS


class DBLogTest(unittest.TestCase):
    """DBLog test cases"""

    def test_0_dblog(self):
        """Session on the configured database
        """
        session = get_session()
        self.assertTrue(session)
        session.close()

    def test_run_lifecycle(self):
        """Started row, then finished with status and exit code"""
        finished, unfinished = dblog.get_run_counts()
        uuid = dblog.log_run('mass-scan', 'f' * 64)
        run = dblog.get_run(uuid)
        self.assertEqual(run['status'], RUN_STATUS.STARTED)
        self.assertEqual(run['kind'], 'mass-scan')
        self.assertIsNone(run['time_end'])
        self.assertEqual(dblog.get_run_counts(), (finished, unfinished + 1))

        dblog.store_status(uuid, RUN_STATUS.SUCCEEDED, exit_code=0, message='ok')
        run = dblog.get_run(uuid)
        self.assertEqual(run['status'], RUN_STATUS.SUCCEEDED)
        self.assertEqual(run['exit_code'], 0)
        self.assertEqual(run['message'], 'ok')
        self.assertIsNotNone(run['time_end'])
        self.assertEqual(dblog.get_run_counts(), (finished + 1, unfinished))

    def test_unknown_run(self):
        """Unknown uuids are ignored"""
        self.assertIsNone(dblog.get_run('no-such-run'))
        dblog.store_status('no-such-run', RUN_STATUS.FAILED)

    def test_db_content(self):
        """Every finished run has a status"""
        session = get_session()
        done = session.query(RunInstance).filter(RunInstance.time_end.isnot(None))
        self.assertEqual(done.filter(RunInstance.status.is_(None)).count(), 0)
        session.close()


def load_tests(loader=None, tests=None, pattern=None):
    """Load local tests
    """
    if not loader:
        loader = unittest.TestLoader()
    suite_list = [
        loader.loadTestsFromTestCase(DBLogTest)
    ]
    return unittest.TestSuite(suite_list)
