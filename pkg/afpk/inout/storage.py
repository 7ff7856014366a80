##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

import logging
import os
from abc import ABCMeta, abstractmethod

from afpk import configuration as config
from afpk.exceptions import ConfigurationError
from afpk.inout import fieldfile
from afpk.inout.formats import FORMATS

LOGGER = logging.getLogger('AFPK')


class STORE_TYPE:
    PATH = 0
    MEMORY = 1


class StorageAbstract(object):
    """Data storage abstract class
    """

    __metaclass__ = ABCMeta

    @abstractmethod
    def store_report(self, report, config_hash):
        """
        :param report: :class:`afpk.inout.outputs.CsvReport`
        :returns: (type, location)
        """
        raise NotImplementedError

    @abstractmethod
    def store_field(self, name, field):
        raise NotImplementedError

    @abstractmethod
    def store_text(self, name, text, fmt=FORMATS.CONFIG):
        raise NotImplementedError


class MemoryStorage(StorageAbstract):
    """Keeps everything in a dict, for tests and dry runs

    >>> store = MemoryStorage()
    >>> store.store_text('effective', 'a.b = 1\\n')
    (1, 'effective.cfg')
    """

    def __init__(self):
        self.items = {}

    def store_report(self, report, config_hash):
        name = FORMATS.CSV.file_name(report.title)
        self.items[name] = report.dumps(config_hash)
        return (STORE_TYPE.MEMORY, name)

    def store_field(self, name, field):
        name = FORMATS.FIELD.file_name(name)
        self.items[name] = fieldfile.dumps(field)
        return (STORE_TYPE.MEMORY, name)

    def store_text(self, name, text, fmt=FORMATS.CONFIG):
        name = fmt.file_name(name)
        self.items[name] = text
        return (STORE_TYPE.MEMORY, name)


class FileStorage(StorageAbstract):
    """File storage implementation, stores data in the output directory

    The directory is created on the first store, so a run that fails
    before producing anything leaves no files behind.
    """

    def __init__(self, target=None):
        self.target = target or config.get_config_value('output', 'directory')
        if not self.target:
            raise ConfigurationError('No output directory configured', locator='output.directory')

    def _prepare(self):
        if not os.path.exists(self.target):
            LOGGER.info('Creating output directory {}'.format(self.target))
            os.makedirs(self.target)

    def path(self, name, fmt):
        return os.path.join(self.target, fmt.file_name(name))

    def store_report(self, report, config_hash):
        self._prepare()
        path = self.path(report.title, FORMATS.CSV)
        with open(path, 'w', encoding='utf-8', newline='') as fp:
            report.write(fp, config_hash)
        LOGGER.info('Stored report {} ({} rows)'.format(path, len(report)))
        return (STORE_TYPE.PATH, path)

    def store_field(self, name, field):
        self._prepare()
        path = fieldfile.write_field(field, self.path(name, FORMATS.FIELD))
        return (STORE_TYPE.PATH, path)

    def store_text(self, name, text, fmt=FORMATS.CONFIG):
        self._prepare()
        path = self.path(name, fmt)
        with open(path, 'w', encoding='utf-8', newline='') as fp:
            fp.write(text)
        LOGGER.debug('Stored {}'.format(path))
        return (STORE_TYPE.PATH, path)
