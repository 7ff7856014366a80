##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Configuration driven experiment runner
"""

import logging
import os
import sys
import traceback
from collections import OrderedDict

from afpk import configuration as config
from afpk import dblog
from afpk.app.Experiment import ExperimentRequest, ExperimentResponse
from afpk.exceptions import EXIT_INTERNAL, EXIT_OK, AfpkException, ConfigurationError
from afpk.inout.formats import FORMATS
from afpk.inout.inputs import LiteralInput
from afpk.inout.storage import FileStorage
from afpk.response.status import RUN_STATUS

LOGGER = logging.getLogger("AFPK")

EFFECTIVE_CONFIG = 'effective'


class Runner(object):
    """ Dispatches a configuration file to its experiment

    :param experiments: A list of :class:`~Experiment` objects
    """

    def __init__(self, experiments=[]):
        # ordered dict of experiments
        self.experiments = OrderedDict((e.identifier, e) for e in experiments)
        self.last_run = None
        self.last_response = None

    def configure_logging(self, stream=None):
        """Logger setup from the logging section; stream adds a handler
        for diagnostics, for example sys.stderr
        """

        level = config.get_config_value('logging', 'level')
        LOGGER.setLevel(getattr(logging, str(level).upper()))
        if config.get_config_value('logging', 'file'):
            if not any(isinstance(h, logging.FileHandler) for h in LOGGER.handlers):
                fh = logging.FileHandler(config.get_config_value('logging', 'file'))
                fh.setFormatter(logging.Formatter(config.get_config_value('logging', 'format')))
                LOGGER.addHandler(fh)
        elif not LOGGER.handlers:
            LOGGER.addHandler(logging.NullHandler())
        if stream is not None and not any(getattr(h, 'stream', None) is stream for h in LOGGER.handlers):
            sh = logging.StreamHandler(stream)
            sh.setLevel(logging.WARNING)
            sh.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
            LOGGER.addHandler(sh)

    def prepare(self, cfgfile):
        """Load and check a configuration

        :returns: (experiment, request)
        :raises ConfigurationError: for unreadable files, unknown keys or kinds
                                    and values outside their domain
        """

        if not os.path.isfile(cfgfile):
            raise ConfigurationError('Configuration file {} not found'.format(cfgfile), locator=cfgfile)
        config.load_configuration([cfgfile])
        kind = LiteralInput('experiment.kind', data_type='string',
                            allowed_values=list(self.experiments)).read(config.CONFIG)
        experiment = self.experiments[kind]
        config.check_keys(config.CONFIG, extra=experiment.extra_keys)
        try:
            request = ExperimentRequest(config.CONFIG, experiment)
        except ConfigurationError:
            raise
        except AfpkException as e:
            raise ConfigurationError(e.description, locator=e.locator)
        return experiment, request

    def validate(self, cfgfile):
        """Exit code of loading and type-checking cfgfile"""

        try:
            experiment, _ = self.prepare(cfgfile)
        except AfpkException as e:
            sys.stderr.write('{}\n'.format(e))
            return e.code
        LOGGER.info('Configuration {} is valid for {}'.format(cfgfile, experiment.identifier))
        return EXIT_OK

    def run(self, cfgfile, storage=None, stream=None):
        """Execute the experiment configured in cfgfile

        :param storage: output storage, default the configured output directory
        :returns: process exit code
        """

        try:
            experiment, request = self.prepare(cfgfile)
        except AfpkException as e:
            sys.stderr.write('{}\n'.format(e))
            return e.code
        self.configure_logging(stream)

        config_hash = config.config_hash()
        uuid = dblog.log_run(experiment.identifier, config_hash)
        response = ExperimentResponse(storage or FileStorage(), config_hash)
        code = EXIT_OK
        try:
            response.storage.store_text(EFFECTIVE_CONFIG, config.dumps(), FORMATS.CONFIG)
            experiment.execute(request, response)
        except AfpkException as e:
            LOGGER.error('Run {} failed: {}'.format(uuid, e))
            sys.stderr.write('{}\n'.format(e))
            if response.status != RUN_STATUS.REJECTED:
                response._update_status(RUN_STATUS.FAILED, str(e))
            code = e.code
        except Exception as e:
            LOGGER.error('Run {} failed: {}'.format(uuid, traceback.format_exc()))
            sys.stderr.write('Internal error: {}\n'.format(e))
            response._update_status(RUN_STATUS.FAILED, str(e))
            code = EXIT_INTERNAL
        dblog.store_status(uuid, response.status, code, response.message)
        self.last_run = uuid
        self.last_response = response
        return code
