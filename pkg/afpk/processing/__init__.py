##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

import afpk.configuration as config
from afpk.exceptions import ConfigurationError
from afpk.processing.basic import MultiProcessing, Serial
# api only
from afpk.processing.basic import Processing  # noqa: F401

import logging
LOGGER = logging.getLogger("AFPK")

SERIAL = 'serial'
MULTIPROCESSING = 'multiprocessing'
DEFAULT = SERIAL


def Executor(mode=None, threads=None):
    """
    Factory method (looking like a class) to return the
    configured processing class.

    :return: instance of :class:`afpk.processing.Processing`
    """
    if mode is None:
        mode = config.get_config_value("processing", "mode") or DEFAULT
    if threads is None:
        threads = config.get_thread_count()
    LOGGER.info("Processing mode: {} ({} threads)".format(mode, threads))
    if mode == MULTIPROCESSING:
        return MultiProcessing(threads)
    elif mode == SERIAL:
        return Serial(threads)
    raise ConfigurationError('Unknown processing mode {}'.format(mode), locator='processing.mode')
