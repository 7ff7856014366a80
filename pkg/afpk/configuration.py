##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""
Reads the AFPK configuration files

Files use a flat line format::

    # comment
    section.key = value
    phi.1.term.1.beta = 0.5

The first dot separates the section from the option, so options may
contain further dots. Option names are case sensitive (``time.t`` is the
kernel time, ``time.T`` the solver horizon).
"""

import hashlib
import io
import logging
import os
import re

import configparser

from afpk.exceptions import ConfigurationError

RAW_OPTIONS = [('logging', 'format'), ]

CONFIG = None
LOGGER = logging.getLogger("AFPK")

# keys with an index suffix, checked in addition to the defaults
PATTERN_OPTIONS = [
    ('operator', re.compile(r'^dim\.[1-9][0-9]*$')),
    ('phi', re.compile(r'^[1-9][0-9]*\.drift$')),
    ('phi', re.compile(r'^[1-9][0-9]*\.term\.[1-9][0-9]*\.(coef|beta)$')),
    ('grid', re.compile(r'^size\.[1-9][0-9]*$')),
    ('grid', re.compile(r'^half_width\.[1-9][0-9]*$')),
]

_LINE = re.compile(r'^(?P<section>[A-Za-z_][A-Za-z0-9_-]*)\.(?P<option>[A-Za-z0-9_.-]+)\s*=\s*(?P<value>.*)$')


def get_config_value(section, option):
    """Get desired value from  configuration files

    :param section: section in configuration files
    :type section: string
    :param option: option in the section
    :type option: string
    :returns: value found in the configuration file
    """

    if not CONFIG:
        load_configuration()

    value = ''

    if CONFIG.has_section(section):
        if CONFIG.has_option(section, option):
            raw = (section, option) in RAW_OPTIONS
            value = CONFIG.get(section, option, raw=raw)

            # Convert Boolean string to real Boolean values
            if value.lower() == "false":
                value = False
            elif value.lower() == "true":
                value = True

    return value


def new_parser():
    """Return an empty parser with case sensitive option names and no
    interpolation
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    return parser


def set_defaults(parser):
    """Populate parser with the default values of every section
    """

    LOGGER.debug('setting default values')
    parser.add_section('operator')
    parser.set('operator', 'ell', '1')

    parser.add_section('phi')

    parser.add_section('time')
    parser.set('time', 'alpha', '0.5')
    parser.set('time', 'beta', '')
    parser.set('time', 't', '1.0')
    parser.set('time', 'T', '1.0')
    parser.set('time', 'nt', '128')

    parser.add_section('grid')
    parser.set('grid', 'size', '0')
    parser.set('grid', 'half_width', '0')
    parser.set('grid', 'scale_factor', '8')

    parser.add_section('experiment')
    parser.set('experiment', 'kind', '')

    parser.add_section('output')
    parser.set('output', 'directory', os.path.abspath('afpk-output'))
    parser.set('output', 'seed', '0')
    parser.set('output', 'fields', 'false')

    parser.add_section('processing')
    parser.set('processing', 'mode', 'serial')
    parser.set('processing', 'threads', '0')
    parser.set('processing', 'chunk', '4096')

    parser.add_section('logging')
    parser.set('logging', 'file', '')
    parser.set('logging', 'level', 'INFO')
    parser.set('logging', 'database', 'sqlite:///:memory:')
    parser.set('logging', 'prefix', 'afpk_')
    parser.set('logging', 'format', '%(asctime)s] [%(levelname)s] module=%(module)s function=%(funcName)s %(message)s')  # noqa


def parse_flat(text, source='<string>'):
    """Parse the flat configuration format

    :param text: file content
    :param source: name used in error messages
    :returns: list of (section, option, value) in file order
    :raises ConfigurationError: on a line that is not ``section.key = value``
    """

    entries = []
    for number, line in enumerate(text.splitlines(), 1):
        stripped = line.split('#', 1)[0].strip()
        if not stripped:
            continue
        match = _LINE.match(stripped)
        if not match:
            raise ConfigurationError('Malformed line {}: {!r}'.format(number, line.strip()),
                                     locator='{}:{}'.format(source, number))
        entries.append((match.group('section'), match.group('option'), match.group('value').strip()))
    return entries


def read_flat(parser, filenames):
    """Read flat configuration files into parser, later files override
    earlier ones. Missing files are skipped.

    :returns: list of files that were read
    """

    if isinstance(filenames, str):
        filenames = [filenames]

    loaded = []
    for filename in filenames:
        if not filename or not os.path.isfile(filename):
            continue
        try:
            with io.open(filename, encoding='utf-8') as fp:
                text = fp.read()
        except (IOError, UnicodeDecodeError) as e:
            raise ConfigurationError('Could not read configuration: {}'.format(e), locator=filename)
        for section, option, value in parse_flat(text, filename):
            if not parser.has_section(section):
                parser.add_section(section)
            parser.set(section, option, value)
        loaded.append(filename)
    return loaded


def write_flat(parser, fp):
    """Write all options as sorted ``section.key = value`` lines
    """

    for section in sorted(parser.sections()):
        for option in sorted(parser.options(section)):
            fp.write(u'{}.{} = {}\n'.format(section, option, parser.get(section, option, raw=True)))


def dumps(parser=None):
    """Flat text of parser (default: the loaded configuration)
    """

    buf = io.StringIO()
    write_flat(parser or CONFIG, buf)
    return buf.getvalue()


def config_hash(parser=None):
    """SHA-256 of the sorted flat text, used in report footers
    """

    return hashlib.sha256(dumps(parser).encode('utf-8')).hexdigest()


def is_known_option(section, option, extra=()):
    """Check a key against the defaults, the indexed patterns and extra
    (section, option) pairs declared by an experiment
    """

    if (section, option) in extra:
        return True
    defaults = new_parser()
    set_defaults(defaults)
    if defaults.has_section(section) and defaults.has_option(section, option):
        return True
    return any(section == psec and pattern.match(option) for psec, pattern in PATTERN_OPTIONS)


def check_keys(parser, extra=()):
    """Reject keys the configuration schema does not know

    :raises ConfigurationError: listing the first unknown key
    """

    for section in parser.sections():
        for option in parser.options(section):
            if not is_known_option(section, option, extra):
                raise ConfigurationError('Unknown configuration key {}.{}'.format(section, option),
                                         locator='{}.{}'.format(section, option))


def load_configuration(cfgfiles=None):
    """Load AFPK configuration from configuration files.
    The later configuration file in the array overwrites configuration
    from the first.

    :param cfgfiles: list of configuration files
    """

    global CONFIG

    LOGGER.info('loading configuration')
    CONFIG = new_parser()
    set_defaults(CONFIG)

    if not cfgfiles:
        cfgfiles = _get_default_config_files_location()

    loaded_files = read_flat(CONFIG, cfgfiles)
    if loaded_files:
        LOGGER.info('Configuration file(s) {} loaded'.format(loaded_files))
    else:
        LOGGER.info('No configuration files loaded. Using default values')

    _check_config()


def get_thread_count():
    """Thread count for FFTs and worker pools: ``AFPK_THREADS``, then
    ``processing.threads``, then the number of cores
    """

    threads = os.getenv('AFPK_THREADS') or get_config_value('processing', 'threads')
    try:
        threads = int(threads)
    except (TypeError, ValueError):
        raise ConfigurationError('Thread count {!r} is not an integer'.format(threads),
                                 locator='processing.threads')
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


def _check_config():
    """Check some configuration values
    """
    global CONFIG

    if os.getenv('AFPK_THREADS'):
        LOGGER.debug('AFPK_THREADS overrides processing.threads')
        CONFIG.set('processing', 'threads', os.getenv('AFPK_THREADS'))

    confvalue = CONFIG.get('output', 'directory')
    if not os.path.isabs(confvalue):
        LOGGER.debug('output->directory configuration value {} is not absolute path, making it absolute to {}'.format(
                     confvalue, os.path.abspath(confvalue)))
        CONFIG.set('output', 'directory', os.path.abspath(confvalue))

    level = CONFIG.get('logging', 'level')
    if not isinstance(logging.getLevelName(level.upper()), int):
        raise ConfigurationError('Unknown logging level {}'.format(level), locator='logging.level')


def _get_default_config_files_location():
    """Get the locations of the standard configuration files. These are
    Unix/Linux:
        1. `/etc/afpk.cfg`
        2. `$HOME/.afpk.cfg`

    Both:
        1. `$AFPK_CFG environment variable`
    :returns: configuration files
    :rtype: list of strings
    """

    if os.getenv("AFPK_CFG"):
        LOGGER.debug('using AFPK_CFG environment variable')
        cfgfiles = [os.getenv("AFPK_CFG")]
    else:
        LOGGER.debug('trying to estimate the default location')
        cfgfiles = ["/etc/afpk.cfg"]
        homePath = os.getenv("HOME")
        if homePath:
            cfgfiles.append(os.path.join(homePath, ".afpk.cfg"))

    return cfgfiles
