##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""Command line entry point: ``afpk run|validate|version``
"""

import argparse
import logging
import sys

from afpk import __version__
from afpk.app import Runner
from afpk.exceptions import EXIT_CONFIG, EXIT_OK
from afpk.experiments import EXPERIMENTS

LOGGER = logging.getLogger('AFPK')


class Launcher(object):
    """Parses the command line and hands configurations to a
    :class:`afpk.app.Runner`
    """

    def __init__(self, experiments=EXPERIMENTS):
        self.runner = Runner(experiments)

    def epilog(self):
        sections = ['experiment kinds:'] + [e.describe() for e in self.runner.experiments.values()]
        sections.append('environment: AFPK_THREADS overrides processing.threads')
        return '\n\n'.join(sections)

    def create_parser(self):
        parser = argparse.ArgumentParser(
            prog='afpk', description='Numerical lab for time-fractional anisotropic non-local equations.',
            epilog=self.epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
        commands = parser.add_subparsers(dest='command', metavar='command')
        run = commands.add_parser('run', help='Run the experiment of a configuration file')
        run.add_argument('config', help='Path to the flat section.key = value configuration')
        validate = commands.add_parser('validate', help='Check a configuration without running it')
        validate.add_argument('config', help='Path to the flat section.key = value configuration')
        commands.add_parser('version', help='Print the version')
        return parser

    def run(self, args, stream=None):
        if args.command == 'run':
            LOGGER.debug('running {}'.format(args.config))
            return self.runner.run(args.config, stream=stream)
        if args.command == 'validate':
            return self.runner.validate(args.config)
        if args.command == 'version':
            sys.stdout.write('afpk {}\n'.format(__version__))
            return EXIT_OK
        return EXIT_CONFIG


def main(argv=None):
    """Run the command line, returning the exit code"""

    launcher = Launcher()
    parser = launcher.create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits 0, usage errors exit 2
        return e.code if e.code is not None else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    return launcher.run(args, stream=sys.stderr)


def launcher():
    sys.exit(main())


if __name__ == '__main__':
    launcher()
