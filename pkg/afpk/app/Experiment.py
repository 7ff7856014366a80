##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

import logging

from afpk import processing
from afpk.app.Common import grid_from_config, operator_from_config, time_from_config
from afpk.exceptions import AcceptanceFailure
from afpk.fraccalc import TimeGrid
from afpk.inout.inputs import LiteralInput
from afpk.response.status import RUN_STATUS

LOGGER = logging.getLogger("AFPK")


class Experiment(object):
    """
    :param handler: A callable invoked with an :class:`ExperimentRequest` and
                    an :class:`ExperimentResponse`; it adds reports and
                    acceptance checks to the response.
    :param string identifier: experiment kind, the value of ``experiment.kind``
    :param string title: Human readable title of the experiment.
    :param string abstract: Brief narrative description of the experiment.
    :param inputs: :class:`afpk.inout.inputs.LiteralInput` objects in the
                   experiment section
    :param reports: list of (report title, column description) pairs,
                    listed by ``afpk --help``
    """

    def __init__(self, handler, identifier, title, abstract='', inputs=[], reports=[]):
        self.identifier = identifier
        self.handler = handler
        self.title = title
        self.abstract = abstract
        self.inputs = inputs
        self.reports = reports

    @property
    def json(self):

        return {
            'identifier': self.identifier,
            'title': self.title,
            'abstract': self.abstract,
            'inputs': [i.json for i in self.inputs],
            'reports': [{'title': t, 'columns': c} for t, c in self.reports],
        }

    @property
    def extra_keys(self):
        """(section, option) pairs the configuration may carry for this kind"""
        return [(i.section, i.option) for i in self.inputs]

    def read_inputs(self, parser):
        """Typed experiment parameters keyed by option name"""
        return {inpt.option: inpt.clone().read(parser) for inpt in self.inputs}

    def describe(self):
        """Help text: title, abstract, parameters and CSV schemas"""

        lines = ['{}: {}'.format(self.identifier, self.title)]
        if self.abstract:
            lines.append('    {}'.format(self.abstract))
        for inpt in self.inputs:
            lines.append('    {} ({}, default {})'.format(inpt.identifier, inpt.data_type, inpt.default))
        for title, columns in self.reports:
            lines.append('    {}.csv: {}'.format(title, columns))
        return '\n'.join(lines)

    def execute(self, request, response):
        """Run the handler and settle the response status

        :raises AcceptanceFailure: when a check recorded in the response failed
        """

        LOGGER.info('Started experiment {}'.format(self.identifier))
        response._update_status(RUN_STATUS.STARTED, 'Experiment {} started'.format(self.identifier))
        self.handler(request, response)
        if response.failures:
            message = '; '.join(response.failures)
            response._update_status(RUN_STATUS.REJECTED, message)
            raise AcceptanceFailure(message, locator=self.identifier)
        response._update_status(RUN_STATUS.SUCCEEDED, 'Experiment {} finished'.format(self.identifier))
        return response


class ExperimentRequest(object):
    """Everything a handler reads from the configuration

    :param parser: loaded configuration
    :param experiment: :class:`Experiment` the request is for
    """

    def __init__(self, parser, experiment):
        self.parser = parser
        self.kind = experiment.identifier
        self.spec = operator_from_config(parser)
        times = time_from_config(parser)
        self.alpha = times['alpha']
        self.beta = times['beta']
        self.t = times['t']
        self.T = times['T']
        self.nt = times['nt']
        self.seed = LiteralInput('output.seed', data_type='nonNegativeInteger', default='0').read(parser)
        self.fields = LiteralInput('output.fields', data_type='boolean', default='false').read(parser)
        self.chunk = LiteralInput('processing.chunk', data_type='positiveInteger', default='4096').read(parser)
        self.inputs = experiment.read_inputs(parser)
        # fail on a bad box before any work starts
        self.grid(self.t)

    def grid(self, t=None, alpha=None):
        """Empty field of the configured box, natural scale at time t"""
        return grid_from_config(self.parser, self.spec, self.alpha if alpha is None else alpha,
                                self.t if t is None else t)

    def time_grid(self, nt=None):
        return TimeGrid.uniform(self.T, nt or self.nt)

    @property
    def executor(self):
        return processing.Executor()


class ExperimentResponse(object):
    """Collects outputs and acceptance checks of one run

    :param storage: :class:`afpk.inout.storage.StorageAbstract`
    :param str config_hash: hash written into every report footer
    """

    def __init__(self, storage, config_hash=''):
        self.storage = storage
        self.config_hash = config_hash
        self.status = RUN_STATUS.ACCEPTED
        self.message = ''
        self.outputs = []
        self.failures = []

    def _update_status(self, status, message):
        LOGGER.debug('Run status {}: {}'.format(status, message))
        self.status = status
        self.message = message

    def add_report(self, report):
        self.outputs.append(self.storage.store_report(report, self.config_hash))

    def add_field(self, name, field):
        self.outputs.append(self.storage.store_field(name, field))

    def add_series(self, prefix, series):
        for k in range(series.grid.n + 1):
            name = '{}_{}'.format(prefix, str(k).zfill(len(str(series.grid.n))))
            self.add_field(name, series.node(k))

    def check(self, name, passed, detail=''):
        """Record an acceptance check"""

        if passed:
            LOGGER.info('Check {} passed {}'.format(name, detail))
        else:
            LOGGER.warning('Check {} failed {}'.format(name, detail))
            self.failures.append('{} failed {}'.format(name, detail).strip())
        return passed
