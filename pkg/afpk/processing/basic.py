##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

import logging

LOGGER = logging.getLogger("AFPK")


class Processing(object):
    """
    :class:`Processing` is an interface for running batches of independent
    jobs. Results always come back in job order.

    :param int threads: worker count
    """

    def __init__(self, threads=1):
        self.threads = max(1, int(threads))

    def map(self, func, jobs):
        raise NotImplementedError("Needs to be implemented in subclass.")

    def __call__(self, func, jobs):
        return self.map(func, jobs)


class Serial(Processing):
    """
    :class:`Serial` runs the jobs one after another in this process.
    """

    def map(self, func, jobs):
        return [func(job) for job in jobs]


class MultiProcessing(Processing):
    """
    :class:`MultiProcessing` runs the jobs in a pool of the
    :mod:`multiprocessing` module; func and jobs must be picklable.
    """

    def map(self, func, jobs):
        import multiprocessing
        jobs = list(jobs)
        if self.threads == 1 or len(jobs) < 2:
            return [func(job) for job in jobs]
        processes = min(self.threads, len(jobs))
        LOGGER.debug('Mapping {} jobs on {} processes'.format(len(jobs), processes))
        with multiprocessing.Pool(processes=processes) as pool:
            return pool.map(func, jobs)
