#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Rank hypotheses of the stability, costability and factorization lifts.

A hypothesis is a chain map between total complexes, a degree and a kind,
``surjective`` or ``injective`` on hypercohomology. In ``check`` mode the
first failure raises :class:`HypothesisFailed`; in ``report`` mode every
hypothesis is evaluated and recorded, and a failing window audit is recorded
instead of raised.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import namedtuple

from pdeform.cohomology.hypercohomology import cohomology_problem
from pdeform.cohomology.quotient import induced_matrix
from pdeform.cohomology.quotient import matrix_rank
from pdeform.utils.errors import HypothesisFailed
from pdeform.utils.errors import WindowInsufficient

LOGGER = logging.getLogger(__name__)

HYPOTHESIS_MODES = ('check', 'report', 'skip')

Hypothesis = namedtuple('Hypothesis', ['name', 'chain', 'degree', 'kind'])

HypothesisLine = namedtuple('HypothesisLine', ['name', 'rank', 'required', 'passed', 'note'])


class HypothesisReport(object):

    def __init__(self, mode):
        self.mode = mode
        self.entries = []

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    def lines(self):
        out = ['HYPOTHESES mode={0}'.format(self.mode)]
        for e in self.entries:
            out.append('  {0}: rank {1} required {2} {3}{4}'.format(
                e.name, e.rank, e.required, 'PASS' if e.passed else 'FAIL',
                ' ({0})'.format(e.note) if e.note else ''))
        return out

    def as_dict(self):
        return {'mode': self.mode, 'passed': self.passed,
                'entries': [e._asdict() for e in self.entries]}


def induced_rank(chain, k, window=None, audit=True, njobs=None):
    """``(rank, dim source, dim target)`` of ``H^k`` of a chain map."""
    source_problem = cohomology_problem(chain.source, k, njobs)
    target_problem = cohomology_problem(chain.target, k, njobs)
    source = source_problem.compute(window, audit)
    target = target_problem.compute(window, audit)
    rows = induced_matrix(source, target_problem, target, lambda x: chain(x, k))
    return matrix_rank(rows, target.dimension), source.dimension, target.dimension


def check_hypotheses(hypotheses, mode='check', window=None, audit=True, njobs=None):
    """Evaluates the hypotheses in order.

    Raises:
        HypothesisFailed: in ``check`` mode, at the first failing rank.
        WindowInsufficient: in ``check`` mode, if a group fails its audit.
    """
    report = HypothesisReport(mode)
    if mode == 'skip':
        return report
    for hyp in hypotheses:
        try:
            rank, dim_source, dim_target = induced_rank(hyp.chain, hyp.degree, window, audit,
                                                        njobs)
        except WindowInsufficient as err:
            if mode == 'check':
                raise
            report.entries.append(HypothesisLine(hyp.name, None, None, False, str(err)))
            continue
        required = dim_target if hyp.kind == 'surjective' else dim_source
        passed = rank == required
        LOGGER.info('hypothesis %s: rank %d of %d', hyp.name, rank, required)
        if not passed and mode == 'check':
            raise HypothesisFailed(hyp.name, rank, required)
        report.entries.append(HypothesisLine(hyp.name, rank, required, passed, ''))
    return report


def hypothesis_failure(report, name, tau):
    """:class:`HypothesisFailed` for a correction that does not exist at ``tau``.

    The rank is taken from ``report`` when the hypothesis was evaluated.
    """
    detail = 'no correction exists at tau={0}'.format(list(tau))
    for entry in report.entries:
        if entry.name == name:
            return HypothesisFailed(name, entry.rank, entry.required, detail)
    return HypothesisFailed(name, None, None, detail)
