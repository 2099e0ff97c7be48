#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Rank audit of the four exact sequences around PD and PD^1.

(a) ``H^0 T_X -> H^0 f*T -> PD -> H^1 T_X -> H^1 f*T``
(b) ``0 -> H^1 T_{X/Y} -> PD -> H^0 N_f -> H^2 T_{X/Y}``
(c) ``H^1 T_X -> H^1 f*T -> PD^1 -> H^2 T_X -> H^2 f*T``
(d) ``0 -> H^2 T_{X/Y} -> PD^1 -> H^1 N_f -> H^3 T_{X/Y}``

Every arrow is evaluated on representatives and classified in its target, so
each sequence yields explicit matrices. Exactness at a middle term ``B`` of
``A -> B -> C`` means the composite vanishes and the two ranks add up to
``dim B``. The connecting maps into ``T_{X/Y}`` send ``c`` to ``D(x)`` for a
preimage ``x`` of ``Dc`` under ``F``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

from sympy import QQ

from pdeform.cohomology.hypercohomology import cohomology_problem
from pdeform.cohomology.hypercohomology import cokernel_problem
from pdeform.cohomology.hypercohomology import pullback_total
from pdeform.cohomology.hypercohomology import relative_problem
from pdeform.cohomology.hypercohomology import tangent_map
from pdeform.cohomology.hypercohomology import tangent_total
from pdeform.cohomology.pd_space import MapOperators
from pdeform.cohomology.pd_space import base_map
from pdeform.cohomology.pd_space import non_degenerate
from pdeform.cohomology.pd_space import pd1_element
from pdeform.cohomology.pd_space import pd1_problem
from pdeform.cohomology.pd_space import pd_element
from pdeform.cohomology.pd_space import pd_problem
from pdeform.cohomology.quotient import induced_matrix
from pdeform.cohomology.quotient import matrix_rank
from pdeform.cohomology.quotient import solve_preimage
from pdeform.utils import gconfig
from pdeform.utils.errors import WindowInsufficient

LOGGER = logging.getLogger(__name__)

PASS, FAIL, INCONCLUSIVE = 'PASS', 'FAIL', 'INCONCLUSIVE'


class Term(object):
    """One group of a sequence: label, problem and computed result (None for 0).

    ``unbounded`` marks a group whose dimension kept growing with the window;
    it is then represented by its truncation at the requested window.
    """

    def __init__(self, label, problem=None, result=None, unbounded=False):
        self.label = label
        self.problem = problem
        self.result = result
        self.unbounded = unbounded

    @property
    def dimension(self):
        return self.result.dimension if self.result is not None else 0


class SequenceAudit(object):
    """Matrices, ranks and verdicts for one sequence.

    A sequence with an unbounded term is only checked on truncations, so its
    verdict is ``INCONCLUSIVE`` whatever the rank arithmetic says.
    """

    def __init__(self, name, terms, matrices):
        self.name = name
        self.terms = terms
        self.matrices = matrices
        self.ranks = [matrix_rank(m, terms[k + 1].dimension) if m else 0
                      for k, m in enumerate(matrices)]
        self.exact = OrderedDict()
        for k in range(1, len(terms) - 1):
            composite = _compose(matrices[k - 1], matrices[k], terms[k + 1].dimension)
            ranks_fit = self.ranks[k - 1] + self.ranks[k] == terms[k].dimension
            self.exact[terms[k].label] = ranks_fit and not any(any(row) for row in composite)

    @property
    def unbounded(self):
        return [t.label for t in self.terms if t.unbounded]

    @property
    def verdict(self):
        if self.unbounded:
            return INCONCLUSIVE
        return PASS if all(self.exact.values()) else FAIL

    @property
    def passed(self):
        return self.verdict == PASS

    def lines(self):
        out = ['SEQUENCE {0}: {1}'.format(self.name, ' -> '.join(
            '{0}[{1}]'.format(t.label, t.dimension) for t in self.terms))]
        out.append('  ranks {0}'.format(' '.join(str(r) for r in self.ranks)))
        for label, ok in self.exact.items():
            out.append('  exact at {0}: {1}'.format(label, 'PASS' if ok else 'FAIL'))
        if self.unbounded:
            out.append('  unbounded {0}'.format(' '.join(self.unbounded)))
        out.append('  verdict {0}'.format(self.verdict))
        return out

    def as_dict(self):
        return {'name': self.name,
                'terms': [[t.label, t.dimension] for t in self.terms],
                'ranks': self.ranks,
                'exact': dict(self.exact),
                'unbounded': self.unbounded,
                'verdict': self.verdict}


def _compose(first, second, ncols):
    """Row-vector product: the matrix of ``second o first``."""
    result = []
    for row in first:
        total = [QQ(0)] * ncols
        for b, c in enumerate(row):
            if c:
                for k, v in enumerate(second[b]):
                    total[k] += c * v
        result.append(tuple(total))
    return result


class ExactnessReport(object):
    """The four sequence audits of one map and the extra checks made on it.

    Attributes:
        checks (OrderedDict): name -> bool for checks beyond the sequences.
    """

    def __init__(self, name):
        self.name = name
        self.sequences = []
        self.notes = []
        self.checks = OrderedDict()

    @property
    def verdict(self):
        verdicts = [s.verdict for s in self.sequences]
        if FAIL in verdicts or not all(self.checks.values()):
            return FAIL
        return INCONCLUSIVE if INCONCLUSIVE in verdicts else PASS

    @property
    def passed(self):
        return self.verdict == PASS

    def lines(self):
        out = ['EXACTNESS {0}'.format(self.name)]
        for seq in self.sequences:
            out.extend(seq.lines())
        out.extend(self.notes)
        out.append('verdict {0}'.format(self.verdict))
        return out

    def as_dict(self):
        return {'name': self.name, 'passed': self.passed, 'verdict': self.verdict,
                'notes': list(self.notes), 'checks': dict(self.checks),
                'sequences': [s.as_dict() for s in self.sequences]}


class _Context(object):
    """Problems and results shared by the four sequences."""

    def __init__(self, fmap, window, audit, njobs):
        self.fmap = base_map(fmap)
        self.window = gconfig.window if window is None else window
        self.audit = audit
        self.ops = MapOperators(self.fmap)
        self.T = tangent_total(self.fmap.source, 'T')
        self.P = pullback_total(self.fmap, 'P')
        self.F = tangent_map(self.fmap, self.T, self.P)
        self.njobs = njobs
        self._terms = {}

    def term(self, key):
        if key not in self._terms:
            kind, k = key
            if kind == 'T':
                problem = cohomology_problem(self.T, k, self.njobs)
                label = 'H{0}(T_X)'.format(k)
            elif kind == 'P':
                problem = cohomology_problem(self.P, k, self.njobs)
                label = 'H{0}(f*T_Y)'.format(k)
            elif kind == 'R':
                problem = relative_problem(self.F, k, self.njobs)
                label = 'H{0}(T_X/Y)'.format(k)
            elif kind == 'N':
                problem = cokernel_problem(self.F, k, self.njobs)
                label = 'H{0}(N_f)'.format(k)
            elif kind == 'PD':
                problem = pd_problem(self.fmap, self.njobs, self.ops)
                label = 'PD'
            else:
                problem = pd1_problem(self.fmap, self.njobs, self.ops)
                label = 'PD1'
            try:
                self._terms[key] = Term(label, problem, problem.compute(self.window, self.audit))
            except WindowInsufficient as err:
                if not self.audit:
                    raise
                LOGGER.warning('%s is unbounded, using its truncation: %s', label, err)
                self._terms[key] = Term(label, problem, problem.compute(self.window, False),
                                        unbounded=True)
        return self._terms[key]

    def matrix(self, source, target, fn, aux_fn=None):
        return induced_matrix(source.result, target.problem, target.result, fn, aux_fn)

    def tot(self, total, k, parts):
        placed = set(total.placements(k))
        return total.element(OrderedDict((key, value) for key, value in parts.items()
                                         if key in placed))

    def connecting(self, c, k):
        """``D(x)`` for ``F(x) = Dc``, ``c`` of degree ``k`` in ``f*T``."""
        target = self.P.differential(c, k)
        x = solve_preimage(lambda y: self.F(y, k + 1), self.T.blocks(k + 1), target,
                           self.window, njobs=self.njobs)
        if x is None:
            raise WindowInsufficient('no preimage under F for a class of H{0}(N_f)'.format(k))
        return self.T.differential(x, k + 1)


def sequence_a(ctx):
    T, P, ops = ctx.T, ctx.P, ctx.ops
    terms = [ctx.term(('T', 0)), ctx.term(('P', 0)), ctx.term(('PD', 1)),
             ctx.term(('T', 1)), ctx.term(('P', 1))]
    matrices = [
        ctx.matrix(terms[0], terms[1], lambda x: ctx.F(x, 0)),
        ctx.matrix(terms[1], terms[2], lambda u: pd_element(ops, tau=P.part(u, 1, 0))),
        ctx.matrix(terms[2], terms[3], lambda el: ctx.tot(T, 1, {(1, 1): el['rho'],
                                                                 (2, 0): el['lam']})),
        ctx.matrix(terms[3], terms[4], lambda x: ctx.F(x, 1))]
    return SequenceAudit('a', terms, matrices)


def sequence_b(ctx):
    T, P, ops = ctx.T, ctx.P, ctx.ops
    terms = [Term('0'), ctx.term(('R', 1)), ctx.term(('PD', 1)), ctx.term(('N', 0)),
             ctx.term(('R', 2))]

    def aux(el):
        return ctx.tot(T, 1, {(1, 1): el['rho'], (2, 0): el['lam']})

    matrices = [
        [],
        ctx.matrix(terms[1], terms[2], lambda x: pd_element(
            ops, rho=T.part(x, 1, 1), lam=T.part(x, 2, 0))),
        ctx.matrix(terms[2], terms[3], lambda el: ctx.tot(P, 0, {(1, 0): el['tau']}), aux),
        ctx.matrix(terms[3], terms[4], lambda c: ctx.connecting(c, 0))]
    return SequenceAudit('b', terms, matrices)


def sequence_c(ctx):
    T, P, ops = ctx.T, ctx.P, ctx.ops
    terms = [ctx.term(('T', 1)), ctx.term(('P', 1)), ctx.term(('PD1', 2)),
             ctx.term(('T', 2)), ctx.term(('P', 2))]
    matrices = [
        ctx.matrix(terms[0], terms[1], lambda x: ctx.F(x, 1)),
        ctx.matrix(terms[1], terms[2], lambda u: pd1_element(
            ops, xi=P.part(u, 1, 1), eta=P.part(u, 2, 0))),
        ctx.matrix(terms[2], terms[3], lambda el: ctx.tot(
            T, 2, {(1, 2): -el['s'], (2, 1): el['r'], (3, 0): el['w']})),
        ctx.matrix(terms[3], terms[4], lambda x: ctx.F(x, 2))]
    return SequenceAudit('c', terms, matrices)


def sequence_d(ctx):
    T, P, ops = ctx.T, ctx.P, ctx.ops
    terms = [Term('0'), ctx.term(('R', 2)), ctx.term(('PD1', 2)), ctx.term(('N', 1)),
             ctx.term(('R', 3))]

    def aux(el):
        return ctx.tot(T, 2, {(1, 2): -el['s'], (2, 1): el['r'], (3, 0): el['w']})

    matrices = [
        [],
        ctx.matrix(terms[1], terms[2], lambda x: pd1_element(
            ops, s=-T.part(x, 1, 2), r=T.part(x, 2, 1), w=T.part(x, 3, 0))),
        ctx.matrix(terms[2], terms[3], lambda el: ctx.tot(
            P, 1, {(1, 1): el['xi'], (2, 0): el['eta']}), aux),
        ctx.matrix(terms[3], terms[4], lambda c: ctx.connecting(c, 1))]
    return SequenceAudit('d', terms, matrices)


def exactness_audit(fmap, window=None, audit=True, njobs=None):
    """Computes every term and arrow of the four sequences and checks them.

    A term that fails its window audit is kept at its truncation and listed
    as unbounded; affine charts usually have such terms. Sequences through an
    unbounded term get the verdict INCONCLUSIVE, and so does the report
    unless some sequence or check fails outright.

    Raises:
        WindowInsufficient: if a connecting map has no preimage in the window
            or an arrow leaves the window of an unbounded term.
    """
    ctx = _Context(fmap, window, audit, njobs)
    report = ExactnessReport(ctx.fmap.name)
    for build in (sequence_a, sequence_b, sequence_c, sequence_d):
        seq = build(ctx)
        LOGGER.info('sequence %s: %s', seq.name, seq.verdict)
        report.sequences.append(seq)
    if non_degenerate(ctx.fmap):
        pd, normal = ctx.term(('PD', 1)), ctx.term(('N', 0))
        agrees = pd.dimension == normal.dimension
        report.checks['non-degenerate'] = agrees
        report.notes.append('non-degenerate: dim PD={0} dim H0(N_f)={1} {2}'.format(
            pd.dimension, normal.dimension, PASS if agrees else FAIL))
    return report
