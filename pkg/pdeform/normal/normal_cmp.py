#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""The normal complexes of a Poisson submanifold and their comparison.

For X cut out by ``w^1..w^r`` in a chart of Y, the complex ``N_{X/Y}``
places ``N_{X/Y} (x) wedge^p T_Y|_X`` in column ``p + 1``; a section is one
pullback multivector ``u^a`` per defining coordinate. The comparison map
from ``N_i``, the cokernel of ``F: T_X -> i*T_Y``, is

    phi(g)^a = (-1)^p [g, w^a]|_X          for g of degree p + 1,

where ``[g, w] = g <- dw`` only sees the restriction of g. Writing
``dw^a = sum_b w^b T^b_a`` (possible because the bivector is tangent to X),
the differential that makes phi a chain map is

    nabla(u)^a = pi_i(u^a) - sum_b u^b ^ T^b_a|_X.

Both come from the graded Jacobi identity applied to ``[[g, Pi], w^a]``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

from pdeform.cohomology.hypercohomology import ChainMap
from pdeform.cohomology.hypercohomology import TotalComplex
from pdeform.cohomology.hypercohomology import cohomology_problem
from pdeform.cohomology.hypercohomology import cokernel_problem
from pdeform.cohomology.hypercohomology import pullback_total
from pdeform.cohomology.hypercohomology import tangent_map
from pdeform.cohomology.hypercohomology import tangent_total
from pdeform.cohomology.quotient import induced_matrix
from pdeform.cohomology.quotient import matrix_rank
from pdeform.complexes.operators import ComplexDescriptor
from pdeform.complexes.operators import max_dimension
from pdeform.complexes.operators import pi_f
from pdeform.complexes.sheaf_slot import NormalBundleSlot
from pdeform.complexes.sheaf_slot import NormalSection
from pdeform.geometry.atlas import first_nonzero
from pdeform.geometry.multivector import wedge
from pdeform.geometry.submanifold import validate_submanifold
from pdeform.utils import gconfig
from pdeform.utils.errors import ContextMismatch
from pdeform.utils.errors import InvalidSubmanifold
from pdeform.utils.grammar_util import format_rational

LOGGER = logging.getLogger(__name__)


def phi_map(g, sub, k):
    """``phi`` of a pullback multivector of degree ``p + 1`` over chart ``k`` of X.

    Raises:
        InvalidSubmanifold: if ``g`` is a function.
    """
    if g.degree == 0:
        raise InvalidSubmanifold('phi starts at wedge^1 T_Y|_X')
    p = g.degree - 1
    frame = sub.inclusion().frame(k)
    parts = []
    for name in sub.defining[sub.charts[k]]:
        value = g.right_derivative(frame.index(name))
        parts.append(value if p % 2 == 0 else -value)
    return NormalSection(parts)


def nabla_d(u, sub, k):
    """``nabla`` of a section of ``N_{X/Y} (x) wedge^p T_Y|_X`` over chart ``k``.

    Raises:
        InvalidSubmanifold: if the ambient bivector is not tangent to X.
    """
    inclusion = sub.inclusion()
    table = sub.tangential(k)
    parts = []
    for a in range(sub.codimension):
        value = pi_f(u.components[a], inclusion, k)
        for b in range(sub.codimension):
            if not table[b][a].is_zero() and not u.components[b].is_zero():
                value = value - wedge(u.components[b], table[b][a])
        parts.append(value)
    return NormalSection(parts)


def normal_complex(sub):
    """``N_{X/Y}``: column ``p + 1`` holds :class:`NormalBundleSlot` of degree ``p``."""
    top = max_dimension(sub.ambient)
    slots = dict((p + 1, NormalBundleSlot(sub, p)) for p in range(top))
    return ComplexDescriptor('N_{0}/{1}'.format(sub.name, sub.ambient.name), slots,
                             lambda u, i, c: nabla_d(u, sub, i), 'nabla')


def normal_total(sub, tag='N'):
    return TotalComplex(normal_complex(sub), tag)


def normal_map(sub, source=None, target=None):
    """``phi: i*T_Y -> N_{X/Y}`` on total complexes, column by column."""
    source = source if source is not None else pullback_total(sub.inclusion(), 'P')
    target = target if target is not None else normal_total(sub)
    return ChainMap(source, target,
                    lambda x, c, slot: x.apply(lambda v, i: phi_map(v, sub, i), slot), 'phi')


def check_chain_square(sub, value, k):
    """``nabla(phi(g)) - phi(pi_i(g))`` for one section; zero when phi is a chain map."""
    inclusion = sub.inclusion()
    return nabla_d(phi_map(value, sub, k), sub, k) - phi_map(pi_f(value, inclusion, k), sub, k)


class NormalComparison(object):
    """Dimensions and ranks of ``phi^k: H^k(N_i) -> H^k(N_{X/Y})``.

    Attributes:
        entries (dict): degree -> dict with ``source``, ``target``, ``rank``
            and ``matrix`` (rows indexed by the basis of ``H^k(N_i)``).
    """

    def __init__(self, sub):
        self.sub = sub
        self.entries = {}

    def add(self, k, source_dim, target_dim, rows):
        self.entries[k] = {'source': source_dim, 'target': target_dim,
                           'rank': matrix_rank(rows, target_dim), 'matrix': rows}

    @property
    def phi0_isomorphism(self):
        e = self.entries.get(0)
        return e is not None and e['source'] == e['target'] == e['rank']

    @property
    def phi1_injective(self):
        e = self.entries.get(1)
        return e is not None and e['rank'] == e['source']

    def lines(self):
        out = ['NORMAL {0} in {1}'.format(self.sub.name, self.sub.ambient.name)]
        for k in sorted(self.entries):
            e = self.entries[k]
            out.append('phi^{0}: H^{0}(N_i) dim={1} -> H^{0}(N_X/Y) dim={2} rank={3}'.format(
                k, e['source'], e['target'], e['rank']))
            for n, row in enumerate(e['matrix']):
                out.append('  row[{0}] ({1})'.format(n, ', '.join(format_rational(c)
                                                                  for c in row)))
        out.append('phi^0 isomorphism {0}'.format('yes' if self.phi0_isomorphism else 'NO'))
        if 1 in self.entries:
            out.append('phi^1 injective {0}'.format('yes' if self.phi1_injective else 'NO'))
        return out

    def as_dict(self):
        entries = {}
        for k, e in self.entries.items():
            entries[str(k)] = dict(e, matrix=[[format_rational(c) for c in row]
                                              for row in e['matrix']])
        return {'submanifold': self.sub.name, 'entries': entries,
                'phi0_isomorphism': self.phi0_isomorphism,
                'phi1_injective': self.phi1_injective}


def _check_inclusion(sub, inclusion):
    expected = sub.inclusion()
    if inclusion is None:
        return
    mismatch = InvalidSubmanifold('map {0} is not the inclusion of {1}'.format(
        inclusion.name, sub.name))
    if (inclusion.assignment != expected.assignment
            or inclusion.target.name != sub.ambient.name):
        raise mismatch
    for i, comps in expected.components.items():
        ctx = expected.source.ctx(i)
        try:
            given = [c.recast(ctx) for c in inclusion.components[i]]
        except (KeyError, ContextMismatch):
            raise mismatch
        if first_nonzero(a - b for a, b in zip(given, comps)) is not None:
            raise mismatch


def compare_normal_cohomology(sub, inclusion=None, degrees=(0, 1), window=None, audit=True,
                              njobs=None):
    """Compares ``H^k(N_i)`` with ``H^k(N_{X/Y})`` through ``phi``.

    Args:
        sub (SubmanifoldData): the submanifold.
        inclusion (PoissonMapData): optional inclusion map, checked against
            ``sub``.

    Returns:
        NormalComparison: ranks and matrices per degree. Surjectivity of
        ``phi^1`` is reported, never required.

    Raises:
        InvalidSubmanifold: if ``sub`` fails validation or ``inclusion``
            does not match it.
        WindowInsufficient: if a window audit fails.
    """
    report = validate_submanifold(sub)
    if not report.passed:
        raise InvalidSubmanifold('{0}: {1}'.format(report.subject, report.failures()[0]))
    _check_inclusion(sub, inclusion)
    window = gconfig.window if window is None else window
    incl = sub.inclusion()
    pullback = pullback_total(incl, 'P')
    tangent = tangent_map(incl, tangent_total(incl.source, 'T'), pullback)
    chain = normal_map(sub, pullback, normal_total(sub))
    comparison = NormalComparison(sub)
    for k in degrees:
        source_problem = cokernel_problem(tangent, k, njobs)
        target_problem = cohomology_problem(chain.target, k, njobs)
        source = source_problem.compute(window, audit)
        target = target_problem.compute(window, audit)
        rows = induced_matrix(source, target_problem, target, lambda x: chain(x, k))
        comparison.add(k, source.dimension, target.dimension, rows)
        LOGGER.info('phi^%d of %s: %d -> %d, rank %d', k, sub.name, source.dimension,
                    target.dimension, comparison.entries[k]['rank'])
    return comparison
