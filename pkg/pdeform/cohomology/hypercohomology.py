#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Total complexes of Cech cochains and their hypercohomology.

Column ``c`` of a complex contributes ``C^q`` of its slot to total degree
``q + c - 1``, so ``wedge^1`` Cech 0-cochains sit in degree 0. The total
differential on column ``c`` is ``(-1)^c delta + d``.

Besides plain hypercohomology the module builds, for a chain map
``F: A -> B`` of total complexes,

* the kernel complex (``T_{X/Y}`` for ``F`` the tangent map),
* the cokernel complex (``N_f``), whose closed cochains ``c`` need some
  ``x`` in ``A^{k+1}`` with ``Dc = F(x)``,
* the mapping cone ``cone^k = B^{k-1} + A^k``, ``d(b, a) = (-Db + F(a), Da)``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cech_cochain import cech_delta
from pdeform.cohomology.cech_cochain import nerve
from pdeform.cohomology.cech_cochain import pullback_cochain
from pdeform.cohomology.cochain_space import CechBlock
from pdeform.cohomology.cochain_space import element_add
from pdeform.cohomology.cochain_space import element_sub
from pdeform.cohomology.quotient import QuotientProblem
from pdeform.cohomology.quotient import describe_element
from pdeform.complexes.operators import chain_map_F
from pdeform.complexes.operators import pullback_complex
from pdeform.complexes.operators import tangent_complex

LOGGER = logging.getLogger(__name__)


class TotalComplex(object):
    """Total complex of the Cech double complex of a :class:`ComplexDescriptor`.

    Args:
        descriptor (ComplexDescriptor): the sheaf complex.
        tag (str): prefix of the block names, distinct per complex when
            elements of several complexes share one space.
    """

    def __init__(self, descriptor, tag):
        self.descriptor = descriptor
        self.tag = tag
        self.cover = descriptor.cover

    @property
    def name(self):
        return self.descriptor.name

    def block_name(self, column, q):
        return '{0}[{1},{2}]'.format(self.tag, column, q)

    def placements(self, k):
        """``(column, q)`` pairs of total degree ``k``."""
        top = nerve(self.cover).top
        result = []
        for column in self.descriptor.columns():
            q = k - column + 1
            if 0 <= q <= top:
                result.append((column, q))
        return result

    def blocks(self, k):
        return [CechBlock(self.block_name(c, q), self.descriptor.slot(c), q)
                for c, q in self.placements(k)]

    def part(self, element, column, q):
        """Cochain of ``element`` at ``(column, q)``; None when the column is absent."""
        slot = self.descriptor.slot(column)
        if slot is None:
            return None
        value = element.get(self.block_name(column, q))
        if value is None:
            return CechCochain.zero(slot, q)
        return value

    def element(self, parts):
        """Element of the total complex from ``{(column, q): cochain}``."""
        return OrderedDict((self.block_name(c, q), value) for (c, q), value in parts.items())

    def differential(self, element, k):
        """``D`` from degree ``k`` to ``k + 1``."""
        top = nerve(self.cover).top
        out = OrderedDict()

        def add(column, q, cochain):
            name = self.block_name(column, q)
            out[name] = out[name] + cochain if name in out else cochain

        for column, q in self.placements(k):
            x = element.get(self.block_name(column, q))
            if x is None or x.is_zero():
                continue
            if q + 1 <= top:
                delta = cech_delta(x)
                add(column, q + 1, delta if column % 2 == 0 else -delta)
            target = self.descriptor.slot(column + 1)
            if target is not None:
                add(column + 1, q, x.apply(
                    lambda v, i, c=column: self.descriptor.apply(v, i, c), target))
        return out

    def __repr__(self):
        return 'TotalComplex({0!r})'.format(self.name)


class ChainMap(object):
    """Cochain map between two total complexes, column by column.

    Args:
        source (TotalComplex): the domain.
        target (TotalComplex): the codomain.
        cochain_fn (callable): ``(cochain, column, target_slot) -> cochain``.
        name (str): label used in reports.
    """

    def __init__(self, source, target, cochain_fn, name='F'):
        self.source = source
        self.target = target
        self.cochain_fn = cochain_fn
        self.name = name

    def __call__(self, element, k):
        out = OrderedDict()
        for column, q in self.source.placements(k):
            x = element.get(self.source.block_name(column, q))
            slot = self.target.descriptor.slot(column)
            if x is None or x.is_zero() or slot is None:
                continue
            out[self.target.block_name(column, q)] = self.cochain_fn(x, column, slot)
        return out


def tangent_total(atlas, tag='T'):
    return TotalComplex(tangent_complex(atlas), tag)


def pullback_total(fmap, tag='P'):
    return TotalComplex(pullback_complex(fmap), tag)


def tangent_map(fmap, source=None, target=None):
    """``F: T_X -> f*T_Y`` on total complexes."""
    source = source if source is not None else tangent_total(fmap.source)
    target = target if target is not None else pullback_total(fmap)
    return ChainMap(source, target,
                    lambda x, c, slot: x.apply(lambda v, i: chain_map_F(v, fmap, i), slot), 'F')


def pullback_map(fmap, source=None, target=None):
    """``f*: T_Y -> f*T_Y`` on total complexes."""
    source = source if source is not None else tangent_total(fmap.target, 'Y')
    target = target if target is not None else pullback_total(fmap)
    return ChainMap(source, target, lambda x, c, slot: pullback_cochain(x, fmap, slot), 'f*')


class CohomologyReport(object):
    """Hypercohomology of one complex in a range of degrees.

    Attributes:
        name (str): the complex.
        results (OrderedDict): degree -> :class:`CohomologyResult`.
        problems (OrderedDict): degree -> :class:`QuotientProblem`.
    """

    def __init__(self, name):
        self.name = name
        self.results = OrderedDict()
        self.problems = OrderedDict()

    def add(self, k, problem, result):
        self.problems[k] = problem
        self.results[k] = result

    def __getitem__(self, k):
        return self.results[k]

    def dimensions(self):
        return OrderedDict((k, r.dimension) for k, r in self.results.items())

    def lines(self, with_basis=True):
        out = ['COHOMOLOGY {0}'.format(self.name)]
        for k, result in self.results.items():
            out.append('H^{0} dim={1} window={2} audit={3}'.format(
                k, result.dimension, result.window, result.audit))
            if with_basis:
                for n, element in enumerate(result.basis):
                    out.extend(describe_element(element, '  basis[{0}]'.format(n)))
        return out

    def as_dict(self):
        return {'name': self.name,
                'degrees': dict((str(k), r.as_dict()) for k, r in self.results.items())}


def cohomology_problem(total, k, njobs=None):
    """``H^k`` of a total complex as a :class:`QuotientProblem`."""
    return QuotientProblem('H^{0}({1})'.format(k, total.name), total.blocks(k),
                           relations=lambda x: total.differential(x, k),
                           coboundary=lambda s: total.differential(s, k - 1),
                           source_blocks=total.blocks(k - 1), njobs=njobs)


def hypercohomology(total, degrees=(0, 1), window=None, audit=True, njobs=None):
    """Hypercohomology of ``total`` in the given degrees.

    Raises:
        WindowInsufficient: if a dimension changes between ``D`` and
            ``D + audit_step``.
    """
    report = CohomologyReport(total.name)
    for k in degrees:
        problem = cohomology_problem(total, k, njobs)
        report.add(k, problem, problem.compute(window, audit))
    return report


def relative_problem(fmap_chain, k, njobs=None):
    """``H^k`` of the kernel complex of a chain map."""
    source = fmap_chain.source

    def relations(x):
        return element_add(source.differential(x, k), fmap_chain(x, k))

    return QuotientProblem('H^{0}(ker {1})'.format(k, fmap_chain.name), source.blocks(k),
                           relations=relations,
                           coboundary=lambda s: source.differential(s, k - 1),
                           source_blocks=source.blocks(k - 1),
                           source_constraint=lambda s: fmap_chain(s, k - 1), njobs=njobs)


def cokernel_problem(fmap_chain, k, njobs=None):
    """``H^k`` of the cokernel complex of a chain map.

    Cocycles are cochains ``c`` of the target with ``Dc = F(x)`` for some
    auxiliary ``x`` in degree ``k + 1`` of the source; coboundaries are
    ``Ds + F(y)``. When the source has nothing in degree ``k + 1`` the
    relation is ``Dc = 0`` and takes no auxiliary argument.
    """
    source, target = fmap_chain.source, fmap_chain.target

    def relations(c, x=None):
        dc = target.differential(c, k)
        if x is None:
            return dc
        return element_sub(dc, fmap_chain(x, k + 1))

    def coboundary(pair):
        s = OrderedDict((b.name, pair[b.name]) for b in target.blocks(k - 1))
        y = OrderedDict((b.name, pair[b.name]) for b in source.blocks(k))
        return element_add(target.differential(s, k - 1), fmap_chain(y, k))

    return QuotientProblem('H^{0}(coker {1})'.format(k, fmap_chain.name), target.blocks(k),
                           relations=relations, coboundary=coboundary,
                           source_blocks=target.blocks(k - 1) + source.blocks(k),
                           aux_blocks=source.blocks(k + 1), njobs=njobs)


def split_cone(fmap_chain, element, k):
    """``(b, a)`` parts of a cone cochain of degree ``k``."""
    b = OrderedDict((blk.name, element[blk.name]) for blk in fmap_chain.target.blocks(k - 1)
                    if blk.name in element)
    a = OrderedDict((blk.name, element[blk.name]) for blk in fmap_chain.source.blocks(k)
                    if blk.name in element)
    return b, a


def cone_differential(fmap_chain, element, k):
    b, a = split_cone(fmap_chain, element, k)
    source, target = fmap_chain.source, fmap_chain.target
    first = element_sub(fmap_chain(a, k), target.differential(b, k - 1))
    return element_add(first, source.differential(a, k))


def cone_problem(fmap_chain, k, njobs=None):
    """``H^k`` of the mapping cone of a chain map."""
    source, target = fmap_chain.source, fmap_chain.target
    return QuotientProblem('H^{0}(cone {1})'.format(k, fmap_chain.name),
                           target.blocks(k - 1) + source.blocks(k),
                           relations=lambda x: cone_differential(fmap_chain, x, k),
                           coboundary=lambda s: cone_differential(fmap_chain, s, k - 1),
                           source_blocks=target.blocks(k - 2) + source.blocks(k - 1),
                           njobs=njobs)
