#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""The deformation spaces PD, PD^1 and PD relative to a family.

Each space is assembled from its defining relations as printed, not from the
total complex. The total complex only enters through :func:`cone_check`,
which recomputes PD as ``H^1`` of the cone of ``F: T_X -> f*T_Y``.

Block layout:

* PD: ``tau`` in ``C^0(f*T)``, ``rho`` in ``C^1(T_X)``, ``lam`` in
  ``C^0(wedge^2 T_X)``.
* PD^1: ``xi`` in ``C^1(f*T)``, ``eta`` in ``C^0(wedge^2 f*T)``, ``s`` in
  ``C^2(T_X)``, ``r`` in ``C^1(wedge^2 T_X)``, ``w`` in ``C^0(wedge^3 T_X)``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

from sympy import QQ

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cech_cochain import cech_delta
from pdeform.cohomology.cech_cochain import pullback_cochain
from pdeform.cohomology.cochain_space import CechBlock
from pdeform.cohomology.cochain_space import CochainSpace
from pdeform.cohomology.cochain_space import KeyIndex
from pdeform.cohomology.cochain_space import ScalarBlock
from pdeform.cohomology.cochain_space import element_is_zero
from pdeform.cohomology.cochain_space import iter_terms
from pdeform.cohomology.hypercohomology import cone_problem
from pdeform.cohomology.hypercohomology import tangent_map
from pdeform.cohomology.quotient import QuotientProblem
from pdeform.cohomology.quotient import describe_element
from pdeform.complexes.operators import chain_map_F
from pdeform.complexes.operators import lichnerowicz_d
from pdeform.complexes.operators import pi_f
from pdeform.complexes.sheaf_slot import PullbackSlot
from pdeform.complexes.sheaf_slot import TangentSlot
from pdeform.utils.errors import NotACocycle
from pdeform.utils.linalg_util import rank

LOGGER = logging.getLogger(__name__)


def base_map(fmap):
    """The map with every deformation parameter set to zero."""
    return fmap if not fmap.ring.r else fmap.at_zero()


class MapOperators(object):
    """Cochain-level ``F``, ``pi_f``, ``f*``, the Lichnerowicz ``d`` and ``delta``.

    Slots are cached per degree so that cochains built by different callers
    share them.
    """

    def __init__(self, fmap):
        self.fmap = base_map(fmap)
        self._tangent = {}
        self._pullback = {}
        self._target = {}

    def tangent(self, p):
        if p not in self._tangent:
            self._tangent[p] = TangentSlot(self.fmap.source, p)
        return self._tangent[p]

    def pullback(self, p):
        if p not in self._pullback:
            self._pullback[p] = PullbackSlot(self.fmap, p)
        return self._pullback[p]

    def target_tangent(self, p):
        if p not in self._target:
            self._target[p] = TangentSlot(self.fmap.target, p)
        return self._target[p]

    def F(self, c):
        fmap = self.fmap
        return c.apply(lambda v, i: chain_map_F(v, fmap, i), self.pullback(c.slot.degree))

    def pi(self, c):
        fmap = self.fmap
        return c.apply(lambda v, i: pi_f(v, fmap, i), self.pullback(c.slot.degree + 1))

    def d(self, c):
        atlas = self.fmap.source
        return c.apply(lambda v, i: lichnerowicz_d(v, atlas.bivector(i)),
                       self.tangent(c.slot.degree + 1))

    def d_target(self, c):
        atlas = self.fmap.target
        return c.apply(lambda v, i: lichnerowicz_d(v, atlas.bivector(i)),
                       self.target_tangent(c.slot.degree + 1))

    def fstar(self, c):
        return pullback_cochain(c, self.fmap, self.pullback(c.slot.degree))

    @staticmethod
    def delta(c):
        return cech_delta(c)


class DeformationSpace(object):
    """A computed deformation space with its problem and result."""

    def __init__(self, name, problem, result):
        self.name = name
        self.problem = problem
        self.result = result

    @property
    def dimension(self):
        return self.result.dimension

    @property
    def basis(self):
        return self.result.basis

    def classify(self, element, aux=None):
        return self.problem.classify(self.result, element, aux)

    def verify_basis(self):
        """Re-evaluates the defining relations on every basis element."""
        for element in self.result.basis:
            self.problem.check_cocycle(element)
        return True

    def lines(self, with_basis=True):
        out = ['{0} dim={1} window={2} audit={3}'.format(
            self.name, self.dimension, self.result.window, self.result.audit)]
        if with_basis:
            for n, element in enumerate(self.result.basis):
                out.extend(describe_element(element, '  basis[{0}]'.format(n)))
        return out

    def as_dict(self):
        data = self.result.as_dict()
        data['name'] = self.name
        return data


# PD

def pd_blocks(ops):
    return [CechBlock('tau', ops.pullback(1), 0),
            CechBlock('rho', ops.tangent(1), 1),
            CechBlock('lam', ops.tangent(2), 0)]


def pd_relations(ops, el, directions=(), theta=()):
    tau, rho, lam = el['tau'], el['rho'], el['lam']
    first = -ops.delta(tau) - ops.F(rho)
    second = ops.pi(tau) - ops.F(lam)
    for c, (rho_v, gamma_v) in zip(theta, directions):
        if c:
            first = first - rho_v.scale(c)
            second = second - gamma_v.scale(c)
    return OrderedDict([('tau_delta', first),
                        ('tau_pi', second),
                        ('rho_delta', ops.delta(rho)),
                        ('lam_delta', ops.delta(lam) + ops.d(rho)),
                        ('lam_d', ops.d(lam))])


def pd_coboundary(ops, source):
    g = source['g']
    return OrderedDict([('tau', ops.F(g)), ('rho', -ops.delta(g)), ('lam', ops.d(g))])


def pd_problem(fmap, njobs=None, ops=None):
    ops = ops if ops is not None else MapOperators(fmap)
    return QuotientProblem('PD', pd_blocks(ops),
                           relations=lambda el: pd_relations(ops, el),
                           coboundary=lambda s: pd_coboundary(ops, s),
                           source_blocks=[CechBlock('g', ops.tangent(1), 0)], njobs=njobs)


def pd_space(fmap, window=None, audit=True, njobs=None):
    """PD of a Poisson map: the five relations modulo ``(Fg, -delta g, dg)``.

    Raises:
        WindowInsufficient: if the window audit fails.
    """
    problem = pd_problem(fmap, njobs)
    return DeformationSpace('PD', problem, problem.compute(window, audit))


def pd_element(ops, tau=None, rho=None, lam=None):
    return OrderedDict([
        ('tau', tau if tau is not None else CechCochain.zero(ops.pullback(1), 0)),
        ('rho', rho if rho is not None else CechCochain.zero(ops.tangent(1), 1)),
        ('lam', lam if lam is not None else CechCochain.zero(ops.tangent(2), 0))])


# PD^1

def pd1_blocks(ops):
    return [CechBlock('xi', ops.pullback(1), 1),
            CechBlock('eta', ops.pullback(2), 0),
            CechBlock('s', ops.tangent(1), 2),
            CechBlock('r', ops.tangent(2), 1),
            CechBlock('w', ops.tangent(3), 0)]


def pd1_relations(ops, el):
    xi, eta, s, r, w = el['xi'], el['eta'], el['s'], el['r'], el['w']
    return OrderedDict([
        ('xi_delta', ops.delta(xi) - ops.F(s)),
        ('eta_delta', ops.delta(eta) + ops.pi(xi) - ops.F(r)),
        ('eta_pi', ops.pi(eta) - ops.F(w)),
        ('w_d', ops.d(w)),
        ('w_delta', ops.d(r) - ops.delta(w)),
        ('r_delta', ops.d(s) - ops.delta(r)),
        ('s_delta', ops.delta(s))])


def pd1_coboundary(ops, source):
    a, u, c = source['a'], source['u'], source['c']
    return OrderedDict([
        ('xi', ops.F(u) - ops.delta(a)),
        ('eta', ops.F(c) + ops.pi(a)),
        ('s', ops.delta(u)),
        ('r', ops.delta(c) + ops.d(u)),
        ('w', ops.d(c))])


def pd1_source_blocks(ops):
    return [CechBlock('a', ops.pullback(1), 0),
            CechBlock('u', ops.tangent(1), 1),
            CechBlock('c', ops.tangent(2), 0)]


def pd1_problem(fmap, njobs=None, ops=None):
    ops = ops if ops is not None else MapOperators(fmap)
    return QuotientProblem('PD1', pd1_blocks(ops),
                           relations=lambda el: pd1_relations(ops, el),
                           coboundary=lambda s: pd1_coboundary(ops, s),
                           source_blocks=pd1_source_blocks(ops), njobs=njobs)


def pd1_space(fmap, window=None, audit=True, njobs=None):
    """PD^1, the space receiving obstructions of deformations with fixed target."""
    problem = pd1_problem(fmap, njobs)
    return DeformationSpace('PD1', problem, problem.compute(window, audit))


def pd1_element(ops, **parts):
    element = OrderedDict()
    for block in pd1_blocks(ops):
        value = parts.get(block.name)
        element[block.name] = value if value is not None else CechCochain.zero(block.slot,
                                                                                block.q)
    return element


# PD relative to a family

def check_family_direction(ops, rho_v, gamma_v):
    """Raises :class:`NotACocycle` unless ``(rho', gamma)`` is a 1-cocycle of ``f*T``."""
    residuals = OrderedDict([('delta', ops.delta(rho_v)),
                             ('mixed', ops.pi(rho_v) + ops.delta(gamma_v)),
                             ('pi', ops.pi(gamma_v))])
    if not element_is_zero(residuals):
        failing = [k for k, v in residuals.items() if not v.is_zero()]
        raise NotACocycle('family direction fails {0}'.format(', '.join(failing)))


def pd_family_problem(fmap, directions, njobs=None, ops=None):
    ops = ops if ops is not None else MapOperators(fmap)
    directions = list(directions)
    for rho_v, gamma_v in directions:
        check_family_direction(ops, rho_v, gamma_v)
    blocks = pd_blocks(ops) + ([ScalarBlock('theta', len(directions))] if directions else [])

    def relations(el):
        return pd_relations(ops, el, directions, el.get('theta', ()))

    def coboundary(source):
        image = pd_coboundary(ops, source)
        if directions:
            image['theta'] = (QQ(0),) * len(directions)
        return image

    return QuotientProblem('PDfam', blocks, relations=relations, coboundary=coboundary,
                           source_blocks=[CechBlock('g', ops.tangent(1), 0)], njobs=njobs)


def pd_family_space(fmap, directions, window=None, audit=True, njobs=None):
    """PD relative to a family with the given first-order directions.

    Args:
        directions (list): pairs ``(rho', gamma)`` of a 1-cochain of ``f*T``
            and a 0-cochain of ``wedge^2 f*T``.

    Raises:
        NotACocycle: if a direction is not a cocycle of ``f*T``.
    """
    problem = pd_family_problem(fmap, directions, njobs)
    return DeformationSpace('PDfam', problem, problem.compute(window, audit))


# cross-checks

def cone_check(fmap, window=None, audit=True, njobs=None):
    """``(dim PD, dim H^1(cone F))``, computed independently."""
    fmap = base_map(fmap)
    pd = pd_space(fmap, window, audit, njobs)
    cone = cone_problem(tangent_map(fmap), 1, njobs).compute(window, audit)
    LOGGER.info('PD dim %d, cone H^1 dim %d', pd.dimension, cone.dimension)
    return pd.dimension, cone.dimension


def non_degenerate(fmap, window=1):
    """True when ``F`` is injective on chart sections of every tangent power.

    Checked on the window-``window`` sections of each chart.
    """
    ops = MapOperators(fmap)
    top = max([ops.fmap.source.dimension(i) for i in range(len(ops.fmap.source))] + [0])
    for p in range(1, top + 1):
        space = CochainSpace([CechBlock('u', ops.tangent(p), 0)], window)
        index = KeyIndex()
        columns = [index.vector(iter_terms(OrderedDict([('u', ops.F(el['u']))])))
                   for el in (space.basis_element(n) for n in range(space.dimension))]
        if rank(columns, len(index)) != space.dimension:
            return False
    return True
