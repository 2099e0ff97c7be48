#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Constructive stability and costability lifts.

Stability: given a deformation of the target over ``A``, build a source
deformation and a Poisson map over ``A`` that reduce to f. Each small
extension is handled in two stages:

1. the residuals ``(K, M, Q/2)`` of the lifted source are killed by
   ``(u, c)`` with ``(delta u, delta c + du, dc) = -(K, M, Q/2)``; this is
   where ``H^2(F)`` injective is used;
2. the map residual ``(-G, -P, 0, 0, 0)`` is killed by ``(a, u', c')``
   solving the PD^1 coboundary equation; this is where ``H^1(F)``
   surjective is used.

Costability swaps the roles of source and target and uses
``f*: T_Y -> f*T_Y`` in place of ``F``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

from sympy import QQ

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cochain_space import CechBlock
from pdeform.cohomology.cochain_space import element_scale
from pdeform.cohomology.hypercohomology import pullback_map
from pdeform.cohomology.hypercohomology import pullback_total
from pdeform.cohomology.hypercohomology import tangent_map
from pdeform.cohomology.hypercohomology import tangent_total
from pdeform.cohomology.pd_space import MapOperators
from pdeform.cohomology.pd_space import base_map
from pdeform.cohomology.pd_space import pd1_coboundary
from pdeform.cohomology.pd_space import pd1_element
from pdeform.cohomology.pd_space import pd1_source_blocks
from pdeform.cohomology.quotient import solve_preimage
from pdeform.deformation.datum import DeformationDatum
from pdeform.deformation.datum import add_to_atlas
from pdeform.deformation.datum import add_to_components
from pdeform.deformation.datum import lift_map
from pdeform.deformation.datum import make_rng
from pdeform.deformation.datum import require_valid
from pdeform.deformation.datum import validate_deformation
from pdeform.deformation.hypotheses import Hypothesis
from pdeform.deformation.hypotheses import check_hypotheses
from pdeform.deformation.hypotheses import hypothesis_failure
from pdeform.deformation.obstruction import LiftCertificate
from pdeform.deformation.residuals import atlas_residuals
from pdeform.deformation.residuals import map_residuals
from pdeform.geometry.atlas import validate_atlas
from pdeform.geometry.atlas import validate_map
from pdeform.utils import gconfig
from pdeform.utils.errors import InvalidDatum
from pdeform.utils.errors import InvariantViolation

LOGGER = logging.getLogger(__name__)


def atlas_correction(atlas, base_atlas, tau, slot_of, d_of, window=None, njobs=None):
    """``(u, c)`` with ``(delta u, delta c + du, dc) = -(K, M, Q/2)``.

    Args:
        atlas (PoissonAtlas): a lift over ``A~`` of a valid atlas over ``A``.
        slot_of (callable): degree -> tangent slot of ``base_atlas``.
        d_of (callable): the Lichnerowicz differential on cochains of those slots.

    Returns:
        OrderedDict: blocks ``u`` and ``c``, or None when the residual class
        is not zero.
    """
    window = gconfig.window if window is None else window
    K, M, Q = atlas_residuals(atlas, base_atlas, tau, slot_of)
    target = OrderedDict([('s', -K), ('r', -M), ('w', -Q.scale(QQ(1, 2)))])

    def image(src):
        u, c = src['u'], src['c']
        return OrderedDict([('s', MapOperators.delta(u)),
                            ('r', MapOperators.delta(c) + d_of(u)),
                            ('w', d_of(c))])

    blocks = [CechBlock('u', slot_of(1), 1), CechBlock('c', slot_of(2), 0)]
    return solve_preimage(image, blocks, target, window, njobs=njobs)


def _check_input(given, base, side):
    if given.base.name != base.name:
        raise InvalidDatum('datum {0} deforms {1}, not {2}'.format(
            given.name, given.base.name, base.name))
    if not given.ring.r:
        raise InvalidDatum('datum {0} has no deformation parameters'.format(given.name))
    if given.mode == 'fixed_source' and given.prescribed != side:
        raise InvalidDatum('datum {0} must prescribe the {1}'.format(given.name, side))
    require_valid(given)


def _revalidate(fmap, side):
    for report in (validate_atlas(getattr(fmap, side)), validate_map(fmap)):
        if not report.passed:
            raise InvariantViolation('{0}: {1}'.format(report.subject, report.failures()[0]))


def stability_lift(fmap, target_def, hypotheses='check', seed=None, perturb=True, window=None,
                   audit=True, njobs=None):
    """Extends a target deformation to a deformation of the map.

    Args:
        fmap (PoissonMapData): the base map f.
        target_def (DeformationDatum): a ``fixed_source`` datum prescribing
            the target over ``A``.
        hypotheses (str): ``check``, ``report`` or ``skip``.
        seed (int): seed of the lift-choice perturbation.
        perturb (bool): False for the canonical lifts.

    Returns:
        LiftCertificate: a ``free`` datum over ``A`` with the given target.

    Raises:
        HypothesisFailed: when ``H^1(F)`` is not surjective or ``H^2(F)``
            not injective, or when a stage has no solution.
        WindowInsufficient: when a window audit fails in ``check`` mode.
    """
    base = base_map(fmap)
    _check_input(target_def, base, 'target')
    window = gconfig.window if window is None else window
    ops = MapOperators(base)
    chain = tangent_map(base, tangent_total(base.source, 'T'), pullback_total(base, 'P'))
    report = check_hypotheses([Hypothesis('H1(F) surjective', chain, 1, 'surjective'),
                               Hypothesis('H2(F) injective', chain, 2, 'injective')],
                              hypotheses, window, audit, njobs)
    ring = target_def.ring
    rng = make_rng(seed) if perturb else None
    current = DeformationDatum.trivial(base, ring.truncated(1)).fmap
    steps = []
    for extension in ring.extension_chain():
        tau = extension.kernel_generator
        lifted = lift_map(current, extension, ('source', 'map'), rng)
        lifted = lifted.with_data(target=target_def.target.recast(extension.total))

        first = atlas_correction(lifted.source, base.source, tau, ops.tangent, ops.d, window,
                                 njobs)
        if first is None:
            raise hypothesis_failure(report, 'H2(F) injective', tau)
        lifted = lifted.with_data(source=add_to_atlas(lifted.source, base.source, tau,
                                                      first['u'], first['c']))

        G, P = map_residuals(lifted, ops, tau)
        second = solve_preimage(lambda s: pd1_coboundary(ops, s), pd1_source_blocks(ops),
                                element_scale(pd1_element(ops, xi=-G, eta=-P), QQ(-1)),
                                window, njobs=njobs)
        if second is None:
            raise hypothesis_failure(report, 'H1(F) surjective', tau)
        lifted = add_to_components(lifted, second['a'], tau)
        lifted = lifted.with_data(source=add_to_atlas(lifted.source, base.source, tau,
                                                      second['u'], second['c']))
        _revalidate(lifted, 'source')
        steps.append({'tau': tau, 'correction': OrderedDict([
            ('u', first['u'] + second['u']), ('c', first['c'] + second['c']),
            ('a', second['a'])])})
        LOGGER.info('stability of %s: step tau=%s corrected', base.name, tau)
        current = lifted
    datum = DeformationDatum(target_def.name, base, ring, 'free', current.source,
                             current.target, current.components)
    return LiftCertificate(datum, validate_deformation(datum), steps, report)


def _costability_blocks(ops):
    return [CechBlock('a', ops.pullback(1), 0),
            CechBlock('h', ops.target_tangent(1), 1),
            CechBlock('c', ops.target_tangent(2), 0)]


def _costability_image(ops, src):
    a, h, c = src['a'], src['h'], src['c']
    return OrderedDict([('xi', ops.delta(a) + ops.fstar(h)),
                        ('eta', ops.fstar(c) - ops.pi(a)),
                        ('s', ops.delta(h)),
                        ('r', ops.delta(c) + ops.d_target(h)),
                        ('w', ops.d_target(c))])


def costability_lift(fmap, source_def, hypotheses='check', seed=None, perturb=True,
                     window=None, audit=True, njobs=None):
    """Extends a source deformation to a deformation of the map.

    The result keeps the given source and deforms target and map. The second
    stage solves ``(delta a + f*h, f*c - pi a) = (-G, -P)`` with ``(h, c)`` a
    cocycle of the target complex, so the target stays Poisson.

    Raises:
        HypothesisFailed: when ``H^1(f*)`` is not surjective or ``H^2(f*)``
            not injective, or when a stage has no solution.
    """
    base = base_map(fmap)
    _check_input(source_def, base, 'source')
    window = gconfig.window if window is None else window
    ops = MapOperators(base)
    chain = pullback_map(base, tangent_total(base.target, 'Y'), pullback_total(base, 'P'))
    report = check_hypotheses([Hypothesis('H1(f*) surjective', chain, 1, 'surjective'),
                               Hypothesis('H2(f*) injective', chain, 2, 'injective')],
                              hypotheses, window, audit, njobs)
    ring = source_def.ring
    rng = make_rng(seed) if perturb else None
    current = DeformationDatum.trivial(base, ring.truncated(1)).fmap
    steps = []
    for extension in ring.extension_chain():
        tau = extension.kernel_generator
        lifted = lift_map(current, extension, ('target', 'map'), rng)
        lifted = lifted.with_data(source=source_def.source.recast(extension.total))

        first = atlas_correction(lifted.target, base.target, tau, ops.target_tangent,
                                 ops.d_target, window, njobs)
        if first is None:
            raise hypothesis_failure(report, 'H2(f*) injective', tau)
        lifted = lifted.with_data(target=add_to_atlas(lifted.target, base.target, tau,
                                                      first['u'], first['c']))

        G, P = map_residuals(lifted, ops, tau)
        target = OrderedDict([
            ('xi', -G), ('eta', -P),
            ('s', CechCochain.zero(ops.target_tangent(1), 2)),
            ('r', CechCochain.zero(ops.target_tangent(2), 1)),
            ('w', CechCochain.zero(ops.target_tangent(3), 0))])
        second = solve_preimage(lambda s: _costability_image(ops, s), _costability_blocks(ops),
                                target, window, njobs=njobs)
        if second is None:
            raise hypothesis_failure(report, 'H1(f*) surjective', tau)
        lifted = add_to_components(lifted, second['a'], tau)
        lifted = lifted.with_data(target=add_to_atlas(lifted.target, base.target, tau,
                                                      second['h'], second['c']))
        _revalidate(lifted, 'target')
        steps.append({'tau': tau, 'correction': OrderedDict([
            ('h', first['u'] + second['h']), ('c', first['c'] + second['c']),
            ('a', second['a'])])})
        LOGGER.info('costability of %s: step tau=%s corrected', base.name, tau)
        current = lifted
    datum = DeformationDatum(source_def.name, base, ring, 'free', current.source,
                             current.target, current.components)
    return LiftCertificate(datum, validate_deformation(datum), steps, report)
