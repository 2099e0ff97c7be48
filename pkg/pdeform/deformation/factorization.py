#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Factoring a deformed composite through a deformed first map.

Given ``f: X -> Y``, ``g: Y -> Z``, a deformation ``Upsilon`` of ``h = g o f``
and a deformation ``Phi`` of f over the same ring ``A``, build a deformation
``Psi`` of g with ``Psi o Phi = Upsilon``. All three keep their source and
target fixed.

Over a small extension with kernel ``tau``, with ``Psi~`` a lift of the
current ``Psi``:

* ``(G, P)`` are the gluing and Poisson residuals of ``Psi~``, a degree 1
  cocycle of ``g*T_Z``;
* ``gamma_i = tau[(Psi~ o Phi)_i - Upsilon_i]``, a 0-cochain of ``h*T_Z``.

Moving ``Psi`` by ``tau b`` changes ``(G, P, gamma)`` by
``(delta b, -pi b, f*b)``. The first stage finds ``b'`` with ``D b' = (G, P)``
(``f*`` injective on ``H^1``); the second finds a cocycle ``chi`` with
``f* chi = -gamma - f*b'`` (``f*`` surjective on ``H^0``).
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cech_cochain import pullback_cochain
from pdeform.cohomology.hypercohomology import ChainMap
from pdeform.cohomology.hypercohomology import pullback_total
from pdeform.cohomology.pd_space import MapOperators
from pdeform.cohomology.pd_space import base_map
from pdeform.cohomology.quotient import solve_preimage
from pdeform.complexes.operators import build_composite_maps
from pdeform.complexes.sheaf_slot import PullbackSlot
from pdeform.deformation.datum import DeformationDatum
from pdeform.deformation.datum import add_to_components
from pdeform.deformation.datum import lift_map
from pdeform.deformation.datum import make_rng
from pdeform.deformation.datum import require_valid
from pdeform.deformation.datum import same_components
from pdeform.deformation.datum import tau_part
from pdeform.deformation.datum import validate_deformation
from pdeform.deformation.hypotheses import Hypothesis
from pdeform.deformation.hypotheses import check_hypotheses
from pdeform.deformation.hypotheses import hypothesis_failure
from pdeform.deformation.obstruction import LiftCertificate
from pdeform.deformation.residuals import fixed_both_tuple
from pdeform.deformation.residuals import vector_of
from pdeform.geometry.atlas import validate_map
from pdeform.utils import gconfig
from pdeform.utils.errors import CompositionMismatch
from pdeform.utils.errors import InvalidDatum
from pdeform.utils.errors import InvariantViolation

LOGGER = logging.getLogger(__name__)


def composite_fstar(fmap, source, target):
    """``f*: g*T_Z -> h*T_Z`` on total complexes."""
    return ChainMap(source, target,
                    lambda x, c, slot: pullback_cochain(x, fmap, slot), 'f*')


def composite_residual(psi, phi, upsilon, tau, composite):
    """``gamma``: the ``tau`` part of ``Psi o Phi - Upsilon`` per chart of X."""
    moved = phi.compose(psi)
    slot = PullbackSlot(composite, 1)
    values = {}
    for i in range(len(composite.source)):
        ctx = composite.source.ctx(i)
        polys = [tau_part(a - b, tau, ctx)
                 for a, b in zip(moved.components[i], upsilon.components[i])]
        values[(i,)] = vector_of(polys, ctx, composite.frame(i))
    return CechCochain(slot, 0, values)


def _check_inputs(upsilon, phi, gbase):
    for datum in (upsilon, phi):
        if datum.mode != 'fixed_both':
            raise InvalidDatum('datum {0} must keep source and target fixed'.format(datum.name))
        require_valid(datum)
    if upsilon.ring != phi.ring:
        raise InvalidDatum('data {0} and {1} live over different rings'.format(
            upsilon.name, phi.name))
    composite = build_composite_maps(phi.base, gbase).composite
    if (upsilon.base.source.name != composite.source.name
            or upsilon.base.target.name != composite.target.name
            or upsilon.base.assignment != composite.assignment
            or same_components(upsilon.base, composite) is not None):
        raise CompositionMismatch('{0} is not {1} composed with {2}'.format(
            upsilon.base.name, gbase.name, phi.base.name))
    return composite


def factor_through_family(upsilon, phi, g, hypotheses='check', seed=None, perturb=True,
                          window=None, audit=True, njobs=None):
    """Deformation ``Psi`` of g with ``Psi o Phi = Upsilon`` over the ring of the data.

    Args:
        upsilon (DeformationDatum): deformation of ``h = g o f``.
        phi (DeformationDatum): deformation of f over the same ring.
        g (PoissonMapData): the second map.
        hypotheses (str): ``check``, ``report`` or ``skip``.

    Returns:
        LiftCertificate: a ``fixed_both`` datum of g.

    Raises:
        CompositionMismatch: if ``upsilon`` does not deform ``g o f``.
        HypothesisFailed: when ``f*`` is not surjective on ``H^0`` or not
            injective on ``H^1``, or when a stage has no solution.
    """
    gbase = base_map(g)
    composite = _check_inputs(upsilon, phi, gbase)
    fbase = phi.base
    window = gconfig.window if window is None else window
    ops = MapOperators(gbase)
    total_g = pullback_total(gbase, 'G')
    chain = composite_fstar(fbase, total_g, pullback_total(composite, 'H'))
    report = check_hypotheses([Hypothesis('H0(f*) surjective', chain, 0, 'surjective'),
                               Hypothesis('H1(f*) injective', chain, 1, 'injective')],
                              hypotheses, window, audit, njobs)
    fslot = PullbackSlot(composite, 1)

    def fstar(b):
        return pullback_cochain(b, fbase, fslot)

    def image(src):
        out = total_g.differential(src, 0)
        out['fs'] = fstar(total_g.part(src, 1, 0))
        return out

    ring = upsilon.ring
    rng = make_rng(seed) if perturb else None
    current = DeformationDatum.trivial(gbase, ring.truncated(1)).fmap
    steps = []
    for extension in ring.extension_chain():
        tau, total = extension.kernel_generator, extension.total
        lifted = lift_map(current, extension, ('map',), rng)
        phi_t = phi.fmap.recast(total)
        upsilon_t = upsilon.fmap.recast(total)

        raw = fixed_both_tuple(lifted, ops, total_g, tau)
        first = solve_preimage(lambda s: total_g.differential(s, 0), total_g.blocks(0), raw,
                               window, njobs=njobs)
        if first is None:
            raise hypothesis_failure(report, 'H1(f*) injective', tau)
        b_first = total_g.part(first, 1, 0)

        gamma = composite_residual(lifted, phi_t, upsilon_t, tau, composite)
        # D chi = 0 is enforced by the rows of image() missing from the target
        second = solve_preimage(image, total_g.blocks(0),
                                OrderedDict([('fs', -(gamma + fstar(b_first)))]),
                                window, njobs=njobs)
        if second is None:
            raise hypothesis_failure(report, 'H0(f*) surjective', tau)
        b = b_first + total_g.part(second, 1, 0)
        lifted = add_to_components(lifted, b, tau)

        checks = validate_map(lifted)
        if not checks.passed:
            raise InvariantViolation('{0}: {1}'.format(checks.subject, checks.failures()[0]))
        mismatch = same_components(phi_t.compose(lifted), upsilon_t)
        if mismatch is not None:
            raise InvariantViolation('Psi o Phi differs from Upsilon: {0}'.format(mismatch))
        steps.append({'tau': tau, 'correction': OrderedDict([('b', b)])})
        LOGGER.info('factorization of %s: step tau=%s corrected', upsilon.name, tau)
        current = lifted
    datum = DeformationDatum(gbase.name, gbase, ring, 'fixed_both', current.source,
                             current.target, current.components)
    return LiftCertificate(datum, validate_deformation(datum), steps, report)

