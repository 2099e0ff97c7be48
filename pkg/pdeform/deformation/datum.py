#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Deformations of a Poisson map over an Artinian parameter ring.

A :class:`DeformationDatum` keeps the base map over QQ next to its source
atlas, target atlas and components over the ring ``A``. The mode says which
of the three may differ from the base:

* ``fixed_both``: only the components.
* ``fixed_target``: source and components, the target is ``base (x) A``.
* ``fixed_source``: one prescribed atlas (``prescribed`` names the side) is
  deformed, everything else is ``base (x) A``. This is the input of the
  stability and costability lifts.
* ``free``: everything.

The helpers below build the lifts used by the obstruction machinery. A lift
over ``A~`` is the canonical recast plus, optionally, a seeded perturbation
``tau * (random polynomial)`` on every entry allowed to move. Reverse
transitions are never perturbed directly; they are recomputed by Newton
inversion so that inverse pairs hold exactly.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

import numpy as np

from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.atlas import ValidationReport
from pdeform.geometry.atlas import first_nonzero
from pdeform.geometry.atlas import validate_atlas
from pdeform.geometry.atlas import validate_map
from pdeform.geometry.multivector import ChartMap
from pdeform.geometry.multivector import Multivector
from pdeform.utils import gconfig
from pdeform.utils.errors import ExtensionMismatch
from pdeform.utils.errors import InvalidDatum
from pdeform.utils.grammar_util import format_multivector
from pdeform.utils.grammar_util import format_poly
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import ParamRing
from pdeform.utils.laurent_util import SmallExtension
from pdeform.utils.laurent_util import monomial_key

LOGGER = logging.getLogger(__name__)

MODES = ('fixed_both', 'fixed_target', 'fixed_source', 'free')


class DeformationDatum(object):
    """A deformation of ``base`` over ``ring``.

    Args:
        name (str): datum name.
        base (PoissonMapData): the map over QQ.
        ring (ParamRing): the parameter ring ``A``.
        mode (str): one of :data:`MODES`.
        source (PoissonAtlas): source atlas over ``A``, defaults to
            ``base.source (x) A``.
        target (PoissonAtlas): target atlas over ``A``.
        components (dict): chart -> components over ``A``.
        prescribed (str): ``source`` or ``target``, the deformed side of a
            ``fixed_source`` datum.

    Raises:
        InvalidDatum: for an unknown mode or a base with parameters.
    """

    def __init__(self, name, base, ring, mode='fixed_both', source=None, target=None,
                 components=None, prescribed=None):
        if mode not in MODES:
            raise InvalidDatum('unknown deformation mode {0!r}'.format(mode))
        if base.ring.r:
            raise InvalidDatum('base map {0} depends on parameters'.format(base.name))
        if mode == 'fixed_source' and prescribed not in ('source', 'target'):
            raise InvalidDatum('a fixed_source datum must name its prescribed side')
        self.name = name
        self.base = base
        self.ring = ring
        self.mode = mode
        self.prescribed = prescribed if mode == 'fixed_source' else None
        source = source if source is not None else base.source.recast(ring)
        target = target if target is not None else base.target.recast(ring)
        if components is None:
            components = dict((i, tuple(c.recast(source.ctx(i)) for c in comps))
                              for i, comps in base.components.items())
        self.fmap = PoissonMapData(base.name, source, target, base.assignment, components)

    @classmethod
    def trivial(cls, base, ring, mode='fixed_both', name=None, prescribed=None):
        """``base (x) ring``."""
        return cls(name or base.name, base, ring, mode, prescribed=prescribed)

    @property
    def source(self):
        return self.fmap.source

    @property
    def target(self):
        return self.fmap.target

    @property
    def components(self):
        return self.fmap.components

    def with_fmap(self, fmap, ring=None, mode=None):
        return DeformationDatum(self.name, self.base, ring or fmap.ring, mode or self.mode,
                                fmap.source, fmap.target, fmap.components, self.prescribed)

    def recast(self, ring):
        """The datum over another ring with the same parameters.

        Over a quotient of ``A`` this is the reduction; over a larger ring it
        is the canonical lift.
        """
        if ring.names != self.ring.names:
            raise ExtensionMismatch('parameters {0} vs {1}'.format(ring.names, self.ring.names))
        return self.with_fmap(self.fmap.recast(ring), ring)

    def corrections(self):
        """Parameter-dependent parts, keyed like scenario lines.

        Returns:
            OrderedDict: ``(kind, chart label) -> text`` for every entry that
            differs from the base.
        """
        base = DeformationDatum.trivial(self.base, self.ring)
        out = OrderedDict()
        for i in range(len(self.source)):
            diff = [a - b for a, b in zip(self.components[i], base.components[i])]
            if any(not d.is_zero() for d in diff):
                out[('component', self.source.charts[i].name)] = ' ; '.join(
                    format_poly(c) for c in self.components[i])
        for side, atlas, ref in (('source', self.source, base.source),
                                 ('target', self.target, base.target)):
            for (i, j) in sorted(atlas.transitions):
                if any(not (a - b).is_zero() for a, b in zip(atlas.transitions[(i, j)],
                                                             ref.transitions[(i, j)])):
                    key = '{0} <- {1}'.format(atlas.charts[i].name, atlas.charts[j].name)
                    out[(side + '.transition', key)] = ' : '.join(
                        format_poly(c) for c in atlas.transitions[(i, j)])
            for i in range(len(atlas)):
                if atlas.bivector(i) != ref.bivector(i):
                    out[(side + '.bivector', atlas.charts[i].name)] = format_multivector(
                        atlas.bivector(i))
        return out

    def __repr__(self):
        return 'DeformationDatum({0!r}, mode={1}, ring={2})'.format(
            self.name, self.mode, self.ring)


def datum_lines(datum, map_name=None, ring_name=None):
    """Scenario text of a datum: a mode header and per-chart correction lines."""
    out = ['[deformation {0}]'.format(datum.name),
           'map = {0}'.format(map_name or datum.base.name)]
    if ring_name:
        out.append('ring = {0}'.format(ring_name))
    out.append('mode = {0}'.format(datum.mode))
    if datum.prescribed:
        out.append('prescribed = {0}'.format(datum.prescribed))
    for (kind, key), text in datum.corrections().items():
        out.append('{0} {1} = {2}'.format(kind, key, text))
    return out


def _difference(atlas, reference):
    """First nonzero difference between two atlases on the same charts."""
    for key in sorted(reference.transitions):
        residual = first_nonzero(a - b for a, b in zip(atlas.transitions.get(key, ()),
                                                       reference.transitions[key]))
        if residual is not None:
            return 'transition {0}: {1}'.format(key, residual)
    for i in range(len(reference)):
        residual = first_nonzero(c for _, c in (atlas.bivector(i) - reference.bivector(i)).items())
        if residual is not None:
            return 'bivector {0}: {1}'.format(i, residual)
    return None


def validate_deformation(datum):
    """Checks the reduction to the base, the mode constraints and every identity.

    Returns:
        ValidationReport: lines named ``reduces``, ``fixed``, then those of
        :func:`validate_atlas` and :func:`validate_map`.
    """
    report = ValidationReport('deformation {0} ({1})'.format(datum.name, datum.mode))
    base = datum.base
    zero = datum.fmap.at_zero()
    report.add('reduces', ('source',), _difference(zero.source, base.source))
    report.add('reduces', ('target',), _difference(zero.target, base.target))
    for i in range(len(base.source)):
        report.add('reduces', (i,), first_nonzero(
            a - b for a, b in zip(zero.components[i], base.components[i])))
    trivial = DeformationDatum.trivial(base, datum.ring)
    moving = {
        'fixed_both': {'map'},
        'fixed_target': {'source', 'map'},
        'fixed_source': {datum.prescribed},
        'free': {'source', 'target', 'map'},
    }[datum.mode]
    fixed = [side for side in ('source', 'target') if side not in moving]
    for side in fixed:
        report.add('fixed', (side,), _difference(getattr(datum, side),
                                                 getattr(trivial, side)))
    if 'source' in moving:
        report.extend(validate_atlas(datum.source))
    if 'target' in moving:
        report.extend(validate_atlas(datum.target))
    if 'map' in moving:
        report.extend(validate_map(datum.fmap))
    elif datum.mode == 'fixed_source':
        for i in range(len(base.source)):
            report.add('fixed', ('map', i), first_nonzero(
                a - b for a, b in zip(datum.components[i], trivial.components[i])))
    return report


def require_valid(datum):
    """Raises :class:`InvalidDatum` naming the first failing identity."""
    report = validate_deformation(datum)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidDatum('{0}: {1} [{2}] residual {3}'.format(
            report.subject, failed.name, ','.join(str(k) for k in failed.simplex),
            failed.residual))
    return report


def extension_path(quotient, total):
    """Small extensions from ``quotient`` up to ``total``, one monomial at a time.

    Raises:
        ExtensionMismatch: if ``quotient`` is not a quotient of ``total``.
    """
    if quotient.names != total.names:
        raise ExtensionMismatch('parameters {0} vs {1}'.format(quotient.names, total.names))
    have = list(quotient.standard_monomials())
    if not set(have) <= set(total.standard_monomials()):
        raise ExtensionMismatch('{0} is not a quotient of {1}'.format(quotient, total))
    missing = sorted(set(total.standard_monomials()) - set(have), key=monomial_key)
    chain, current = [], quotient
    for monomial in missing:
        bigger = ParamRing.from_standard(total.names, have + [monomial])
        chain.append(SmallExtension(bigger, current, monomial))
        have.append(monomial)
        current = bigger
    return chain


# lifts and corrections

def tau_part(poly, tau, ctx=None):
    """Coefficient of the kernel monomial ``tau``, as a polynomial over QQ."""
    return poly.coefficient_of(tau, ctx)


def tau_times(poly, ctx, tau):
    """``tau * poly`` for a parameter-free ``poly``, placed in ``ctx``."""
    n = ctx.nvars
    tau = tuple(tau)
    return LaurentPoly(ctx, dict((exps[:n] + tau, c) for exps, c in poly.terms().items()))


def random_increment(ctx, tau, rng, terms=None):
    """``tau`` times a few random monomials of degree at most one per variable."""
    terms = gconfig.perturbation_terms if terms is None else terms
    result = {}
    for _ in range(terms):
        exps = tuple(int(e) for e in rng.integers(0, 2, size=ctx.nvars)) + tuple(tau)
        coef = int(rng.integers(-2, 3))
        if coef:
            result[exps] = result.get(exps, 0) + coef
    return LaurentPoly(ctx, result)


def make_rng(seed=None):
    return np.random.default_rng(gconfig.seed if seed is None else seed)


def rebuild_reverse(atlas, base_atlas):
    """Recomputes every transition ``(j, i)`` with ``j > i`` as the inverse of ``(i, j)``."""
    transitions = dict(atlas.transitions)
    for (i, j) in atlas.overlaps():
        if (j, i) not in base_atlas.transitions:
            continue
        chart_map = ChartMap(atlas.ctx(j), atlas.ctx(i), atlas.transitions[(i, j)],
                             base_inverse=base_atlas.transitions[(j, i)])
        transitions[(j, i)] = chart_map.formal_inverse()
    return atlas.with_data(transitions=transitions)


def perturb_atlas(atlas, base_atlas, tau, rng, terms=None):
    """Random ``tau`` corrections on increasing transitions and on every bivector."""
    transitions, bivectors = {}, {}
    for (i, j) in atlas.overlaps():
        ctx = atlas.ctx(j)
        transitions[(i, j)] = tuple(c + random_increment(ctx, tau, rng, terms)
                                    for c in atlas.transitions[(i, j)])
    for i in range(len(atlas)):
        ctx = atlas.ctx(i)
        n = atlas.dimension(i)
        coeffs = dict(((a, b), random_increment(ctx, tau, rng, terms))
                      for a in range(n) for b in range(a + 1, n))
        bivectors[i] = atlas.bivector(i) + Multivector.tangent(ctx, 2, coeffs)
    return rebuild_reverse(atlas.with_data(transitions, bivectors), base_atlas)


def perturb_components(fmap, tau, rng, terms=None):
    components = {}
    for i, comps in fmap.components.items():
        ctx = fmap.source.ctx(i)
        components[i] = tuple(c + random_increment(ctx, tau, rng, terms) for c in comps)
    return fmap.with_data(components=components)


def add_to_components(fmap, a, tau):
    """``Phi_i += tau a_i`` for a 0-cochain ``a`` of the pullback slot."""
    components = {}
    for i, comps in fmap.components.items():
        value = a.at((i,))
        ctx = fmap.source.ctx(i)
        components[i] = tuple(c + tau_times(value.coefficient((k,)), ctx, tau)
                              for k, c in enumerate(comps))
    return fmap.with_data(components=components)


def add_to_atlas(atlas, base_atlas, tau, u=None, c=None):
    """``phi_ij += tau u_ij`` on increasing pairs and ``Lambda_i += tau c_i``.

    ``u`` is a 1-cochain of the tangent slot (values in chart ``i``), ``c`` a
    0-cochain of bivectors. Reverse transitions are rebuilt.
    """
    transitions, bivectors = {}, {}
    if u is not None and not u.is_zero():
        for (i, j), value in u.items():
            moved = value.substitute(base_atlas.pull(i, j))
            ctx = atlas.ctx(j)
            transitions[(i, j)] = tuple(
                comp + tau_times(moved.coefficient((k,)), ctx, tau)
                for k, comp in enumerate(atlas.transitions[(i, j)]))
    if c is not None and not c.is_zero():
        for (i,), value in c.items():
            ctx = atlas.ctx(i)
            bivectors[i] = atlas.bivector(i) + value.map_coefficients(
                lambda p: tau_times(p, ctx, tau), ctx)
    updated = atlas.with_data(transitions, bivectors)
    if transitions:
        updated = rebuild_reverse(updated, base_atlas)
    return updated


def lift_map(fmap, extension, sides, rng=None, terms=None):
    """Canonical lift of ``fmap`` to ``extension.total``, perturbed on ``sides``.

    Args:
        sides (iterable): subset of ``map``, ``source``, ``target``.
        rng (numpy.random.Generator): None for the unperturbed lift.
    """
    if fmap.ring != extension.quotient:
        raise ExtensionMismatch('datum over {0}, extension from {1}'.format(
            fmap.ring, extension.quotient))
    lifted = fmap.recast(extension.total)
    if rng is None:
        return lifted
    tau = extension.kernel_generator
    base = fmap.at_zero()
    source, target = lifted.source, lifted.target
    if 'source' in sides:
        source = perturb_atlas(source, base.source, tau, rng, terms)
    if 'target' in sides:
        target = perturb_atlas(target, base.target, tau, rng, terms)
    lifted = lifted.with_data(source=source, target=target)
    if 'map' in sides:
        lifted = perturb_components(lifted, tau, rng, terms)
    return lifted


def same_components(first, second):
    """First nonzero componentwise difference of two maps on the same charts."""
    for i in sorted(first.components):
        residual = first_nonzero(a - b for a, b in zip(first.components[i],
                                                       second.components[i]))
        if residual is not None:
            return residual
    return None
