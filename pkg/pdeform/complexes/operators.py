#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Chart-level differentials and chain maps of the deformation complexes.

* ``lichnerowicz_d`` is ``u -> -[u, Lambda]`` on ``T_X``.
* ``pi_f`` is the differential of ``f*T_Y``, computed from its alternating
  sum definition.
* ``chain_map_F`` is ``F: T_X -> f*T_Y``, ``F(P)(a_1..a_q) = P(f(a_1)..f(a_q))``.
* ``pullback_fstar`` is ``f*: T_Y -> f*T_Y``, composing coefficients with f.

Every operator acts on the value of a cochain over one chart ``i`` and uses
the structure of that chart only.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import itertools
import logging
from collections import namedtuple

from pdeform.complexes.sheaf_slot import PullbackSlot
from pdeform.complexes.sheaf_slot import TangentSlot
from pdeform.geometry.multivector import Multivector
from pdeform.geometry.multivector import evaluate
from pdeform.geometry.multivector import schouten
from pdeform.geometry.multivector import transform
from pdeform.utils.errors import ChartMismatch
from pdeform.utils.errors import CompositionMismatch
from pdeform.utils.laurent_util import LaurentPoly

LOGGER = logging.getLogger(__name__)


def lichnerowicz_d(u, bivector):
    """``-[u, Lambda]`` for a tangent multivector ``u`` on the chart of ``bivector``.

    Raises:
        ChartMismatch: if ``u`` and ``bivector`` live on different charts.
    """
    if not u.compatible(bivector):
        raise ChartMismatch('{0} vs bivector on {1}'.format(u.ctx, bivector.ctx))
    return -schouten(u, bivector)


def _apply_pullback(Q, fmap, i, h_partials, rest):
    """``Q(h, w^rest)`` where ``h_partials`` are the composed partials of h."""
    total = LaurentPoly.zero(Q.ctx)
    for beta, partial in enumerate(h_partials):
        if partial.is_zero():
            continue
        coef = Q.coefficient((beta,) + rest)
        if not coef.is_zero():
            total = total + partial * coef
    return total


def pi_f(Q, fmap, i):
    """Differential of ``f*T_Y`` on source chart ``i``.

    For ``Q`` of degree ``q`` the coefficient on an increasing ``I`` of
    length ``q + 1`` is::

        sum_s (-1)^(q-s) Lambda_0(Q_{I - I_s}, f^{I_s})
          - (-1)^(q-1) sum_{s<t} (-1)^(s+t-1) Q(Pi_0^{I_s I_t}, w^{I - {I_s, I_t}})

    where ``Q(h, w^R) = sum_b (d_b h o f) Q_{b R}``.

    Raises:
        ChartMismatch: if ``Q`` is not a pullback multivector over chart ``i``.
    """
    frame = fmap.frame(i)
    if Q.frame != frame or Q.ctx != fmap.source.ctx(i):
        raise ChartMismatch('{0} is not in the pullback frame {1}'.format(Q.ctx, frame))
    q = Q.degree
    lam = fmap.source.bivector(i)
    comps = fmap.components[i]
    partials = fmap.bivector_partials(i)
    outer = 1 if (q - 1) % 2 else -1
    coeffs = {}
    for I in itertools.combinations(range(len(frame)), q + 1):
        total = LaurentPoly.zero(Q.ctx)
        if not lam.is_zero():
            for s in range(q + 1):
                coef = Q.coefficient(I[:s] + I[s + 1:])
                if coef.is_zero():
                    continue
                term = evaluate(lam, (coef, comps[I[s]]))
                total = total + term if (q - s) % 2 == 0 else total - term
        for s, t in itertools.combinations(range(q + 1), 2):
            h_partials = partials.get((I[s], I[t]))
            if h_partials is None:
                continue
            rest = tuple(I[k] for k in range(q + 1) if k != s and k != t)
            term = _apply_pullback(Q, fmap, i, h_partials, rest)
            if term.is_zero():
                continue
            sign = outer if (s + t - 1) % 2 == 0 else -outer
            total = total + term if sign > 0 else total - term
        if not total.is_zero():
            coeffs[I] = total
    return Multivector(Q.ctx, frame, q + 1, coeffs)


def pi_f_expanded(Q, fmap, i):
    """Coordinate form of ``pi_f`` in degrees 0 and 1.

    ``pi(g)^k = Lambda_0(g, f^k)`` and
    ``pi(tau)^{pq} = Lambda_0(tau^p, f^q) - Lambda_0(tau^q, f^p)
    - sum_b tau^b (d_b Pi_0^{pq} o f)``.
    """
    frame = fmap.frame(i)
    lam = fmap.source.bivector(i)
    comps = fmap.components[i]
    ctx = Q.ctx
    if Q.degree == 0:
        g = Q.function_value()
        return Multivector(ctx, frame, 1, dict(
            ((k,), evaluate(lam, (g, comps[k]))) for k in range(len(frame))))
    if Q.degree != 1:
        raise ValueError('coordinate form only covers degrees 0 and 1')
    partials = fmap.bivector_partials(i)
    tau = [Q.coefficient((k,)) for k in range(len(frame))]
    coeffs = {}
    for p, q in itertools.combinations(range(len(frame)), 2):
        value = evaluate(lam, (tau[p], comps[q])) - evaluate(lam, (tau[q], comps[p]))
        for b, partial in enumerate(partials.get((p, q), ())):
            value = value - tau[b] * partial
        coeffs[(p, q)] = value
    return Multivector(ctx, frame, 2, coeffs)


def chain_map_F(u, fmap, i):
    """``F(u)``: evaluates the tangent multivector ``u`` on the components of f."""
    if u.ctx != fmap.source.ctx(i) or not u.is_tangent():
        raise ChartMismatch('{0} is not a tangent multivector of source chart {1}'.format(
            u.ctx, i))
    return transform(u, fmap.components[i], fmap.frame(i))


def pullback_fstar(Q, fmap, i):
    """``f*(Q)``: a multivector of the target chart ``a_i`` composed with ``f_i``."""
    a = fmap.assignment[i]
    if Q.ctx != fmap.target.ctx(a):
        raise ChartMismatch('{0} does not live on target chart {1}'.format(Q.ctx, a))
    return Q.substitute(fmap.substitution(i))


def fstar_G(P, fmap, gmap, i):
    """``f*G(P)(b_1..b_q) = P(g(b_1)..g(b_q))`` over source chart ``i`` of f.

    ``P`` is a pullback multivector of f over chart ``i``; the result is a
    pullback multivector of ``g o f`` over the same chart.
    """
    a = fmap.assignment[i]
    if P.frame != fmap.frame(i):
        raise ChartMismatch('{0} is not in the frame of target chart {1}'.format(P.frame, a))
    return transform(P, gmap.components[a], gmap.frame(a), fmap.substitution(i))


def fstar_composite(Q, fmap, gmap, i):
    """``f*`` from ``g*T_Z`` over chart ``a_i`` of Y to ``h*T_Z`` over chart ``i``."""
    a = fmap.assignment[i]
    if Q.ctx != gmap.source.ctx(a):
        raise ChartMismatch('{0} does not live on chart {1} of {2}'.format(
            Q.ctx, a, gmap.source.name))
    return Q.substitute(fmap.substitution(i))


CompositeMaps = namedtuple('CompositeMaps', ['composite', 'fstar_G', 'fstar'])


def build_composite_maps(fmap, gmap):
    """Operators ``f*G`` and ``f*`` attached to the composite ``h = g o f``.

    Returns:
        CompositeMaps: ``composite`` is h; ``fstar_G(P, i)`` sends
        ``f*T_Y -> h*T_Z`` and ``fstar(Q, i)`` sends ``g*T_Z -> h*T_Z``.

    Raises:
        CompositionMismatch: if g does not start on the target of f.
    """
    composite = fmap.compose(gmap)
    for i in range(len(fmap.source)):
        if composite.assignment[i] != gmap.assignment[fmap.assignment[i]]:
            raise CompositionMismatch('chart assignments do not compose')
    return CompositeMaps(composite,
                         lambda P, i: fstar_G(P, fmap, gmap, i),
                         lambda Q, i: fstar_composite(Q, fmap, gmap, i))


class ComplexDescriptor(object):
    """A complex of slots placed in columns, with its differential.

    Args:
        name (str): label used in reports.
        slots (dict): column -> :class:`SheafSlot`.
        differential (callable): ``(value, chart, column) -> value`` in the next
            column; None for the zero differential.
        differential_name (str): one of ``lichnerowicz``, ``pi_f``, ``nabla``,
            ``zero``.
    """

    def __init__(self, name, slots, differential=None, differential_name='zero'):
        self.name = name
        self.slots = dict(slots)
        self._differential = differential
        self.differential_name = differential_name if differential is not None else 'zero'

    @property
    def cover(self):
        return self.slots[min(self.slots)].cover

    def columns(self):
        return sorted(self.slots)

    def slot(self, column):
        return self.slots.get(column)

    def apply(self, value, chart, column):
        """Differential of a section in ``column`` over ``chart``."""
        target = self.slots.get(column + 1)
        if target is None:
            return None
        if self._differential is None:
            return target.zero(chart)
        return self._differential(value, chart, column)

    def __repr__(self):
        return 'ComplexDescriptor({0!r}, columns={1}, d={2})'.format(
            self.name, self.columns(), self.differential_name)


def max_dimension(atlas):
    return max([atlas.dimension(i) for i in range(len(atlas))] + [0])


def tangent_complex(atlas):
    """``T^.``: ``wedge^p T`` in column ``p >= 1`` with ``d = -[., Lambda]``."""
    top = max_dimension(atlas)
    slots = dict((p, TangentSlot(atlas, p)) for p in range(1, top + 1))
    if not slots:
        slots = {1: TangentSlot(atlas, 1)}
    return ComplexDescriptor('T_{0}'.format(atlas.name), slots,
                             lambda u, i, c: lichnerowicz_d(u, atlas.bivector(i)),
                             'lichnerowicz')


def pullback_complex(fmap):
    """``f*T_Y^.``: ``wedge^p f*T_Y`` in column ``p >= 1`` with ``pi_f``."""
    top = max_dimension(fmap.target)
    slots = dict((p, PullbackSlot(fmap, p)) for p in range(1, top + 1))
    if not slots:
        slots = {1: PullbackSlot(fmap, 1)}
    return ComplexDescriptor('{0}*T_{1}'.format(fmap.name, fmap.target.name), slots,
                             lambda Q, i, c: pi_f(Q, fmap, i), 'pi_f')


def single_slot_complex(slot, name=None):
    """One slot in column 1 with the zero differential, for plain sheaf cohomology."""
    return ComplexDescriptor(name or slot.describe(), {1: slot})
