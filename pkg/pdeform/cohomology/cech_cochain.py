#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Alternating Cech cochains over the nerve of an atlas.

Values are stored on strictly increasing simplices ``(i_0 < ... < i_q)``
only, expressed in the coordinates of chart ``i_0``. Other orderings are
recovered by antisymmetry and transport.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

import networkx as nx

from pdeform.geometry.multivector import sort_sign
from pdeform.utils.errors import TransportFailure

LOGGER = logging.getLogger(__name__)


class Nerve(object):
    """Simplices of the cover, from the cliques of the overlap graph.

    Args:
        atlas (PoissonAtlas): the cover.
    """

    def __init__(self, atlas):
        self.atlas = atlas
        self._simplices = {}
        for clique in nx.enumerate_all_cliques(atlas.overlap_graph()):
            simplex = tuple(sorted(clique))
            self._simplices.setdefault(len(simplex) - 1, []).append(simplex)
        for q in self._simplices:
            self._simplices[q].sort()
        self._members = set(s for group in self._simplices.values() for s in group)

    def __call__(self, q):
        return list(self._simplices.get(q, []))

    def __contains__(self, simplex):
        return tuple(simplex) in self._members

    @property
    def top(self):
        return max(self._simplices) if self._simplices else -1


def nerve(atlas):
    """Cached :class:`Nerve` of an atlas."""
    cached = getattr(atlas, '_nerve', None)
    if cached is None:
        cached = Nerve(atlas)
        atlas._nerve = cached
    return cached


class CechCochain(object):
    """A q-cochain with values in a slot.

    Args:
        slot (SheafSlot): the sheaf of the values.
        q (int): Cech degree.
        values (dict): increasing simplex -> value in chart ``simplex[0]``.
    """

    def __init__(self, slot, q, values=None):
        self.slot = slot
        self.q = int(q)
        self.values = {}
        for simplex, value in (values or {}).items():
            simplex = tuple(simplex)
            if len(simplex) != self.q + 1 or list(simplex) != sorted(set(simplex)):
                raise ValueError('simplex {0} is not increasing of length {1}'.format(
                    simplex, self.q + 1))
            if not value.is_zero():
                self.values[simplex] = value

    @classmethod
    def zero(cls, slot, q):
        return cls(slot, q)

    def simplices(self):
        return nerve(self.slot.cover)(self.q)

    def at(self, simplex):
        """Stored value on an increasing simplex, zero when absent."""
        simplex = tuple(simplex)
        if simplex in self.values:
            return self.values[simplex]
        return self.slot.zero(simplex[0])

    def value(self, simplex):
        """Value on any ordering of a simplex, in chart ``simplex[0]``."""
        simplex = tuple(simplex)
        sign, ordered = sort_sign(simplex)
        if not sign:
            return self.slot.zero(simplex[0])
        if ordered not in nerve(self.slot.cover):
            raise TransportFailure('{0} is not a simplex of {1}'.format(
                ordered, self.slot.cover.name))
        value = self.at(ordered)
        if ordered[0] != simplex[0]:
            value = self.slot.transport(value, ordered[0], simplex[0])
        return value if sign > 0 else -value

    def is_zero(self):
        return not self.values

    def _combine(self, other, negate):
        if other.q != self.q:
            raise ValueError('cannot add cochains of degrees {0} and {1}'.format(self.q, other.q))
        values = dict(self.values)
        for s, v in other.values.items():
            v = -v if negate else v
            values[s] = values[s] + v if s in values else v
        return CechCochain(self.slot, self.q, values)

    def __add__(self, other):
        return self._combine(other, False)

    def __sub__(self, other):
        return self._combine(other, True)

    def __neg__(self):
        return CechCochain(self.slot, self.q, dict((s, -v) for s, v in self.values.items()))

    def scale(self, value):
        return CechCochain(self.slot, self.q,
                           dict((s, v.scale(value)) for s, v in self.values.items()))

    def apply(self, fn, slot):
        """Cochain ``simplex -> fn(value, simplex[0])`` with values in ``slot``."""
        values = {}
        for s, v in self.values.items():
            image = fn(v, s[0])
            if image is not None and not image.is_zero():
                values[s] = image
        return CechCochain(slot, self.q, values)

    def max_abs_exponent(self):
        return max([v.max_abs_exponent() for v in self.values.values()] + [0])

    def items(self):
        return sorted(self.values.items())

    def __eq__(self, other):
        return (isinstance(other, CechCochain) and self.q == other.q
                and self.values == other.values)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'CechCochain({0}, q={1}, {2} simplices)'.format(
            self.slot.describe(), self.q, len(self.values))


def cech_delta(c):
    """Alternating coboundary ``(dc)_{i_0..i_{q+1}} = sum_k (-1)^k c_{..^i_k..}``.

    Raises:
        TransportFailure: if a face value cannot be moved into chart ``i_0``.
    """
    slot = c.slot
    values = {}
    for simplex in nerve(slot.cover)(c.q + 1):
        total = None
        for k in range(len(simplex)):
            face = simplex[:k] + simplex[k + 1:]
            value = c.values.get(face)
            if value is None:
                continue
            if k == 0:
                value = slot.transport(value, face[0], simplex[0])
            term = value if k % 2 == 0 else -value
            total = term if total is None else total + term
        if total is not None and not total.is_zero():
            values[simplex] = total
    return CechCochain(slot, c.q + 1, values)


def pullback_cochain(c, fmap, slot):
    """``f*`` of a Y cochain into the pullback slot over the cover of X.

    ``(f*c)_{i_0..i_q} = c_{a_{i_0}..a_{i_q}} o f_{i_0}``; the value on a
    target simplex with a repeated chart is zero.
    """
    values = {}
    for simplex in nerve(slot.cover)(c.q):
        image = tuple(fmap.assignment[i] for i in simplex)
        value = c.value(image)
        if value.is_zero():
            continue
        moved = value.substitute(fmap.substitution(simplex[0]))
        if not moved.is_zero():
            values[simplex] = moved
    return CechCochain(slot, c.q, values)


def random_cochain(slot, q, rng, degree=2, density=0.5):
    """Cochain with small random integer coefficients on nonnegative monomials.

    Args:
        rng (numpy.random.Generator): source of randomness.
        degree (int): largest exponent per variable.
        density (float): probability of each candidate monomial.
    """
    from pdeform.utils.laurent_util import LaurentPoly
    values = {}
    for simplex in nerve(slot.cover)(q):
        ctx = slot.ctx(simplex[0])
        value = slot.zero(simplex[0])
        for label in slot.labels(simplex[0]):
            terms = {}
            for _ in range(3):
                if rng.random() > density:
                    continue
                exps = tuple(int(e) for e in rng.integers(0, degree + 1, size=ctx.nvars))
                exps += (0,) * ctx.ring.r
                terms[exps] = int(rng.integers(-3, 4))
            poly = LaurentPoly(ctx, terms)
            if not poly.is_zero():
                value = value + slot.basis_value(simplex[0], label, poly)
        values[simplex] = value
    return CechCochain(slot, q, values)
