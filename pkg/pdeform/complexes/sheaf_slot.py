#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Sheaves whose sections fill the columns of the complexes.

A slot knows, chart by chart of its cover, the coefficient context of its
sections, their coefficient labels, and how to move a section from the
coordinates of one chart into another.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import itertools
from abc import ABCMeta
from abc import abstractmethod

from pdeform.geometry.multivector import Multivector
from pdeform.geometry.multivector import transform
from pdeform.utils.errors import ChartMismatch


class SlotKind(object):
    TANGENT = 'tangent'
    PULLBACK = 'pullback'
    NORMAL_BUNDLE = 'normal_bundle'
    # only present as kernel / cokernel subquotients of the cochain spaces
    RELATIVE = 'relative'
    NORMAL = 'normal'


class NormalSection(object):
    """Section of ``N_{X/Y} (x) wedge^p T_Y|_X``: one multivector per ``w^a``."""
    __slots__ = ('components',)

    def __init__(self, components):
        self.components = tuple(components)

    @property
    def degree(self):
        return self.components[0].degree if self.components else 0

    def _check(self, other):
        if len(self.components) != len(other.components):
            raise ChartMismatch('normal sections of ranks {0} and {1}'.format(
                len(self.components), len(other.components)))

    def __add__(self, other):
        self._check(other)
        return NormalSection(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other):
        self._check(other)
        return NormalSection(a - b for a, b in zip(self.components, other.components))

    def __neg__(self):
        return NormalSection(-a for a in self.components)

    def scale(self, value):
        return NormalSection(a.scale(value) for a in self.components)

    def is_zero(self):
        return all(a.is_zero() for a in self.components)

    def max_abs_exponent(self):
        return max([a.max_abs_exponent() for a in self.components] + [0])

    def substitute(self, substitution):
        return NormalSection(a.substitute(substitution) for a in self.components)

    def items(self):
        result = []
        for alpha, comp in enumerate(self.components):
            result.extend(((alpha, idx), c) for idx, c in comp.items())
        return result

    def __eq__(self, other):
        return isinstance(other, NormalSection) and self.components == other.components

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return 'NormalSection({0})'.format(' | '.join(str(a) for a in self.components))


class SheafSlot(object):
    """A sheaf over the charts of :attr:`cover`.

    Attributes:
        kind (str): one of the :class:`SlotKind` names.
        degree (int): exterior power ``p``.
        cover (PoissonAtlas): the atlas whose nerve indexes the cochains.
    """
    __metaclass__ = ABCMeta

    kind = None

    def __init__(self, cover, degree):
        self.cover = cover
        self.degree = int(degree)

    def ctx(self, i):
        return self.cover.ctx(i)

    @abstractmethod
    def frame(self, i):
        """Names of the frame variables over chart ``i``."""

    def labels(self, i):
        """Coefficient labels over chart ``i``, sorted."""
        return list(itertools.combinations(range(len(self.frame(i))), self.degree))

    def zero(self, i):
        return Multivector.zero(self.ctx(i), self.frame(i), self.degree)

    def basis_value(self, i, label, poly):
        return Multivector(self.ctx(i), self.frame(i), self.degree, {label: poly})

    def coefficients(self, value):
        return value.items()

    @abstractmethod
    def transport(self, value, j, i):
        """Moves a section from chart ``j`` coordinates to chart ``i``."""

    def describe(self):
        return '{0}^{1}'.format(self.kind, self.degree)

    def __repr__(self):
        return '{0}({1}, p={2})'.format(type(self).__name__, self.cover.name, self.degree)


class TangentSlot(SheafSlot):
    """``wedge^p T`` of an atlas."""
    kind = SlotKind.TANGENT

    def __init__(self, atlas, degree):
        super(TangentSlot, self).__init__(atlas, degree)
        self.atlas = atlas

    def frame(self, i):
        return self.atlas.frame(i)

    def transport(self, value, j, i):
        if i == j:
            return value
        moved = transform(value, self.atlas.transitions[(i, j)], self.atlas.frame(i))
        return moved.substitute(self.atlas.pull(j, i))


class PullbackSlot(SheafSlot):
    """``wedge^p f*T_Y`` over the source of a map."""
    kind = SlotKind.PULLBACK

    def __init__(self, fmap, degree):
        super(PullbackSlot, self).__init__(fmap.source, degree)
        self.fmap = fmap

    def frame(self, i):
        return self.fmap.frame(i)

    def change_frame(self, value, j, i):
        """Frame change ``psi_{a_i a_j}`` in the coordinates of chart ``j``."""
        change = self.fmap.frame_change(i, j)
        if change is None:
            return value
        return transform(value, change, self.fmap.frame(i), self.fmap.substitution(j))

    def transport(self, value, j, i):
        if i == j:
            return value
        return self.change_frame(value, j, i).substitute(self.fmap.source.pull(j, i))


class NormalBundleSlot(SheafSlot):
    """``N_{X/Y} (x) wedge^p T_Y|_X`` for a submanifold X of Y."""
    kind = SlotKind.NORMAL_BUNDLE

    def __init__(self, sub, degree):
        self.sub = sub
        self.inclusion = sub.inclusion()
        super(NormalBundleSlot, self).__init__(self.inclusion.source, degree)
        self._pullback = PullbackSlot(self.inclusion, degree)

    def frame(self, i):
        return self.inclusion.frame(i)

    def labels(self, i):
        idx = list(itertools.combinations(range(len(self.frame(i))), self.degree))
        return [(alpha, I) for alpha in range(self.sub.codimension) for I in idx]

    def zero(self, i):
        return NormalSection([self._pullback.zero(i)] * self.sub.codimension)

    def basis_value(self, i, label, poly):
        alpha, idx = label
        parts = [self._pullback.zero(i)] * self.sub.codimension
        parts[alpha] = self._pullback.basis_value(i, idx, poly)
        return NormalSection(parts)

    def transport(self, value, j, i):
        if i == j:
            return value
        moved = [self._pullback.change_frame(c, j, i) for c in value.components]
        mixing = self.sub.normal_mixing(i, j)
        mixed = []
        for row in mixing:
            total = moved[0].scale(0) if moved else None
            for entry, comp in zip(row, moved):
                if not entry.is_zero():
                    total = total + comp.scale(entry)
            mixed.append(total)
        return NormalSection(mixed).substitute(self.cover.pull(j, i))
