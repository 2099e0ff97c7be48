#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Finite windows of cochain groups, flattened into coordinate vectors.

A space is a list of blocks. A :class:`CechBlock` holds Cech ``q``-cochains of
one slot, a :class:`ScalarBlock` holds a few free rational parameters. An
element of a space is an ``OrderedDict`` from block name to a
:class:`CechCochain` or to a tuple of rationals.

Coordinates are keyed by ``(block, simplex, label, exponents)`` for Cech
blocks and ``(block, k)`` for scalar blocks. On a simplex the chart variables
of ``simplex[0]`` that are inverted on the overlap range over ``[-D, D]``,
the others over ``[0, D]``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import itertools
import logging
from collections import OrderedDict
from collections import namedtuple

from sympy import QQ

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cech_cochain import nerve
from pdeform.utils.errors import NotInSpace
from pdeform.utils.laurent_util import LaurentPoly

LOGGER = logging.getLogger(__name__)

CechBlock = namedtuple('CechBlock', ['name', 'slot', 'q'])
ScalarBlock = namedtuple('ScalarBlock', ['name', 'size'])


def window_exponents(cover, simplex, window):
    """Exponent vectors of the window over ``simplex``, parameters padded with 0."""
    ctx = cover.ctx(simplex[0])
    inverted = cover.inverted_variables(simplex)
    ranges = [range(-window, window + 1) if k in inverted else range(0, window + 1)
              for k in range(ctx.nvars)]
    pad = (0,) * ctx.ring.r
    return [tuple(e) + pad for e in itertools.product(*ranges)]


def iter_terms(element):
    """Yields ``(key, coefficient)`` for every nonzero coordinate of an element."""
    for name, part in element.items():
        if isinstance(part, CechCochain):
            slot = part.slot
            for simplex, value in part.items():
                for label, poly in slot.coefficients(value):
                    for exps, c in poly.terms().items():
                        yield (name, simplex, label, exps), c
        else:
            for k, c in enumerate(part):
                if c:
                    yield (name, k), c


def max_exponent(element):
    return max([part.max_abs_exponent() for part in element.values()
                if isinstance(part, CechCochain)] + [0])


def element_is_zero(element):
    for part in element.values():
        if isinstance(part, CechCochain):
            if not part.is_zero():
                return False
        elif any(part):
            return False
    return True


def _combine(a, b, sign):
    result = OrderedDict()
    for name in list(a) + [n for n in b if n not in a]:
        if name not in b:
            result[name] = a[name]
            continue
        other = b[name]
        if name not in a:
            result[name] = other if sign > 0 else _negate(other)
            continue
        mine = a[name]
        if isinstance(mine, CechCochain):
            result[name] = mine + other if sign > 0 else mine - other
        else:
            result[name] = tuple(x + sign * y for x, y in zip(mine, other))
    return result


def _negate(part):
    if isinstance(part, CechCochain):
        return -part
    return tuple(-x for x in part)


def element_add(a, b):
    return _combine(a, b, 1)


def element_sub(a, b):
    return _combine(a, b, -1)


def element_scale(a, value):
    value = QQ.convert(value)
    result = OrderedDict()
    for name, part in a.items():
        if isinstance(part, CechCochain):
            result[name] = part.scale(value)
        else:
            result[name] = tuple(x * value for x in part)
    return result


class KeyIndex(object):
    """Grows a column numbering for arbitrary coordinate keys."""

    def __init__(self):
        self.keys = []
        self._index = {}

    def __len__(self):
        return len(self.keys)

    def column(self, key):
        n = self._index.get(key)
        if n is None:
            n = len(self.keys)
            self._index[key] = n
            self.keys.append(key)
        return n

    def vector(self, terms):
        vector = {}
        for key, c in terms:
            n = self.column(key)
            value = vector.get(n, QQ(0)) + c
            if value:
                vector[n] = value
            else:
                vector.pop(n, None)
        return vector


class CochainSpace(object):
    """The window ``D`` of a direct sum of cochain blocks.

    Args:
        blocks (list): :class:`CechBlock` and :class:`ScalarBlock` entries
            with distinct names.
        window (int): the exponent window ``D``.
    """

    def __init__(self, blocks, window):
        self.blocks = list(blocks)
        self.window = int(window)
        self._by_name = OrderedDict((b.name, b) for b in self.blocks)
        if len(self._by_name) != len(self.blocks):
            raise ValueError('duplicate block names in {0}'.format([b.name for b in self.blocks]))
        self.keys = []
        for block in self.blocks:
            if isinstance(block, ScalarBlock):
                self.keys.extend((block.name, k) for k in range(block.size))
                continue
            cover = block.slot.cover
            for simplex in nerve(cover)(block.q):
                monomials = window_exponents(cover, simplex, self.window)
                for label in block.slot.labels(simplex[0]):
                    for exps in monomials:
                        self.keys.append((block.name, simplex, label, exps))
        self.index = dict((key, n) for n, key in enumerate(self.keys))
        LOGGER.debug('space %s at D=%d has dimension %d',
                     [b.name for b in self.blocks], self.window, len(self.keys))

    @property
    def dimension(self):
        return len(self.keys)

    def block(self, name):
        return self._by_name[name]

    def zero(self):
        element = OrderedDict()
        for block in self.blocks:
            if isinstance(block, ScalarBlock):
                element[block.name] = (QQ(0),) * block.size
            else:
                element[block.name] = CechCochain.zero(block.slot, block.q)
        return element

    def basis_element(self, n):
        return self.unflatten({n: QQ(1)})

    def split(self, element):
        """``(inside, outside)``: the vector of in-window terms and the rest by key."""
        inside, outside = {}, {}
        for key, c in iter_terms(element):
            n = self.index.get(key)
            if n is None:
                outside[key] = outside.get(key, QQ(0)) + c
            else:
                inside[n] = inside.get(n, QQ(0)) + c
        return (dict((k, v) for k, v in inside.items() if v),
                dict((k, v) for k, v in outside.items() if v))

    def flatten(self, element):
        """Coordinate vector of an element.

        Raises:
            NotInSpace: if the element has terms outside the window.
        """
        inside, outside = self.split(element)
        if outside:
            key = sorted(outside, key=repr)[0]
            raise NotInSpace('term {0} lies outside the window D={1}'.format(key, self.window))
        return inside

    def unflatten(self, vector):
        element = self.zero()
        grouped = OrderedDict()
        for n in sorted(vector):
            c = vector[n]
            if not c:
                continue
            key = self.keys[n]
            if len(key) == 2:
                name, k = key
                values = list(element[name])
                values[k] += c
                element[name] = tuple(values)
                continue
            name, simplex, label, exps = key
            grouped.setdefault((name, simplex, label), {})[exps] = c
        values = OrderedDict()
        for (name, simplex, label), terms in grouped.items():
            slot = self._by_name[name].slot
            poly = LaurentPoly(slot.ctx(simplex[0]), terms)
            piece = slot.basis_value(simplex[0], label, poly)
            store = values.setdefault(name, {})
            store[simplex] = store[simplex] + piece if simplex in store else piece
        for name, by_simplex in values.items():
            block = self._by_name[name]
            element[name] = CechCochain(block.slot, block.q, by_simplex)
        return element

    def __repr__(self):
        return 'CochainSpace({0}, D={1}, dim={2})'.format(
            [b.name for b in self.blocks], self.window, self.dimension)
