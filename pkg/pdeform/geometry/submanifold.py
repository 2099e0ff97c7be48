#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Poisson submanifolds cut out by coordinate functions.

A :class:`SubmanifoldData` lists, for every ambient chart that meets X, the
defining coordinates ``w^1..w^r`` whose common zero set is X in that chart.
The remaining coordinates of the chart become the coordinates of X.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

from pdeform.geometry.atlas import Chart
from pdeform.geometry.atlas import PoissonAtlas
from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.atlas import ValidationReport
from pdeform.geometry.multivector import Multivector
from pdeform.geometry.multivector import schouten
from pdeform.utils.errors import InvalidSubmanifold
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import Substitution

LOGGER = logging.getLogger(__name__)


def hamiltonian(poly, bivector):
    """Lichnerowicz differential of a function, ``-[f, Lambda]``."""
    return -schouten(Multivector.function(poly), bivector)


class SubmanifoldData(object):
    """A submanifold X of a Poisson atlas Y.

    Args:
        name (str): submanifold name.
        ambient (PoissonAtlas): the atlas of Y.
        defining (dict): ambient chart index -> tuple of defining variable
            names. Chart ``k`` of X is the ``k``-th key in ascending order.

    Attributes:
        charts (list): ambient chart index of each chart of X.
    """

    def __init__(self, name, ambient, defining):
        self.name = name
        self.ambient = ambient
        self.charts = sorted(int(i) for i in defining)
        self.defining = {}
        for i in self.charts:
            names = tuple(defining[i])
            for v in names:
                if v not in ambient.frame(i):
                    raise InvalidSubmanifold('{0} is not a variable of chart {1}'.format(
                        v, ambient.charts[i].name))
            if len(names) != len(defining[self.charts[0]]):
                raise InvalidSubmanifold('codimension differs between charts')
            self.defining[i] = names
        self.codimension = len(self.defining[self.charts[0]]) if self.charts else 0
        self._atlas = None
        self._restrict = {}
        self._tangential = None
        self._mixing = {}
        self._inclusion = None

    def defining_indices(self, i):
        frame = self.ambient.frame(i)
        return tuple(frame.index(v) for v in self.defining[i])

    def free_variables(self, i):
        return tuple(v for v in self.ambient.frame(i) if v not in self.defining[i])

    def induced_atlas(self):
        """The atlas of X with restricted transitions and bivectors."""
        if self._atlas is not None:
            return self._atlas
        amb = self.ambient
        charts = [Chart(amb.charts[i].name, self.free_variables(i)) for i in self.charts]
        atlas = PoissonAtlas(self.name, charts, ring=amb.ring)
        self._atlas = atlas
        transitions = {}
        for k, i in enumerate(self.charts):
            for l, j in enumerate(self.charts):
                if k == l or (i, j) not in amb.transitions:
                    continue
                frame = amb.frame(i)
                comps = amb.transitions[(i, j)]
                restrict = self.restriction(l)
                transitions[(k, l)] = tuple(restrict(comps[frame.index(v)])
                                            for v in self.free_variables(i))
        bivectors = {}
        for k, i in enumerate(self.charts):
            frame = amb.frame(i)
            free = [frame.index(v) for v in self.free_variables(i)]
            restrict = self.restriction(k)
            coeffs = {}
            for idx, coef in amb.bivector(i).items():
                if all(a in free for a in idx):
                    coeffs[tuple(free.index(a) for a in idx)] = restrict(coef)
            bivectors[k] = Multivector.tangent(atlas.ctx(k), 2, coeffs)
        atlas.transitions = transitions
        atlas.bivectors = bivectors
        return atlas

    def restriction(self, k):
        """Substitution from ambient chart ``charts[k]`` to chart ``k`` of X."""
        if k not in self._restrict:
            i = self.charts[k]
            ctx = self.induced_atlas().ctx(k)
            images = []
            for v in self.ambient.frame(i):
                if v in self.defining[i]:
                    images.append(LaurentPoly.zero(ctx))
                else:
                    images.append(LaurentPoly.variable(ctx, v))
            self._restrict[k] = Substitution(self.ambient.ctx(i), ctx, images)
        return self._restrict[k]

    def inclusion(self, name=None):
        """The inclusion of X into Y as a :class:`PoissonMapData`."""
        if name is None and self._inclusion is not None:
            return self._inclusion
        atlas = self.induced_atlas()
        assignment = dict((k, i) for k, i in enumerate(self.charts))
        components = {}
        for k, i in enumerate(self.charts):
            ctx = atlas.ctx(k)
            components[k] = tuple(
                LaurentPoly.zero(ctx) if v in self.defining[i] else LaurentPoly.variable(ctx, v)
                for v in self.ambient.frame(i))
        fmap = PoissonMapData(name or 'incl_{0}'.format(self.name), atlas, self.ambient,
                              assignment, components)
        if name is None:
            self._inclusion = fmap
        return fmap

    def split_tangential(self, i):
        """Writes ``d w^a = sum_b w^b T^b_a`` on ambient chart ``i``.

        Returns:
            tuple: ``(T, remainders)`` where ``T[b][a]`` is a tangent vector
            field on the ambient chart and ``remainders[a]`` collects the terms
            of ``d w^a`` outside the ideal of the defining coordinates.
        """
        amb = self.ambient
        ctx = amb.ctx(i)
        frame = amb.frame(i)
        defining = self.defining_indices(i)
        r = len(defining)
        table = [[dict() for _ in range(r)] for _ in range(r)]
        remainders = []
        for a, wa in enumerate(self.defining[i]):
            dw = hamiltonian(LaurentPoly.variable(ctx, wa), amb.bivector(i))
            rest = {}
            for idx, coef in dw.items():
                for exps, c in coef.terms().items():
                    hit = None
                    for b, pos in enumerate(defining):
                        if exps[pos] > 0:
                            hit = b
                            break
                    if hit is None:
                        rest.setdefault(idx, {})[exps] = c
                        continue
                    reduced = list(exps)
                    reduced[defining[hit]] -= 1
                    cell = table[hit][a].setdefault(idx, {})
                    cell[tuple(reduced)] = cell.get(tuple(reduced), 0) + c
            remainders.append(Multivector(ctx, frame, 1, dict(
                (idx, LaurentPoly(ctx, terms)) for idx, terms in rest.items())))
        tangential = [[Multivector(ctx, frame, 1, dict(
            (idx, LaurentPoly(ctx, terms)) for idx, terms in table[b][a].items()))
            for a in range(r)] for b in range(r)]
        return tangential, remainders

    def tangential(self, k):
        """``T^b_a`` restricted to chart ``k`` of X, as pullback vector fields.

        Raises:
            InvalidSubmanifold: if the ambient bivector is not tangent to X.
        """
        if self._tangential is None:
            table = {}
            for l, i in enumerate(self.charts):
                full, remainders = self.split_tangential(i)
                if any(not rem.is_zero() for rem in remainders):
                    raise InvalidSubmanifold('bivector of {0} is not tangent to {1} on {2}'.format(
                        self.ambient.name, self.name, self.ambient.charts[i].name))
                restrict = self.restriction(l)
                table[l] = [[t.substitute(restrict) for t in row] for row in full]
            self._tangential = table
        return self._tangential[k]

    def normal_mixing(self, k, l):
        """Matrix ``d w_k^a / d w_l^b`` restricted to X, in chart ``l`` coordinates.

        Normal components transform by it from chart ``l`` to chart ``k``.
        """
        key = (k, l)
        if key not in self._mixing:
            i, j = self.charts[k], self.charts[l]
            if i == j:
                ctx = self.induced_atlas().ctx(l)
                r = self.codimension
                self._mixing[key] = [[LaurentPoly.one(ctx) if a == b else LaurentPoly.zero(ctx)
                                      for b in range(r)] for a in range(r)]
            else:
                amb = self.ambient
                comps = amb.transitions[(i, j)]
                frame_i = amb.frame(i)
                ctx_j = amb.ctx(j)
                restrict = self.restriction(l)
                self._mixing[key] = [
                    [restrict(comps[frame_i.index(wa)].diff(ctx_j.index(wb)))
                     for wb in self.defining[j]] for wa in self.defining[i]]
        return self._mixing[key]


def validate_submanifold(sub):
    """Checks that X is well defined and that the bivector is tangent to it.

    Reports ``ideal`` lines for transitions that must preserve the defining
    ideal, and ``tangent`` lines for ``d w^a`` lying in that ideal. On
    success the tangential coefficients are available from
    :meth:`SubmanifoldData.tangential`.
    """
    report = ValidationReport('submanifold {0}'.format(sub.name))
    amb = sub.ambient
    for k, i in enumerate(sub.charts):
        for l, j in enumerate(sub.charts):
            if k == l or (i, j) not in amb.transitions:
                continue
            comps = amb.transitions[(i, j)]
            restrict = sub.restriction(l)
            frame = amb.frame(i)
            residual = None
            for wa in sub.defining[i]:
                value = restrict(comps[frame.index(wa)])
                if not value.is_zero():
                    residual = value
                    break
            report.add('ideal', (k, l), residual)
    for k, i in enumerate(sub.charts):
        _, remainders = sub.split_tangential(i)
        residual = None
        for rem in remainders:
            if not rem.is_zero():
                residual = rem
                break
        report.add('tangent', (k,), residual)
    return report
