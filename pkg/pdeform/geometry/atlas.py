#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Poisson atlases, Poisson maps between them, and their validation.

An atlas is a list of charts with transition maps ``z_i = phi_ij(z_j)``,
stored under the key ``(i, j)`` as one polynomial in the variables of chart
``j`` per variable of chart ``i``, plus one Poisson bivector per chart.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import namedtuple

import networkx as nx

from pdeform.geometry.multivector import ChartMap
from pdeform.geometry.multivector import Multivector
from pdeform.geometry.multivector import schouten
from pdeform.geometry.multivector import transform
from pdeform.utils.errors import CompositionMismatch
from pdeform.utils.errors import ContextMismatch
from pdeform.utils.errors import TransportFailure
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import ParamRing
from pdeform.utils.laurent_util import Substitution
from pdeform.utils.laurent_util import VariableContext

LOGGER = logging.getLogger(__name__)

Chart = namedtuple('Chart', ['name', 'variables'])

CheckLine = namedtuple('CheckLine', ['name', 'simplex', 'passed', 'residual'])


class ValidationReport(object):
    """Outcome of a list of identity checks, one line per identity."""

    def __init__(self, subject=''):
        self.subject = subject
        self.checks = []

    def add(self, name, simplex, residual):
        """Records a check; ``residual`` is None or a zero polynomial on success."""
        passed = residual is None or _is_zero(residual)
        self.checks.append(CheckLine(name, tuple(simplex), passed,
                                     '0' if passed else str(residual)))
        if not passed:
            LOGGER.info('%s: check %s %s failed', self.subject, name, list(simplex))
        return passed

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        return ['CHECK {0} [{1}] {2} residual={3}'.format(
            c.name, ','.join(str(k) for k in c.simplex), 'PASS' if c.passed else 'FAIL',
            c.residual) for c in self.checks]

    def as_dict(self):
        return {'subject': self.subject, 'passed': self.passed,
                'checks': [dict(c._asdict(), simplex=list(c.simplex)) for c in self.checks]}

    def __str__(self):
        return '\n'.join(self.lines())


def _is_zero(value):
    if isinstance(value, (LaurentPoly, Multivector)):
        return value.is_zero()
    return not value


def first_nonzero(values):
    """First nonzero entry of a sequence of residuals, or None."""
    for value in values:
        if not _is_zero(value):
            return value
    return None


class PoissonAtlas(object):
    """Charts, transitions and per-chart Poisson bivectors.

    Args:
        name (str): atlas name.
        charts (list): :class:`Chart` entries; a chart without variables is a
            point.
        transitions (dict): ``(i, j) -> tuple`` giving the variables of chart
            ``i`` as polynomials in chart ``j``.
        bivectors (dict): chart index -> degree 2 tangent :class:`Multivector`;
            missing charts carry the zero bivector.
        ring (ParamRing): parameter ring of every chart context.
    """

    def __init__(self, name, charts, transitions=None, bivectors=None, ring=None):
        self.name = name
        self.charts = [Chart(c.name, tuple(c.variables)) for c in charts]
        self.ring = ring if ring is not None else ParamRing()
        self._ctx = [VariableContext(c.variables, self.ring, label=c.name) for c in self.charts]
        self.transitions = {}
        for (i, j), comps in (transitions or {}).items():
            comps = tuple(comps)
            if len(comps) != len(self.charts[i].variables):
                raise ContextMismatch('transition {0} <- {1} has {2} components'.format(
                    self.charts[i].name, self.charts[j].name, len(comps)))
            self.transitions[(i, j)] = tuple(c.recast(self._ctx[j]) for c in comps)
        self.bivectors = {}
        for i in range(len(self.charts)):
            biv = (bivectors or {}).get(i)
            if biv is None:
                biv = Multivector.tangent(self._ctx[i], 2)
            elif biv.ctx != self._ctx[i]:
                biv = biv.recast(self._ctx[i])
            self.bivectors[i] = biv
        self._subs = {}
        self._nerve = None

    def __len__(self):
        return len(self.charts)

    def ctx(self, i):
        return self._ctx[i]

    def frame(self, i):
        return self.charts[i].variables

    def dimension(self, i):
        return len(self.charts[i].variables)

    def chart_index(self, name):
        for i, chart in enumerate(self.charts):
            if chart.name == name:
                return i
        raise KeyError(name)

    def bivector(self, i):
        return self.bivectors[i]

    def overlaps(self):
        """Unordered overlapping pairs ``(i, j)`` with ``i < j``."""
        return sorted(set((min(i, j), max(i, j)) for (i, j) in self.transitions if i != j))

    def overlap_graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.charts)))
        graph.add_edges_from(self.overlaps())
        return graph

    def transition(self, i, j):
        """Chart map from chart ``j`` to chart ``i``."""
        if i == j:
            ctx = self._ctx[i]
            ident = tuple(LaurentPoly.variable(ctx, v) for v in ctx.variables)
            return ChartMap(ctx, ctx, ident, ident)
        try:
            comps = self.transitions[(i, j)]
        except KeyError:
            raise TransportFailure('atlas {0} has no transition {1} <- {2}'.format(
                self.name, i, j))
        return ChartMap(self._ctx[j], self._ctx[i], comps, self.transitions.get((j, i)))

    def pull(self, j, i):
        """Substitution expressing functions of chart ``j`` in chart ``i``."""
        key = (j, i)
        if key not in self._subs:
            if i == j:
                ctx = self._ctx[i]
                images = tuple(LaurentPoly.variable(ctx, v) for v in ctx.variables)
            elif key in self.transitions:
                images = self.transitions[key]
            else:
                raise TransportFailure('atlas {0} has no transition {1} <- {2}'.format(
                    self.name, j, i))
            self._subs[key] = Substitution(self._ctx[j], self._ctx[i], images)
        return self._subs[key]

    def inverted_variables(self, simplex):
        """Variables of chart ``simplex[0]`` that are units on the overlap."""
        first = simplex[0]
        inverted = set()
        for other in simplex[1:]:
            for comp in self.transitions.get((other, first), ()):
                for exps in comp.terms():
                    for k, e in enumerate(exps[:comp.ctx.nvars]):
                        if e < 0:
                            inverted.add(k)
        return frozenset(inverted)

    def recast(self, ring):
        """The same atlas over another parameter ring (parameters dropped if absent)."""
        atlas = PoissonAtlas(self.name, self.charts, ring=ring)
        atlas.transitions = dict(
            (key, tuple(c.recast(atlas.ctx(key[1]), drop_missing=True) for c in comps))
            for key, comps in self.transitions.items())
        atlas.bivectors = dict((i, b.recast(atlas.ctx(i), drop_missing=True))
                               for i, b in self.bivectors.items())
        return atlas

    def at_zero(self):
        return self.recast(ParamRing())

    def with_data(self, transitions=None, bivectors=None):
        """Copy with some transitions or bivectors replaced."""
        atlas = PoissonAtlas(self.name, self.charts, ring=self.ring)
        atlas.transitions = dict(self.transitions)
        atlas.transitions.update(transitions or {})
        atlas.bivectors = dict(self.bivectors)
        atlas.bivectors.update(bivectors or {})
        return atlas

    def same_charts(self, other):
        return self.charts == other.charts

    def __repr__(self):
        return 'PoissonAtlas({0!r}, charts={1})'.format(
            self.name, [c.name for c in self.charts])


def triples(atlas):
    """Increasing triples of pairwise overlapping charts."""
    graph = atlas.overlap_graph()
    result = []
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) == 3:
            result.append(tuple(sorted(clique)))
        elif len(clique) > 3:
            break
    return sorted(result)


def _identity_residual(atlas, i, j):
    comps = atlas.transitions[(i, j)]
    back = atlas.pull(j, i)
    ctx = atlas.ctx(i)
    return first_nonzero(back(c) - LaurentPoly.variable(ctx, v)
                         for c, v in zip(comps, ctx.variables))


def validate_atlas(atlas):
    """Checks inverse pairs, the cocycle condition, Jacobi and compatibility.

    Returns:
        ValidationReport: one line per identity. An inverse pair failure is
        reported as the cocycle check on ``[i, j, i]``.
    """
    report = ValidationReport('atlas {0}'.format(atlas.name))
    for (i, j) in atlas.overlaps():
        for a, b in ((i, j), (j, i)):
            if (a, b) not in atlas.transitions or (b, a) not in atlas.transitions:
                report.add('cocycle', (a, b, a), 'missing transition')
                continue
            report.add('cocycle', (a, b, a), _identity_residual(atlas, a, b))
    for (i, j, k) in triples(atlas):
        try:
            inner = atlas.pull(j, k)
            lhs = [inner(c) for c in atlas.transitions[(i, j)]]
            rhs = atlas.transitions[(i, k)]
        except (KeyError, TransportFailure):
            report.add('cocycle', (i, j, k), 'missing transition')
            continue
        report.add('cocycle', (i, j, k), first_nonzero(a - b for a, b in zip(lhs, rhs)))
    for i in range(len(atlas)):
        biv = atlas.bivector(i)
        square = schouten(biv, biv)
        report.add('jacobi', (i,), first_nonzero(c for _, c in square.items()))
    for (i, j) in atlas.overlaps():
        if (i, j) not in atlas.transitions:
            continue
        report.add('compatibility', (i, j), _compatibility_residual(atlas, i, j))
    return report


def _compatibility_residual(atlas, i, j):
    comps = atlas.transitions[(i, j)]
    moved = transform(atlas.bivector(j), comps, atlas.frame(i))
    there = atlas.bivector(i).substitute(Substitution(atlas.ctx(i), atlas.ctx(j), comps))
    diff = moved - there.with_frame(moved.frame)
    return first_nonzero(c for _, c in diff.items())


class PoissonMapData(object):
    """A map between two atlases, given chart by chart.

    Args:
        name (str): map name.
        source (PoissonAtlas): the atlas of X.
        target (PoissonAtlas): the atlas of Y.
        assignment (dict): source chart ``i`` -> target chart ``a_i`` with
            ``f(U_i)`` inside ``V_{a_i}``.
        components (dict): source chart ``i`` -> tuple of polynomials in chart
            ``i``, one per variable of chart ``a_i``.
    """

    def __init__(self, name, source, target, assignment, components):
        self.name = name
        self.source = source
        self.target = target
        self.assignment = dict((int(i), int(a)) for i, a in assignment.items())
        self.components = {}
        for i in range(len(source)):
            if i not in self.assignment:
                raise ContextMismatch('map {0}: source chart {1} is not assigned'.format(name, i))
            comps = tuple(components[i])
            a = self.assignment[i]
            if len(comps) != target.dimension(a):
                raise ContextMismatch('map {0}: chart {1} needs {2} components'.format(
                    name, i, target.dimension(a)))
            self.components[i] = tuple(c.recast(source.ctx(i)) for c in comps)
        self._subs = {}
        self._partials = {}

    @classmethod
    def identity(cls, atlas, name='id'):
        components = dict((i, tuple(LaurentPoly.variable(atlas.ctx(i), v)
                                    for v in atlas.frame(i))) for i in range(len(atlas)))
        return cls(name, atlas, atlas, dict((i, i) for i in range(len(atlas))), components)

    @property
    def ring(self):
        return self.source.ring

    def frame(self, i):
        """Target frame over source chart ``i``."""
        return self.target.frame(self.assignment[i])

    def substitution(self, i):
        """Composition with ``f_i`` for functions on the target chart ``a_i``."""
        if i not in self._subs:
            self._subs[i] = Substitution(self.target.ctx(self.assignment[i]),
                                         self.source.ctx(i), self.components[i])
        return self._subs[i]

    def bivector_partials(self, i):
        """``(d Pi_{bc} / d w^k) o f_i`` for every stored coefficient ``(b, c)``."""
        if i not in self._partials:
            a = self.assignment[i]
            sub = self.substitution(i)
            frame = self.target.frame(a)
            table = {}
            for idx, coef in self.target.bivector(a).items():
                table[idx] = [sub(coef.diff(k)) for k in range(len(frame))]
            self._partials[i] = table
        return self._partials[i]

    def chart_map(self, i):
        return ChartMap(self.source.ctx(i), self.target.ctx(self.assignment[i]),
                        self.components[i])

    def frame_change(self, i, j):
        """Components of ``psi_{a_i a_j}`` or None when ``a_i == a_j``.

        Raises:
            TransportFailure: if the target atlas lacks the transition.
        """
        a, b = self.assignment[i], self.assignment[j]
        if a == b:
            return None
        try:
            return self.target.transitions[(a, b)]
        except KeyError:
            raise TransportFailure('map {0}: target has no transition {1} <- {2}'.format(
                self.name, a, b))

    def recast(self, ring):
        source, target = self.source.recast(ring), self.target.recast(ring)
        components = dict((i, tuple(c.recast(source.ctx(i), drop_missing=True) for c in comps))
                          for i, comps in self.components.items())
        return PoissonMapData(self.name, source, target, self.assignment, components)

    def at_zero(self):
        return self.recast(ParamRing())

    def with_data(self, source=None, target=None, components=None):
        source = source if source is not None else self.source
        target = target if target is not None else self.target
        merged = dict(self.components)
        merged.update(components or {})
        return PoissonMapData(self.name, source, target, self.assignment, merged)

    def compose(self, other, name=None):
        """The composite ``other o self``.

        Raises:
            CompositionMismatch: if ``other`` does not start where ``self`` ends.
        """
        if other.source is not self.target and not (
                other.source.name == self.target.name
                and other.source.same_charts(self.target)):
            raise CompositionMismatch('{0} ends on {1}, {2} starts on {3}'.format(
                self.name, self.target.name, other.name, other.source.name))
        assignment, components = {}, {}
        for i in range(len(self.source)):
            a = self.assignment[i]
            assignment[i] = other.assignment[a]
            sub = self.substitution(i)
            components[i] = tuple(sub(c.recast(sub.source)) for c in other.components[a])
        return PoissonMapData(name or '{0}.{1}'.format(other.name, self.name),
                              self.source, other.target, assignment, components)

    def __repr__(self):
        return 'PoissonMapData({0!r}: {1} -> {2})'.format(
            self.name, self.source.name, self.target.name)


def gluing_residual(fmap, i, j):
    """``Phi_i(phi_ij) - psi_{a_i a_j}(Phi_j)`` as functions on chart ``j``."""
    src = fmap.source
    lhs = [src.pull(i, j)(c) for c in fmap.components[i]]
    change = fmap.frame_change(i, j)
    if change is None:
        rhs = fmap.components[j]
    else:
        sub = fmap.substitution(j)
        rhs = [sub(c) for c in change]
    return [a - b for a, b in zip(lhs, rhs)]


def poisson_residual(fmap, i):
    """``Phi_* Lambda_i - Pi_{a_i} o Phi`` in the pullback frame over chart ``i``."""
    moved = transform(fmap.source.bivector(i), fmap.components[i], fmap.frame(i),
                      None)
    target = fmap.target.bivector(fmap.assignment[i]).substitute(fmap.substitution(i))
    return moved - target.with_frame(moved.frame)


def validate_map(fmap):
    """Checks gluing on source overlaps and the Poisson condition per chart."""
    report = ValidationReport('map {0}'.format(fmap.name))
    for (i, j) in fmap.source.overlaps():
        for a, b in ((i, j), (j, i)):
            if (a, b) not in fmap.source.transitions:
                continue
            try:
                residual = first_nonzero(gluing_residual(fmap, a, b))
            except TransportFailure as err:
                residual = str(err)
            report.add('gluing', (a, b), residual)
    for i in range(len(fmap.source)):
        residual = poisson_residual(fmap, i)
        report.add('poisson', (i,), first_nonzero(c for _, c in residual.items()))
    return report


def relabel(atlas, order):
    """Atlas with charts permuted: new chart ``k`` is old chart ``order[k]``."""
    position = dict((old, new) for new, old in enumerate(order))
    charts = [atlas.charts[old] for old in order]
    relabeled = PoissonAtlas(atlas.name, charts, ring=atlas.ring)
    relabeled.transitions = dict(
        ((position[i], position[j]), tuple(c.recast(relabeled.ctx(position[j])) for c in comps))
        for (i, j), comps in atlas.transitions.items())
    relabeled.bivectors = dict((position[i], b.recast(relabeled.ctx(position[i])))
                               for i, b in atlas.bivectors.items())
    return relabeled


def relabel_map(fmap, source_order, target_order):
    """Consistent chart relabeling of a map, for invariance checks."""
    source = relabel(fmap.source, source_order)
    target = relabel(fmap.target, target_order)
    s_pos = dict((old, new) for new, old in enumerate(source_order))
    t_pos = dict((old, new) for new, old in enumerate(target_order))
    assignment = dict((s_pos[i], t_pos[a]) for i, a in fmap.assignment.items())
    components = {}
    for i, comps in fmap.components.items():
        ctx = source.ctx(s_pos[i])
        components[s_pos[i]] = tuple(c.recast(ctx) for c in comps)
    return PoissonMapData(fmap.name, source, target, assignment, components)
