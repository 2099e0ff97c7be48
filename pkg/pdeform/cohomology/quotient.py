#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Cohomology of a linear problem ``cocycles / coboundaries`` over QQ.

Every cohomology group of the package is an instance of
:class:`QuotientProblem`: a space of cochain blocks, a relations map whose
kernel is the cocycles, and a coboundary map from a source space. Matrices
are assembled by probing basis elements and reduced exactly.

Within the window ``D`` the coboundaries are ``G(s)`` for sources ``s`` at
the wider window ``2D + source_margin`` whose image has no term outside the
window. The result is audited by recomputing at ``D + audit_step``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

from joblib import Parallel
from joblib import delayed
from sympy import QQ

from pdeform.cohomology.cochain_space import CochainSpace
from pdeform.cohomology.cochain_space import KeyIndex
from pdeform.cohomology.cochain_space import element_is_zero
from pdeform.cohomology.cochain_space import iter_terms
from pdeform.cohomology.cochain_space import max_exponent
from pdeform.utils import gconfig
from pdeform.utils.errors import NotACocycle
from pdeform.utils.errors import WindowInsufficient
from pdeform.utils.grammar_util import format_rational
from pdeform.utils.linalg_util import EchelonBasis
from pdeform.utils.linalg_util import axpy
from pdeform.utils.linalg_util import kernel
from pdeform.utils.linalg_util import quotient_basis
from pdeform.utils.linalg_util import quotient_coords
from pdeform.utils.linalg_util import rank
from pdeform.utils.linalg_util import solve
from pdeform.utils.linalg_util import transpose

LOGGER = logging.getLogger(__name__)


def _probe_batch(fn, space, columns):
    return [list(iter_terms(fn(space.basis_element(n)))) for n in columns]


def probe_columns(fn, space, njobs=None):
    """Term lists of ``fn`` applied to every basis element of ``space``."""
    njobs = gconfig.njobs if njobs is None else njobs
    columns = list(range(space.dimension))
    if njobs == 1 or len(columns) < 64:
        return _probe_batch(fn, space, columns)
    size = max(1, len(columns) // (4 * abs(njobs)))
    batches = [columns[k:k + size] for k in range(0, len(columns), size)]
    results = Parallel(n_jobs=njobs)(delayed(_probe_batch)(fn, space, b) for b in batches)
    return [terms for batch in results for terms in batch]


def solve_preimage(fn, source_blocks, target, window, margin=None, njobs=None):
    """Some ``s`` with ``fn(s) == target``, free coordinates set to zero.

    The solution is the pivot solution of the reduced row echelon form over
    the basis order of the source space: every non-pivot coordinate is zero.
    It is deterministic but not the solution of minimum support; two runs
    on the same input return the same ``s``.

    The source window starts at ``max(window, exponents of target) + margin``
    and is widened once to twice that plus the margin.

    Returns:
        OrderedDict: the source element, or None when no preimage exists in
        either window.
    """
    margin = gconfig.source_margin if margin is None else margin
    start = max(window, max_exponent(target)) + margin
    if element_is_zero(target):
        return CochainSpace(source_blocks, 0).zero()
    for width in (start, 2 * start + margin):
        source = CochainSpace(source_blocks, width)
        index = KeyIndex()
        columns = [index.vector(terms) for terms in probe_columns(fn, source, njobs)]
        rhs = index.vector(iter_terms(target))
        solution = solve(transpose(columns, len(index)), source.dimension, rhs)
        if solution is not None:
            LOGGER.debug('preimage found at source window %d', width)
            return source.unflatten(solution)
    return None


class CohomologyResult(object):
    """One cohomology group computed at one window.

    Attributes:
        name (str): label of the group.
        window (int): the window ``D`` of the representatives.
        space (CochainSpace): the cochain space at ``D``.
        cocycles (EchelonBasis): cocycles inside the window.
        boundaries (EchelonBasis): coboundaries inside the window.
        quotient (EchelonBasis): normal forms spanning the quotient.
        basis (list): representatives, one element per quotient row.
        audit (str): verdict of the window sufficiency audit.
    """

    def __init__(self, name, space, cocycles, boundaries, quotient):
        self.name = name
        self.space = space
        self.window = space.window
        self.cocycles = cocycles
        self.boundaries = boundaries
        self.quotient = quotient
        self.basis = [space.unflatten(row) for row in quotient.rows]
        self.audit = 'skipped'

    @property
    def dimension(self):
        return self.quotient.dimension

    def lines(self, degree=None, with_basis=True):
        head = '{0} dim={1}'.format(self.name if degree is None else 'H^{0}'.format(degree),
                                   self.dimension)
        out = [head]
        if with_basis:
            for k, element in enumerate(self.basis):
                out.extend(describe_element(element, '  basis[{0}]'.format(k)))
        return out

    def as_dict(self):
        return {'name': self.name, 'dim': self.dimension, 'window': self.window,
                'audit': self.audit,
                'basis': [describe_element(e, '') for e in self.basis]}

    def __repr__(self):
        return 'CohomologyResult({0!r}, dim={1}, D={2})'.format(
            self.name, self.dimension, self.window)


def describe_element(element, prefix):
    """Text lines of the nonzero parts of an element."""
    out = []
    for name, part in element.items():
        if isinstance(part, tuple):
            if any(part):
                out.append('{0} {1} = ({2})'.format(
                    prefix, name, ', '.join(format_rational(c) for c in part)).strip())
            continue
        for simplex, value in part.items():
            out.append('{0} {1} [{2}] {3}'.format(
                prefix, name, ','.join(str(k) for k in simplex), value).strip())
    return out


class QuotientProblem(object):
    """``{x : relations(x) = 0} / coboundary(source)``.

    Args:
        name (str): label used in reports.
        blocks (list): blocks of the space of ``x``.
        relations (callable): ``x -> element`` whose vanishing defines the
            cocycles; None when every element is a cocycle. With
            ``aux_blocks`` it is called as ``relations(x, y)`` and a cocycle
            is an ``x`` for which some ``y`` makes it vanish.
        coboundary (callable): ``s -> x``, None for no coboundaries.
        source_blocks (list): blocks of the space of ``s``.
        source_constraint (callable): ``s -> element`` that must vanish for
            ``s`` to count.
        aux_blocks (list): blocks of the auxiliary unknowns ``y``.
        njobs (int): joblib workers for assembly.
    """

    def __init__(self, name, blocks, relations=None, coboundary=None, source_blocks=(),
                 source_constraint=None, aux_blocks=(), njobs=None):
        self.name = name
        self.blocks = list(blocks)
        self.relations = relations
        self.coboundary = coboundary
        self.source_blocks = list(source_blocks)
        self.source_constraint = source_constraint
        self.aux_blocks = list(aux_blocks)
        self.njobs = njobs
        self._cache = {}

    def source_window(self, window):
        return 2 * window + gconfig.source_margin

    def _relations_of(self, x, y=None):
        if self.aux_blocks:
            return self.relations(x, y)
        return self.relations(x)

    def _cocycles(self, space):
        if self.relations is None:
            return EchelonBasis([{n: QQ(1)} for n in range(space.dimension)], space.dimension)
        index = KeyIndex()
        if self.aux_blocks:
            aux = CochainSpace(self.aux_blocks, self.source_window(space.window))
            zero_aux, zero_x = aux.zero(), space.zero()
            columns = [index.vector(t) for t in probe_columns(
                lambda x: self._relations_of(x, zero_aux), space, self.njobs)]
            columns += [index.vector(t) for t in probe_columns(
                lambda y: self._relations_of(zero_x, y), aux, self.njobs)]
        else:
            columns = [index.vector(t) for t in probe_columns(
                self._relations_of, space, self.njobs)]
        n = space.dimension
        null = kernel(transpose(columns, len(index)), len(columns))
        projected = [dict((k, v) for k, v in vec.items() if k < n) for vec in null]
        return EchelonBasis(projected, n)

    def _boundaries(self, space):
        if self.coboundary is None or not self.source_blocks:
            return EchelonBasis([], space.dimension)
        source = CochainSpace(self.source_blocks, self.source_window(space.window))
        outside = KeyIndex()
        inside_columns, outside_columns = [], []
        for n in range(source.dimension):
            s = source.basis_element(n)
            inside, out = space.split(self.coboundary(s))
            terms = list(out.items())
            if self.source_constraint is not None:
                terms += [(('constraint',) + key, c)
                          for key, c in iter_terms(self.source_constraint(s))]
            inside_columns.append(inside)
            outside_columns.append(outside.vector(terms))
        if not len(outside):
            return EchelonBasis(inside_columns, space.dimension)
        vectors = []
        for combo in kernel(transpose(outside_columns, len(outside)), source.dimension):
            vector = {}
            for k, c in combo.items():
                axpy(vector, c, inside_columns[k])
            vectors.append(vector)
        return EchelonBasis(vectors, space.dimension)

    def _compute(self, window):
        if window not in self._cache:
            space = CochainSpace(self.blocks, window)
            cocycles = self._cocycles(space)
            boundaries = self._boundaries(space)
            quotient = quotient_basis(cocycles.rows, boundaries)
            result = CohomologyResult(self.name, space, cocycles, boundaries, quotient)
            LOGGER.info('%s at D=%d: %d cocycles, %d coboundaries, dim %d', self.name, window,
                        cocycles.dimension, boundaries.dimension, result.dimension)
            self._cache[window] = result
        return self._cache[window]

    def compute(self, window=None, audit=True):
        """Cohomology at ``window``, audited against ``window + audit_step``.

        Raises:
            WindowInsufficient: if the audited dimensions differ.
        """
        window = gconfig.window if window is None else int(window)
        result = self._compute(window)
        if audit:
            wider = window + gconfig.audit_step
            other = self._compute(wider)
            if other.dimension != result.dimension:
                raise WindowInsufficient('{0}: dim {1} at D={2} but {3} at D={4}'.format(
                    self.name, result.dimension, window, other.dimension, wider))
            result.audit = 'pass D={0},{1}'.format(window, wider)
        return result

    def check_cocycle(self, element, aux=None):
        """Raises :class:`NotACocycle` unless the relations vanish on ``element``.

        For problems with auxiliary unknowns the check needs ``aux``; it is
        skipped when ``aux`` is None.
        """
        if self.relations is None or (self.aux_blocks and aux is None):
            return
        if not element_is_zero(self._relations_of(element, aux)):
            raise NotACocycle('{0}: element violates the cocycle relations'.format(self.name))

    def classify(self, result, element, aux=None):
        """Coordinates of the class of ``element`` in ``result.basis``.

        Elements with exponents beyond the window are classified at a wider
        window and converted back to the basis of ``result``.

        Raises:
            NotACocycle: if ``element`` is not closed.
            WindowInsufficient: if the conversion between windows fails.
        """
        self.check_cocycle(element, aux)
        needed = max_exponent(element)
        target = result if needed <= result.window else self._compute(needed)
        coords = quotient_coords(target.boundaries, target.quotient, target.space.flatten(element))
        if target is result:
            return coords
        columns = []
        for rep in result.basis:
            rep_coords = quotient_coords(target.boundaries, target.quotient,
                                         target.space.flatten(rep))
            columns.append(dict((k, c) for k, c in enumerate(rep_coords) if c))
        rhs = dict((k, c) for k, c in enumerate(coords) if c)
        solution = solve(transpose(columns, target.dimension), len(columns), rhs)
        if solution is None or target.dimension != result.dimension:
            raise WindowInsufficient('{0}: class at D={1} is not spanned by the basis at D={2}'
                                     .format(self.name, target.window, result.window))
        return tuple(solution.get(k, QQ(0)) for k in range(result.dimension))

    def is_coboundary(self, result, element, aux=None):
        return not any(self.classify(result, element, aux))


def induced_matrix(source, target_problem, target, fn, aux_fn=None):
    """Matrix of the map induced by ``fn`` between two computed groups.

    Returns:
        list: one coordinate tuple (in ``target``) per basis element of
        ``source``.
    """
    rows = []
    for element in source.basis:
        aux = aux_fn(element) if aux_fn is not None else None
        rows.append(target_problem.classify(target, fn(element), aux))
    return rows


def matrix_rank(rows, ncols):
    return rank([dict((k, c) for k, c in enumerate(row) if c) for row in rows], ncols)
