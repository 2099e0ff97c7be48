#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Exact sparse linear algebra over QQ.

Vectors are sparse dicts ``index -> QQ``. Row reduction is delegated to
:class:`sympy.polys.matrices.DomainMatrix`, everything else works on the
reduced rows it returns.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from pdeform.utils.errors import NotInSpace

LOGGER = logging.getLogger(__name__)


def clean(vector):
    """Drops zero entries of a sparse vector."""
    return dict((k, v) for k, v in vector.items() if v)


def axpy(target, scale, vector):
    """In place ``target += scale * vector`` on sparse vectors."""
    if not scale:
        return target
    for k, v in vector.items():
        value = target.get(k, QQ(0)) + scale * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)
    return target


def to_dense(vector, size):
    zero = QQ(0)
    return tuple(vector.get(k, zero) for k in range(size))


def transpose(columns, nrows):
    """Turns a list of sparse columns into a list of ``nrows`` sparse rows."""
    rows = [dict() for _ in range(nrows)]
    for j, column in enumerate(columns):
        for i, v in column.items():
            if v:
                rows[i][j] = v
    return rows


def _sparse_rows(dm):
    try:
        dok = dm.to_dok()
    except AttributeError:
        return dict((i, dict(row)) for i, row in dm.to_sparse().rep.items())
    rows = {}
    for (i, j), v in dok.items():
        if v:
            rows.setdefault(i, {})[j] = v
    return rows


def rref_rows(rows, ncols):
    """Reduced row echelon form of a sparse row list.

    Args:
        rows (list): sparse rows, dicts ``column -> QQ``.
        ncols (int): number of columns.

    Returns:
        tuple: ``(reduced, pivots)`` where ``reduced[k]`` is the nonzero row
        whose leading entry 1 sits in column ``pivots[k]``.
    """
    data = {}
    for i, row in enumerate(rows):
        row = clean(row)
        if row:
            data[len(data)] = row
    if not data or ncols == 0:
        return [], ()
    dm = DomainMatrix(data, (len(data), ncols), QQ)
    reduced, pivots = dm.rref()
    by_row = _sparse_rows(reduced)
    pivots = tuple(int(p) for p in pivots)
    return [by_row.get(k, {}) for k in range(len(pivots))], pivots


def rank(vectors, ncols):
    return len(rref_rows(vectors, ncols)[1])


def kernel(rows, ncols):
    """Sparse basis of ``{x : rows . x = 0}``, one vector per free column."""
    reduced, pivots = rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = {free: QQ(1)}
        for k, p in enumerate(pivots):
            a = reduced[k].get(free)
            if a:
                vector[p] = -a
        basis.append(vector)
    return basis


def solve(rows, ncols, target):
    """Particular solution of ``rows . x = target``, free variables set to 0.

    This is the pivot solution of the reduced row echelon form, which is
    deterministic but need not have minimum support.

    Args:
        rows (list): sparse rows of the system matrix.
        ncols (int): number of unknowns.
        target (dict): sparse right-hand side indexed by row.

    Returns:
        dict: a sparse solution, or None when the system is inconsistent.
    """
    augmented = []
    nrows = max([len(rows)] + [i + 1 for i in target])
    for i in range(nrows):
        row = dict(rows[i]) if i < len(rows) else {}
        if target.get(i):
            row[ncols] = target[i]
        augmented.append(row)
    reduced, pivots = rref_rows(augmented, ncols + 1)
    if ncols in pivots:
        return None
    solution = {}
    for k, p in enumerate(pivots):
        value = reduced[k].get(ncols)
        if value:
            solution[p] = value
    return solution


class EchelonBasis(object):
    """A subspace of QQ^n held in reduced row echelon form.

    Args:
        vectors (list): spanning sparse vectors.
        ncols (int): ambient dimension.

    Attributes:
        rows (list): reduced basis rows.
        pivots (tuple): pivot column of each row.
    """

    def __init__(self, vectors, ncols):
        self.ncols = ncols
        self.rows, self.pivots = rref_rows(list(vectors), ncols)

    @property
    def dimension(self):
        return len(self.pivots)

    def reduce(self, vector):
        """Normal form of ``vector`` modulo the subspace."""
        result = clean(vector)
        for row, p in zip(self.rows, self.pivots):
            c = result.get(p)
            if c:
                axpy(result, -c, row)
        return result

    def contains(self, vector):
        return not self.reduce(vector)

    def coordinates(self, vector):
        """Coordinates of ``vector`` in the reduced rows.

        Raises:
            NotInSpace: if ``vector`` does not lie in the subspace.
        """
        residual = clean(vector)
        coords = []
        for row, p in zip(self.rows, self.pivots):
            c = residual.get(p, QQ(0))
            coords.append(c)
            if c:
                axpy(residual, -c, row)
        if residual:
            raise NotInSpace('vector has {0} entries outside the span'.format(len(residual)))
        return tuple(coords)


def quotient_basis(space, subspace):
    """Basis of ``space / subspace`` as an :class:`EchelonBasis` of normal forms.

    Args:
        space (list): spanning vectors of the larger space.
        subspace (EchelonBasis): the subspace, contained in the larger one
            or not; only its normal forms matter.
    """
    return EchelonBasis([subspace.reduce(v) for v in space], subspace.ncols)


def quotient_coords(subspace, quotient, vector):
    """Class of ``vector`` in ``quotient`` after reduction modulo ``subspace``."""
    return quotient.coordinates(subspace.reduce(vector))
