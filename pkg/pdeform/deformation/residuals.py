#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Residual cochains of a lift over a small extension.

Every defining identity of a lifted datum holds modulo ``tau``, so its
failure is ``tau`` times a parameter-free section. These sections, moved
into the coordinates of the first chart of their simplex, form the cochains
of the obstruction classes:

* ``G_ij = tau[psi(Phi_j) - Phi_i(phi_ij)]``, a 1-cochain of ``f*T``;
* ``P_i = tau[Pi(Phi) - Phi_* Lambda_i]``, a 0-cochain of ``wedge^2 f*T``;
* ``K_ijk = tau[phi_ij(phi_jk) - phi_ik]``, a 2-cochain of ``T``;
* ``M_ij = tau[(phi_ij)_* Lambda_j - Lambda_i(phi_ij)]``, a 1-cochain of
  ``wedge^2 T``;
* ``Q_i = tau[-[Lambda_i, Lambda_i]]``, a 0-cochain of ``wedge^3 T``.

Moving ``Phi`` by ``tau a``, ``phi`` by ``tau u`` and ``Lambda`` by ``tau c``
changes ``(-G, -P, K, M, Q/2)`` by ``(Fu - delta a, Fc + pi a, delta u,
delta c + du, dc)``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from collections import OrderedDict

from sympy import QQ

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cech_cochain import nerve
from pdeform.geometry.atlas import gluing_residual
from pdeform.geometry.atlas import poisson_residual
from pdeform.geometry.multivector import Multivector
from pdeform.geometry.multivector import schouten
from pdeform.geometry.multivector import transform
from pdeform.utils.laurent_util import Substitution


def vector_of(polys, ctx, frame):
    return Multivector(ctx, frame, 1, dict(((k,), p) for k, p in enumerate(polys)))


def gluing_cochain(fmap, base, tau, slot):
    """``G`` of a lifted map; ``base`` is the map over QQ."""
    src = base.source
    values = {}
    for (i, j) in nerve(src)(1):
        residual = gluing_residual(fmap, i, j)
        polys = [-r.coefficient_of(tau, src.ctx(j)) for r in residual]
        values[(i, j)] = vector_of(polys, src.ctx(j), base.frame(i)).substitute(src.pull(j, i))
    return CechCochain(slot, 1, values)


def poisson_cochain(fmap, base, tau, slot):
    """``P`` of a lifted map."""
    values = {}
    for i in range(len(base.source)):
        ctx = base.source.ctx(i)
        residual = poisson_residual(fmap, i).with_frame(base.frame(i))
        values[(i,)] = residual.map_coefficients(lambda c: -c.coefficient_of(tau, ctx), ctx)
    return CechCochain(slot, 0, values)


def cocycle_cochain(atlas, base, tau, slot):
    """``K`` of a lifted atlas."""
    values = {}
    for (i, j, k) in nerve(base)(2):
        inner = atlas.pull(j, k)
        lhs = [inner(c) for c in atlas.transitions[(i, j)]]
        polys = [(a - b).coefficient_of(tau, base.ctx(k))
                 for a, b in zip(lhs, atlas.transitions[(i, k)])]
        values[(i, j, k)] = vector_of(polys, base.ctx(k), base.frame(i)).substitute(
            base.pull(k, i))
    return CechCochain(slot, 2, values)


def compatibility_cochain(atlas, base, tau, slot):
    """``M`` of a lifted atlas."""
    values = {}
    for (i, j) in nerve(base)(1):
        comps = atlas.transitions[(i, j)]
        moved = transform(atlas.bivector(j), comps, atlas.frame(i))
        there = atlas.bivector(i).substitute(Substitution(atlas.ctx(i), atlas.ctx(j), comps))
        diff = (moved - there.with_frame(moved.frame))
        ctx = base.ctx(j)
        values[(i, j)] = diff.map_coefficients(
            lambda c: c.coefficient_of(tau, ctx), ctx).substitute(base.pull(j, i))
    return CechCochain(slot, 1, values)


def jacobi_cochain(atlas, base, tau, slot):
    """``Q`` of a lifted atlas."""
    values = {}
    for i in range(len(base)):
        biv = atlas.bivector(i)
        ctx = base.ctx(i)
        values[(i,)] = schouten(biv, biv).map_coefficients(
            lambda c: -c.coefficient_of(tau, ctx), ctx)
    return CechCochain(slot, 0, values)


def atlas_residuals(atlas, base, tau, slot_of):
    """``(K, M, Q)`` of a lifted atlas; ``slot_of(p)`` gives the tangent slots."""
    return (cocycle_cochain(atlas, base, tau, slot_of(1)),
            compatibility_cochain(atlas, base, tau, slot_of(2)),
            jacobi_cochain(atlas, base, tau, slot_of(3)))


def map_residuals(fmap, ops, tau):
    """``(G, P)`` of a lifted map, in the slots of ``ops``."""
    return (gluing_cochain(fmap, ops.fmap, tau, ops.pullback(1)),
            poisson_cochain(fmap, ops.fmap, tau, ops.pullback(2)))


def fixed_both_tuple(fmap, ops, total, tau):
    """``(G, P)`` as a degree 1 element of the total complex of ``f*T``."""
    G, P = map_residuals(fmap, ops, tau)
    return total.element(OrderedDict([((1, 1), G), ((2, 0), P)]))


def fixed_target_tuple(fmap, ops, tau):
    """``(-G, -P, K, M, Q/2)`` as an element of the PD^1 cochain space."""
    G, P = map_residuals(fmap, ops, tau)
    K, M, Q = atlas_residuals(fmap.source, ops.fmap.source, tau, ops.tangent)
    return OrderedDict([('xi', -G), ('eta', -P), ('s', K), ('r', M), ('w', Q.scale(QQ(1, 2)))])
