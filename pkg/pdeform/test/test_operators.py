#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the chart operators and the Cech differentials
"""
import itertools

import numpy as np

from pdeform.cohomology.cech_cochain import cech_delta
from pdeform.cohomology.cech_cochain import random_cochain
from pdeform.cohomology.cochain_space import element_is_zero
from pdeform.cohomology.hypercohomology import tangent_total
from pdeform.cohomology.pd_space import MapOperators
from pdeform.complexes.operators import chain_map_F
from pdeform.complexes.operators import lichnerowicz_d
from pdeform.complexes.operators import pi_f
from pdeform.complexes.operators import pi_f_expanded
from pdeform.complexes.operators import pullback_fstar
from pdeform.complexes.sheaf_slot import TangentSlot
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import Chart
from pdeform.geometry.atlas import PoissonAtlas
from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.atlas import validate_map
from pdeform.geometry.multivector import Multivector
from pdeform.utils.laurent_util import LaurentPoly


def _lie_atlas():
    atlas = PoissonAtlas('so3', [Chart('U', ('x', 'y', 'z'))])
    ctx = atlas.ctx(0)
    x, y, z = [LaurentPoly.variable(ctx, n) for n in ('x', 'y', 'z')]
    lie = Multivector.tangent(ctx, 2, {(0, 1): z, (1, 2): x, (0, 2): -y})
    return atlas.with_data(bivectors={0: lie})


def _casimir_map(source):
    line = PoissonAtlas('A1', [Chart('W', ('w',))])
    ctx = source.ctx(0)
    x, y, z = [LaurentPoly.variable(ctx, n) for n in ('x', 'y', 'z')]
    return PoissonMapData('casimir', source, line, {0: 0}, {0: (x * x + y * y + z * z,)})


def _random_field(rng, ctx, frame, degree):
    coeffs = {}
    for idx in itertools.combinations(range(len(frame)), degree):
        terms = {}
        for _ in range(2):
            exps = tuple(int(e) for e in rng.integers(0, 3, size=ctx.nvars))
            terms[exps] = int(rng.integers(-2, 3))
        coeffs[idx] = LaurentPoly(ctx, terms)
    return Multivector(ctx, frame, degree, coeffs)


def test_lichnerowicz_squares_to_zero():
    atlas = _lie_atlas()
    rng = np.random.default_rng(3)
    bivector = atlas.bivector(0)
    for degree in range(3):
        for _ in range(5):
            u = _random_field(rng, atlas.ctx(0), atlas.frame(0), degree)
            assert lichnerowicz_d(lichnerowicz_d(u, bivector), bivector).is_zero()


def test_pullback_differential_is_a_chain_map():
    atlas = _lie_atlas()
    rng = np.random.default_rng(5)
    for fmap in (PoissonMapData.identity(atlas), _casimir_map(atlas)):
        assert validate_map(fmap).passed
        frame = fmap.frame(0)
        for degree in range(3):
            u = _random_field(rng, atlas.ctx(0), atlas.frame(0), degree)
            lhs = pi_f(chain_map_F(u, fmap, 0), fmap, 0)
            rhs = chain_map_F(lichnerowicz_d(u, atlas.bivector(0)), fmap, 0)
            assert lhs == rhs
        for degree in range(min(len(frame), 2) + 1):
            Q = _random_field(rng, atlas.ctx(0), frame, degree)
            assert pi_f(pi_f(Q, fmap, 0), fmap, 0).is_zero()
            if degree < 2:
                assert pi_f(Q, fmap, 0) == pi_f_expanded(Q, fmap, 0)


def test_identity_map_differential_is_lichnerowicz():
    scenario = load_scenario('identity_a2')
    fmap = scenario.maps['id']
    ctx = fmap.source.ctx(0)
    x, y = LaurentPoly.variable(ctx, 'x'), LaurentPoly.variable(ctx, 'y')
    g = Multivector.function(x * y * y)
    # d g = -[g, x dx^dy] is the hamiltonian field of x*y^2
    assert pi_f(g, fmap, 0) == lichnerowicz_d(g, fmap.source.bivector(0))
    assert pi_f(g, fmap, 0) == Multivector.tangent(ctx, 1, {(0,): -2 * x * x * y,
                                                             (1,): x * y * y})


def test_cech_delta_squares_to_zero():
    p2 = load_scenario('p2').atlases['P2']
    rng = np.random.default_rng(11)
    for degree in (1, 2):
        slot = TangentSlot(p2, degree)
        for q in (0, 1):
            c = random_cochain(slot, q, rng)
            assert cech_delta(cech_delta(c)).is_zero()


def test_map_operators_commute_with_delta():
    fmap = load_scenario('line_in_p2').maps['f']
    ops = MapOperators(fmap)
    rng = np.random.default_rng(13)
    c = random_cochain(ops.tangent(1), 0, rng)
    assert ops.F(cech_delta(c)) == cech_delta(ops.F(c))
    b = random_cochain(ops.target_tangent(1), 0, rng)
    assert ops.fstar(cech_delta(b)) == cech_delta(ops.fstar(b))
    assert ops.fstar(b).slot is ops.pullback(1)
    for i, a in fmap.assignment.items():
        assert ops.fstar(b).value((i,)) == pullback_fstar(b.value((a,)), fmap, i)


def test_total_differential_squares_to_zero():
    p2 = load_scenario('p2').atlases['P2']
    total = tangent_total(p2, 'T')
    rng = np.random.default_rng(17)
    for k in (0, 1):
        element = total.element(dict(
            ((c, q), random_cochain(total.descriptor.slot(c), q, rng))
            for c, q in total.placements(k)))
        assert element_is_zero(total.differential(total.differential(element, k), k + 1))
