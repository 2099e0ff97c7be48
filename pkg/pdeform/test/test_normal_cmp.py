#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the comparison of normal complexes
"""
import itertools

import pytest

from pdeform.complexes.operators import chain_map_F
from pdeform.complexes.sheaf_slot import NormalSection
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import Chart
from pdeform.geometry.atlas import PoissonAtlas
from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.multivector import Multivector
from pdeform.geometry.submanifold import SubmanifoldData
from pdeform.geometry.submanifold import validate_submanifold
from pdeform.normal.normal_cmp import check_chain_square
from pdeform.normal.normal_cmp import compare_normal_cohomology
from pdeform.normal.normal_cmp import nabla_d
from pdeform.normal.normal_cmp import phi_map
from pdeform.utils.errors import InvalidSubmanifold
from pdeform.utils.laurent_util import LaurentPoly


def test_origin_in_plane():
    scenario = load_scenario('point_in_plane')
    origin = scenario.submanifolds['origin']
    comparison = compare_normal_cohomology(origin, scenario.maps['i'])
    assert comparison.entries[0]['source'] == 1
    assert comparison.entries[0]['target'] == 1
    assert comparison.phi0_isomorphism
    assert comparison.entries[1]['source'] == 0
    assert comparison.phi1_injective
    assert 'phi^0 isomorphism yes' in comparison.lines()
    assert comparison.as_dict()['phi1_injective']


def test_line_in_plane():
    line = load_scenario('line_in_p2').submanifolds['line']
    comparison = compare_normal_cohomology(line)
    assert comparison.phi0_isomorphism
    first = comparison.entries[1]
    assert first['rank'] == first['source']
    assert comparison.phi1_injective
    assert comparison.lines()[-2:] == ['phi^0 isomorphism yes', 'phi^1 injective yes']


def test_wrong_inclusion_is_rejected():
    scenario = load_scenario('point_in_plane')
    point, plane = scenario.atlases['pt'], scenario.atlases['A2']
    ctx = point.ctx(0)
    elsewhere = PoissonMapData('j', point, plane, {0: 0},
                               {0: (LaurentPoly.zero(ctx), LaurentPoly.one(ctx))})
    with pytest.raises(InvalidSubmanifold):
        compare_normal_cohomology(scenario.submanifolds['origin'], elsewhere)


def test_phi_commutes_with_differentials_on_a_line():
    line = load_scenario('line_in_p2').submanifolds['line']
    incl = line.inclusion()
    for k in range(len(line.charts)):
        ctx = incl.source.ctx(k)
        frame = incl.frame(k)
        s = LaurentPoly.variable(ctx, ctx.variables[0])
        for degree in (1, 2):
            coeffs = {}
            if degree == 1:
                coeffs = {(0,): s * s + 1, (1,): 2 * s}
            else:
                coeffs = {(0, 1): s - 3}
            g = Multivector(ctx, frame, degree, coeffs)
            assert check_chain_square(line, g, k).is_zero()
    with pytest.raises(InvalidSubmanifold):
        phi_map(Multivector.function(LaurentPoly.one(ctx)), line, 0)


def test_nabla_squares_to_zero_and_phi_kills_tangent_fields():
    line = load_scenario('line_in_p2').submanifolds['line']
    incl = line.inclusion()
    for k in range(len(line.charts)):
        ctx = incl.source.ctx(k)
        frame = incl.frame(k)
        s = LaurentPoly.variable(ctx, ctx.variables[0])
        u = NormalSection([Multivector.function(s * s - 2, frame)])
        assert nabla_d(nabla_d(u, line, k), line, k).is_zero()
        # the first frame direction is tangent to the line in every chart
        along = Multivector(ctx, frame, 1, {(0,): s + 1})
        assert phi_map(along, line, k).is_zero()
        across = Multivector(ctx, frame, 1, {(1,): LaurentPoly.one(ctx)})
        assert not phi_map(across, line, k).is_zero()


def _plane_in_space():
    """``z = 0`` in a three dimensional chart with ``dx^dy + z dy^dz``."""
    space = PoissonAtlas('R3', [Chart('U', ('x', 'y', 'z'))])
    ctx = space.ctx(0)
    z = LaurentPoly.variable(ctx, 'z')
    bivector = Multivector.tangent(ctx, 2, {(0, 1): 1, (1, 2): z})
    return SubmanifoldData('plane', space.with_data(bivectors={0: bivector}), {0: ('z',)})


def test_phi_vanishes_exactly_on_tangential_sections():
    plane = _plane_in_space()
    assert validate_submanifold(plane).passed
    incl = plane.inclusion()
    ctx, frame = incl.source.ctx(0), incl.frame(0)
    x, y = LaurentPoly.variable(ctx, 'x'), LaurentPoly.variable(ctx, 'y')
    values = [LaurentPoly.zero(ctx), LaurentPoly.one(ctx), x, x * y - 2]
    for a, b, c in itertools.product(values, repeat=3):
        field = Multivector(ctx, frame, 1, {(0,): a, (1,): b, (2,): c})
        along = chain_map_F(Multivector.tangent(ctx, 1, {(0,): a, (1,): b}), incl, 0)
        assert phi_map(field, plane, 0).is_zero() == (along == field)

        bivector = Multivector(ctx, frame, 2, {(0, 1): a, (0, 2): b, (1, 2): c})
        along = chain_map_F(Multivector.tangent(ctx, 2, {(0, 1): a}), incl, 0)
        assert phi_map(bivector, plane, 0).is_zero() == (along == bivector)
        assert phi_map(along, plane, 0).is_zero()
