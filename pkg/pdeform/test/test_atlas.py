#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing Poisson atlases, maps and submanifolds
"""
import pytest

from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import Chart
from pdeform.geometry.atlas import PoissonAtlas
from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.atlas import relabel
from pdeform.geometry.atlas import triples
from pdeform.geometry.atlas import validate_atlas
from pdeform.geometry.atlas import validate_map
from pdeform.geometry.multivector import Multivector
from pdeform.geometry.submanifold import SubmanifoldData
from pdeform.geometry.submanifold import validate_submanifold
from pdeform.utils.errors import CompositionMismatch
from pdeform.utils.errors import InvalidSubmanifold
from pdeform.utils.laurent_util import LaurentPoly


def _plane():
    return load_scenario('identity_a2').atlases['A2']


def test_projective_plane_is_valid():
    p2 = load_scenario('p2').atlases['P2']
    report = validate_atlas(p2)
    assert report.passed
    assert triples(p2) == [(0, 1, 2)]
    assert 'CHECK jacobi [0] PASS residual=0' in report.lines()
    assert report.as_dict()['passed']
    assert validate_atlas(relabel(p2, (2, 0, 1))).passed


def test_broken_transition_is_reported():
    p1 = load_scenario('p1_zero').atlases['P1']
    w = LaurentPoly.variable(p1.ctx(1), 'w')
    broken = p1.with_data(transitions={(0, 1): (w ** -2,)})
    report = validate_atlas(broken)
    assert not report.passed
    assert report.failures()[0].name == 'cocycle'
    assert any(line.endswith('FAIL residual={0}'.format(report.failures()[0].residual))
               for line in report.lines())


def test_non_poisson_and_incompatible_bivectors():
    chart = Chart('U', ('x', 'y', 'z'))
    space = PoissonAtlas('R3', [chart])
    ctx = space.ctx(0)
    y, z = LaurentPoly.variable(ctx, 'y'), LaurentPoly.variable(ctx, 'z')
    bad = Multivector.tangent(ctx, 2, {(0, 1): z, (1, 2): y})
    report = validate_atlas(space.with_data(bivectors={0: bad}))
    assert [c.name for c in report.failures()] == ['jacobi']

    p2 = load_scenario('p2').atlases['P2']
    lopsided = p2.with_data(bivectors={1: Multivector.tangent(p2.ctx(1), 2)})
    assert 'compatibility' in [c.name for c in validate_atlas(lopsided).failures()]


def test_maps_validate_and_compose():
    scenario = load_scenario('point_in_plane')
    plane, point = scenario.atlases['A2'], scenario.atlases['pt']
    incl = scenario.maps['i']
    assert validate_map(incl).passed

    ident = PoissonMapData.identity(plane)
    assert validate_map(ident).passed
    composite = incl.compose(ident)
    assert composite.source is point
    assert composite.components == incl.components
    with pytest.raises(CompositionMismatch):
        incl.compose(incl)

    ctx = plane.ctx(0)
    x, y = LaurentPoly.variable(ctx, 'x'), LaurentPoly.variable(ctx, 'y')
    swap = PoissonMapData('swap', plane, plane, {0: 0}, {0: (y, x)})
    report = validate_map(swap)
    assert [c.name for c in report.failures()] == ['poisson']


def test_submanifolds():
    scenario = load_scenario('line_in_p2')
    line = scenario.submanifolds['line']
    assert validate_submanifold(line).passed
    assert line.codimension == 1
    induced = line.induced_atlas()
    assert [c.variables for c in induced.charts] == [('x1',), ('u0',)]
    assert validate_atlas(induced).passed
    assert validate_map(line.inclusion()).passed

    origin = load_scenario('point_in_plane').submanifolds['origin']
    assert validate_submanifold(origin).passed
    assert origin.induced_atlas().dimension(0) == 0


def test_submanifold_must_be_poisson():
    plane = _plane()
    axis = SubmanifoldData('axis', plane, {0: ('y',)})
    report = validate_submanifold(axis)
    assert [c.name for c in report.failures()] == ['tangent']
    with pytest.raises(InvalidSubmanifold):
        SubmanifoldData('bad', plane, {0: ('q',)})
