#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing hypercohomology of the Lichnerowicz complex
"""
import pytest

from pdeform.cohomology.hypercohomology import TotalComplex
from pdeform.cohomology.hypercohomology import cohomology_problem
from pdeform.cohomology.hypercohomology import cokernel_problem
from pdeform.cohomology.hypercohomology import hypercohomology
from pdeform.cohomology.hypercohomology import pullback_total
from pdeform.cohomology.hypercohomology import tangent_map
from pdeform.cohomology.hypercohomology import tangent_total
from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.complexes.operators import single_slot_complex
from pdeform.complexes.sheaf_slot import TangentSlot
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import relabel
from pdeform.geometry.multivector import Multivector
from pdeform.utils.errors import NotACocycle
from pdeform.utils.errors import WindowInsufficient
from pdeform.utils.laurent_util import LaurentPoly
from time import time


def _p1():
    return load_scenario('p1_zero').atlases['P1']


def test_projective_line():
    t1 = time()
    report = hypercohomology(tangent_total(_p1()), degrees=(0, 1))
    assert list(report.dimensions().values()) == [3, 0]
    assert report[0].audit.startswith('pass')
    assert report.lines(with_basis=False)[1].startswith('H^0 dim=3 window=3 audit=pass')
    assert report.as_dict()['degrees']['0']['dim'] == 3
    print('P1 hypercohomology: %f sec' % (time() - t1))


def test_relabeling_keeps_dimensions():
    swapped = relabel(_p1(), (1, 0))
    report = hypercohomology(tangent_total(swapped), degrees=(0, 1))
    assert list(report.dimensions().values()) == [3, 0]


def test_sheaf_cohomology_of_bivectors_on_p2():
    p2 = load_scenario('p2').atlases['P2']
    total = TotalComplex(single_slot_complex(TangentSlot(p2, 2)), 'S')
    report = hypercohomology(total, degrees=(0,))
    assert report[0].dimension == 10


def test_small_window_fails_audit():
    with pytest.raises(WindowInsufficient):
        hypercohomology(tangent_total(_p1()), degrees=(0,), window=0)
    report = hypercohomology(tangent_total(_p1()), degrees=(0,), window=0, audit=False)
    assert report[0].audit == 'skipped'


def test_classify_global_vector_field():
    atlas = _p1()
    total = tangent_total(atlas)
    problem = cohomology_problem(total, 0)
    result = problem.compute()
    slot = total.descriptor.slot(1)
    z = LaurentPoly.variable(atlas.ctx(0), 'z')
    w = LaurentPoly.variable(atlas.ctx(1), 'w')
    # z d/dz = -w d/dw
    field = CechCochain(slot, 0, {(0,): Multivector.tangent(atlas.ctx(0), 1, {(0,): z}),
                                  (1,): Multivector.tangent(atlas.ctx(1), 1, {(0,): -w})})
    element = total.element({(1, 0): field})
    coords = problem.classify(result, element)
    assert any(coords)
    assert not problem.is_coboundary(result, element)

    broken = CechCochain(slot, 0, {(0,): Multivector.tangent(atlas.ctx(0), 1, {(0,): z})})
    with pytest.raises(NotACocycle):
        problem.classify(result, total.element({(1, 0): broken}))


def test_cokernel_with_nothing_above():
    # a curve has no tangent cochains in total degree 2 over a two-chart cover
    fmap = load_scenario('line_in_p2').maps['f']
    source = tangent_total(fmap.source, 'T')
    F = tangent_map(fmap, source, pullback_total(fmap, 'P'))
    assert source.blocks(2) == []
    problem = cokernel_problem(F, 1)
    result = problem.compute()
    assert result.audit.startswith('pass')
    for element in result.basis:
        assert not problem.is_coboundary(result, element)
    assert source.part(source.element({}), 2, 0) is None

    point = load_scenario('point_in_plane').maps['i']
    source = tangent_total(point.source, 'T')
    F = tangent_map(point, source, pullback_total(point, 'P'))
    assert cokernel_problem(F, 0).compute().dimension == 1
