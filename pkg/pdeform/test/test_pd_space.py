#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the deformation spaces PD and PD^1
"""
import pytest

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.exactness import ExactnessReport
from pdeform.cohomology.exactness import SequenceAudit
from pdeform.cohomology.exactness import Term
from pdeform.cohomology.exactness import exactness_audit
from pdeform.cohomology.pd_space import MapOperators
from pdeform.cohomology.pd_space import cone_check
from pdeform.cohomology.pd_space import non_degenerate
from pdeform.cohomology.pd_space import pd1_space
from pdeform.cohomology.pd_space import pd_element
from pdeform.cohomology.pd_space import pd_family_space
from pdeform.cohomology.pd_space import pd_space
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.atlas import relabel_map
from pdeform.geometry.atlas import validate_map
from pdeform.geometry.multivector import Multivector
from pdeform.utils.errors import NotACocycle


def test_identity_of_plane_is_rigid():
    fmap = load_scenario('identity_a2').maps['id']
    space = pd_space(fmap)
    assert space.dimension == 0
    assert space.lines()[0].startswith('PD dim=0 window=3')
    assert non_degenerate(fmap)


def test_point_in_plane():
    fmap = load_scenario('point_in_plane').maps['i']
    space = pd_space(fmap)
    assert space.dimension == 1
    assert space.verify_basis()
    assert pd1_space(fmap).dimension == 0

    # moving the point along y keeps it on the zero locus of x dx^dy
    ops = MapOperators(fmap)
    ctx = fmap.source.ctx(0)
    along_y = Multivector.basis(ctx, fmap.frame(0), (1,))
    along_x = Multivector.basis(ctx, fmap.frame(0), (0,))
    element = pd_element(ops, tau=CechCochain(ops.pullback(1), 0, {(0,): along_y}))
    assert any(space.classify(element))
    bad = pd_element(ops, tau=CechCochain(ops.pullback(1), 0, {(0,): along_x}))
    with pytest.raises(NotACocycle):
        space.classify(bad)


def test_pd_agrees_with_cone():
    fmap = load_scenario('point_in_plane').maps['i']
    pd_dim, cone_dim = cone_check(fmap)
    assert pd_dim == cone_dim == 1


def test_exactness_of_identity():
    fmap = PoissonMapData.identity(load_scenario('p1_zero').atlases['P1'])
    report = exactness_audit(fmap)
    assert report.passed
    assert report.lines()[-1].endswith('verdict PASS')
    assert all(seq.passed for seq in report.sequences)


def test_exactness_of_point_in_plane():
    report = exactness_audit(load_scenario('point_in_plane').maps['i'])
    assert report.passed


def test_exactness_of_line_in_plane():
    fmap = load_scenario('line_in_p2').maps['f']
    assert non_degenerate(fmap)
    report = exactness_audit(fmap)
    assert [seq.verdict for seq in report.sequences] == ['PASS'] * 4
    assert report.checks == {'non-degenerate': True}
    assert report.passed
    assert report.as_dict()['verdict'] == 'PASS'


def test_truncated_terms_are_inconclusive():
    sequence = SequenceAudit('x', [Term('0'), Term('A'), Term('0')], [[], []])
    assert sequence.verdict == 'PASS'
    truncated = SequenceAudit('x', [Term('0'), Term('A', unbounded=True), Term('0')],
                              [[], []])
    assert truncated.exact == {'A': True}
    assert truncated.verdict == 'INCONCLUSIVE'
    assert truncated.lines()[-2:] == ['  unbounded A', '  verdict INCONCLUSIVE']

    report = ExactnessReport('x')
    report.sequences.extend([sequence, truncated])
    assert not report.passed
    assert report.lines()[-1] == 'verdict INCONCLUSIVE'
    report.checks['non-degenerate'] = False
    assert report.verdict == 'FAIL'


def test_family_directions():
    fmap = load_scenario('point_in_plane').maps['i']
    ops = MapOperators(fmap)
    assert pd_family_space(fmap, []).dimension == 1
    rho = CechCochain.zero(ops.pullback(1), 1)
    flat = CechCochain.zero(ops.pullback(2), 0)
    assert pd_family_space(fmap, [(rho, flat), (rho, flat)]).dimension == 3

    # the area bivector is pi_f of the x direction, so theta pairs with tau along x
    ctx = fmap.source.ctx(0)
    area = Multivector.basis(ctx, fmap.frame(0), (0, 1))
    gamma = CechCochain(ops.pullback(2), 0, {(0,): area})
    assert pd_family_space(fmap, [(rho, gamma)]).dimension == 2


def test_chart_order_does_not_matter():
    fmap = load_scenario('line_in_p2').maps['f']
    swapped = relabel_map(fmap, (1, 0), (2, 0, 1))
    assert validate_map(swapped).passed
    assert swapped.assignment == {0: 2, 1: 1}
    assert swapped.target.bivector(0) == fmap.target.bivector(2).recast(swapped.target.ctx(0))
    assert (pd_space(swapped, window=2, audit=False).dimension
            == pd_space(fmap, window=2, audit=False).dimension)
