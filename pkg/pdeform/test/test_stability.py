#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the stability and costability lifts
"""
import pytest

from pdeform.deformation.stability import costability_lift
from pdeform.deformation.stability import stability_lift
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import validate_atlas
from pdeform.geometry.atlas import validate_map
from pdeform.utils.errors import HypothesisFailed
from pdeform.utils.errors import InvalidDatum
from pdeform.utils.laurent_util import ParamRing


def test_line_follows_a_pencil_of_targets():
    scenario = load_scenario('line_in_p2')
    fmap, pencil = scenario.maps['f'], scenario.deformations['pencil']
    certificate = stability_lift(fmap, pencil, hypotheses='report', seed=2)
    assert certificate.passed
    assert certificate.datum.mode == 'free'
    assert certificate.hypotheses.mode == 'report'
    assert [e.name for e in certificate.hypotheses.entries] == [
        'H1(F) surjective', 'H2(F) injective']
    for i in range(len(pencil.target)):
        assert certificate.datum.target.bivector(i) == pencil.target.bivector(i)
    assert validate_map(certificate.datum.fmap).passed
    assert validate_atlas(certificate.datum.source).passed


def test_stability_rejects_source_data():
    scenario = load_scenario('costability_line')
    with pytest.raises(InvalidDatum):
        stability_lift(scenario.maps['f'], scenario.deformations['shift'], hypotheses='skip')


def test_costability_of_a_line():
    scenario = load_scenario('costability_line')
    fmap, shift = scenario.maps['f'], scenario.deformations['shift']
    certificate = costability_lift(fmap, shift)
    assert certificate.passed
    assert certificate.hypotheses.passed
    assert len(certificate.steps) == 2
    given = shift.source
    for key in given.transitions:
        assert certificate.datum.source.transitions[key] == given.transitions[key]
    assert validate_atlas(certificate.datum.target).passed


def test_costability_needs_surjectivity():
    scenario = load_scenario('costability_violation')
    with pytest.raises(HypothesisFailed) as err:
        costability_lift(scenario.maps['both'], scenario.deformations['still'])
    assert err.value.name == 'H1(f*) surjective'
    assert err.value.rank == 1
    assert err.value.required == 2

    report = costability_lift(scenario.maps['both'], scenario.deformations['still'],
                              hypotheses='report', perturb=False).hypotheses
    assert not report.passed
    assert 'H1(f*) surjective: rank 1 required 2 FAIL' in report.lines()[1]


def test_pencil_to_third_order():
    scenario = load_scenario('line_in_p2')
    pencil = scenario.deformations['pencil']
    cubic = pencil.recast(ParamRing(('t',), 3))
    certificate = stability_lift(scenario.maps['f'], cubic, hypotheses='skip', seed=5)
    assert certificate.passed
    assert len(certificate.steps) == 3
    assert certificate.datum.recast(pencil.ring).target.bivector(0) == pencil.target.bivector(0)
    assert validate_map(certificate.datum.fmap).passed
