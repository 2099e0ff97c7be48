#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing factorization of a deformation through a family
"""
import pytest

from pdeform.deformation.datum import same_components
from pdeform.deformation.factorization import factor_through_family
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import validate_map
from pdeform.utils.errors import CompositionMismatch


def test_factor_chain():
    scenario = load_scenario('factor_chain')
    upsilon, phi = scenario.deformations['upsilon'], scenario.deformations['phi']
    certificate = factor_through_family(upsilon, phi, scenario.maps['g'],
                                        hypotheses='report', seed=4)
    assert certificate.passed
    psi = certificate.datum
    assert psi.base.name == 'g'
    assert psi.mode == 'fixed_both'
    assert validate_map(psi.fmap).passed
    assert same_components(phi.fmap.compose(psi.fmap), upsilon.fmap) is None
    assert len(certificate.steps) == 1
    assert certificate.lines()[-1] == 'verdict PASS'


def test_factor_needs_the_composite():
    scenario = load_scenario('factor_chain')
    phi = scenario.deformations['phi']
    with pytest.raises(CompositionMismatch):
        factor_through_family(phi, phi, scenario.maps['g'], hypotheses='skip')
