#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing reading and writing scenario files
"""
import os

import pytest

from pdeform.experiments.scenario import CONFIG_DIR
from pdeform.experiments.scenario import load_scenario
from pdeform.experiments.scenario import parse_scenario
from pdeform.experiments.scenario import scenario_path
from pdeform.experiments.scenario import serialize
from pdeform.utils.errors import InvariantViolation
from pdeform.utils.errors import ScenarioSyntaxError
from pdeform.utils.errors import UnresolvedReference

LINE_MAP = """
[map f]
source = L
target = P1
chart L0 -> U0 = s

[atlas L]
chart L0 = s

[atlas P1]
chart U0 = z
chart U1 = w
transition U0 <- U1 = w^-1
transition U1 <- U0 = z^-1
"""


def _bundled():
    return sorted(name for name in os.listdir(CONFIG_DIR) if name.endswith('.scn'))


def test_parse_in_any_order():
    scenario = parse_scenario(LINE_MAP)
    assert list(scenario.atlases) == ['L', 'P1']
    fmap = scenario.maps['f']
    assert fmap.source is scenario.atlases['L']
    assert fmap.assignment == {0: 0}
    assert serialize(scenario).startswith('[atlas L]\nchart L0 = s\n\n[atlas P1]')


def test_unresolved_references():
    with pytest.raises(UnresolvedReference) as err:
        parse_scenario(LINE_MAP.replace('target = P1', 'target = P3'))
    assert err.value.name == 'P3'
    assert err.value.line == 4
    with pytest.raises(UnresolvedReference):
        parse_scenario(LINE_MAP.replace('chart L0 -> U0', 'chart L0 -> U7'))
    with pytest.raises(UnresolvedReference):
        parse_scenario(LINE_MAP.replace('chart L0 -> U0 = s', 'chart L0 -> U0 = q'))
    with pytest.raises(UnresolvedReference):
        load_scenario('p2').get('map', 'f')


def test_syntax_errors_carry_positions():
    with pytest.raises(ScenarioSyntaxError) as err:
        parse_scenario('[atlas A]\nchart V = x\n[atlas B\n')
    assert err.value.line == 3
    with pytest.raises(ScenarioSyntaxError) as err:
        parse_scenario('chart V = x\n')
    assert err.value.line == 1
    with pytest.raises(ScenarioSyntaxError) as err:
        parse_scenario('[atlas A]\nchart V = x\ntransition V <- V = x\n')
    assert err.value.line == 3
    with pytest.raises(ScenarioSyntaxError) as err:
        parse_scenario('[ring A]\nparams = t\norder = two\n')
    assert err.value.line == 3
    with pytest.raises(ScenarioSyntaxError):
        parse_scenario('[defaults]\nhypotheses = maybe\n')
    with pytest.raises(ScenarioSyntaxError):
        parse_scenario('[atlas A]\nchart V = x\n\n[atlas A]\nchart W = y\n')


def test_validation_names_the_section():
    broken = LINE_MAP.replace('transition U1 <- U0 = z^-1', 'transition U1 <- U0 = z^-2')
    with pytest.raises(InvariantViolation) as err:
        parse_scenario(broken)
    assert '[atlas P1]' in str(err.value)
    assert 'cocycle' in str(err.value)
    assert parse_scenario(broken, validate=False).atlases['P1'] is not None


def test_defaults_and_rings():
    scenario = parse_scenario('[defaults]\nseed = 5\nwindow = 4\n\n'
                              '[ring B]\nparams = s, t\norder = 2\nideal = t^2, s*t\n')
    assert list(scenario.defaults.items()) == [('window', 4), ('seed', 5)]
    ring = scenario.rings['B']
    assert ring.names == ('s', 't')
    assert ring.dimension() == 4
    assert serialize(scenario) == ('[defaults]\nwindow = 4\nseed = 5\n\n'
                                   '[ring B]\nparams = s, t\norder = 2\nideal = t^2, s*t\n')
    assert load_scenario('line_in_p2').defaults['hypotheses'] == 'report'


def test_bundled_scenarios_are_canonical():
    for name in ('p1_zero.scn', 'identity_a2.scn', 'point_in_plane.scn'):
        with open(os.path.join(CONFIG_DIR, name)) as handle:
            text = handle.read()
        assert serialize(parse_scenario(text)) == text


def test_serialization_is_idempotent():
    assert 'p2.scn' in _bundled()
    for name in _bundled():
        once = serialize(load_scenario(name))
        assert serialize(parse_scenario(once)) == once
    assert scenario_path('p2').endswith(os.path.join('config', 'p2.scn'))
