#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the command line front end
"""
import json

import pytest

from pdeform.experiments.run_command import build_parser
from pdeform.experiments.run_command import default_options
from pdeform.experiments.run_command import main
from pdeform.experiments.run_command import resolve_options
from pdeform.experiments.run_command import run_command
from pdeform.experiments.scenario import load_scenario
from pdeform.utils.errors import UnresolvedReference


def test_pd_reports():
    report = run_command('pd', load_scenario('identity_a2'))
    assert report.code == 0
    assert any(line.startswith('PD dim=0') for line in report.lines())
    report = run_command('pd', load_scenario('point_in_plane'))
    assert any(line.startswith('PD dim=1') for line in report.lines())
    assert report.lines()[0] == 'PDEFORM pd window=3 order=datum seed=0'
    assert report.lines()[-2:] == ['audit pass', 'exit 0']


def test_cohomology_of_a_sheaf():
    options = default_options(sheaf=2, degrees=(0,))
    report = run_command('cohomology', load_scenario('p2'), options)
    assert any(line.startswith('H^0 dim=10') for line in report.lines())


def test_exit_codes_of_lifts():
    assert run_command('lift', load_scenario('point_in_plane')).code == 0
    assert run_command('lift', load_scenario('obstructed')).code == 2
    assert run_command('obstruct', load_scenario('obstructed')).code == 2
    failed = run_command('costability', load_scenario('costability_violation'))
    assert failed.code == 2
    assert failed.lines()[1] == 'HYPOTHESIS FAILED H1(f*) surjective'
    assert failed.outcome.data['rank'] == 1


def test_unknown_names():
    with pytest.raises(UnresolvedReference):
        run_command('explode', load_scenario('p2'))
    with pytest.raises(UnresolvedReference) as err:
        run_command('pd', load_scenario('p2'), default_options(subject='nowhere'))
    assert str(err.value).startswith('pd: ')


def test_flags_override_defaults():
    scenario = load_scenario('line_in_p2')
    args = build_parser().parse_args(['stability', 'line_in_p2', '-w', '4'])
    options = resolve_options(args, scenario)
    assert options.window == 4
    assert options.hypotheses == 'report'
    args = build_parser().parse_args(['stability', 'line_in_p2', '--hypotheses', 'skip'])
    assert resolve_options(args, scenario).hypotheses == 'skip'


def test_main(capsys):
    assert main(['stability', 'line_in_p2']) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith('PDEFORM stability')
    assert 'verdict PASS' in out

    assert main(['pd', 'point_in_plane', '--json']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['result']['dim'] == 1
    assert data['exit'] == 0

    assert main(['lift', 'obstructed']) == 2
    capsys.readouterr()
    assert main(['pd', 'no/such/file.scn']) == 1
    assert 'pdeform: error' in capsys.readouterr().err


INVOCATIONS = [
    ('validate', 'p2'),
    ('cohomology', 'p1_zero'),
    ('pd', 'point_in_plane'),
    ('pd1', 'point_in_plane'),
    ('audit-exactness', 'line_in_p2'),
    ('first-order', 'point_in_plane'),
    ('obstruct', 'obstructed'),
    ('lift', 'obstructed'),
    ('stability', 'line_in_p2'),
    ('costability', 'costability_line'),
    ('factor', 'factor_chain'),
    ('normal-compare', 'line_in_p2'),
]


def test_reports_are_reproducible(capsys):
    for command, scenario in INVOCATIONS:
        code = main([command, scenario])
        text = capsys.readouterr().out
        assert main([command, scenario]) == code
        assert capsys.readouterr().out == text
        lines = text.splitlines()
        assert lines[-1] == 'exit {0}'.format(code)

        assert main([command, scenario, '--json']) == code
        raw = capsys.readouterr().out
        assert main([command, scenario, '--json']) == code
        assert capsys.readouterr().out == raw
        data = json.loads(raw)
        assert data['lines'] == lines
        assert data['command'] == command
        assert data['exit'] == code
        assert lines[-2] == 'audit {0}'.format(data['audit'])
        assert lines[0] == 'PDEFORM {0} window={1} order=datum seed={2}'.format(
            command, data['window'], data['seed'])


def test_json_result_matches_the_text():
    report = run_command('pd', load_scenario('point_in_plane'))
    data = json.loads(report.json())
    assert 'PD dim={0} window={1}'.format(data['result']['dim'], data['window']) in ' '.join(
        report.lines())
    report = run_command('normal-compare', load_scenario('line_in_p2'))
    data = json.loads(report.json())['result']
    for k, entry in data['entries'].items():
        assert 'phi^{0}: H^{0}(N_i) dim={1} -> H^{0}(N_X/Y) dim={2} rank={3}'.format(
            k, entry['source'], entry['target'], entry['rank']) in report.lines()
    assert ('phi^1 injective yes' in report.lines()) == data['phi1_injective']
