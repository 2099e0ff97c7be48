#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Command line entry point: ``pdeform <command> <scenario-file> [flags]``.

Every command reads one scenario, delegates to the module operation of the
same name and prints a report on standard output. The report starts with the
window, order and seed in force and ends with the window audit verdict;
``--json`` prints the same content as one JSON object.

Exit status is 0 on success, 2 when a rank hypothesis fails or an
obstruction does not vanish, and 1 for any problem with the input.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import json
import logging
import sys
from argparse import ArgumentParser
from collections import namedtuple
from time import time

from pdeform.cohomology.exactness import exactness_audit
from pdeform.cohomology.hypercohomology import TotalComplex
from pdeform.cohomology.hypercohomology import hypercohomology
from pdeform.cohomology.hypercohomology import pullback_total
from pdeform.cohomology.hypercohomology import tangent_total
from pdeform.cohomology.pd_space import pd1_space
from pdeform.cohomology.pd_space import pd_space
from pdeform.complexes.operators import single_slot_complex
from pdeform.complexes.sheaf_slot import TangentSlot
from pdeform.deformation.datum import extension_path
from pdeform.deformation.datum import validate_deformation
from pdeform.deformation.factorization import factor_through_family
from pdeform.deformation.obstruction import ObstructionClass
from pdeform.deformation.obstruction import first_order_class
from pdeform.deformation.obstruction import lift
from pdeform.deformation.obstruction import obstruction_class
from pdeform.deformation.stability import costability_lift
from pdeform.deformation.stability import stability_lift
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.atlas import validate_atlas
from pdeform.geometry.atlas import validate_map
from pdeform.geometry.submanifold import SubmanifoldData
from pdeform.geometry.submanifold import validate_submanifold
from pdeform.normal.normal_cmp import compare_normal_cohomology
from pdeform.normal.normal_cmp import normal_total
from pdeform.utils import gconfig
from pdeform.utils.errors import ExtensionMismatch
from pdeform.utils.errors import HypothesisFailed
from pdeform.utils.errors import PdeformError
from pdeform.utils.errors import UnresolvedReference
from pdeform.utils.laurent_util import ParamRing

LOGGER = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE = 0, 1, 2

Options = namedtuple('Options', ['window', 'order', 'seed', 'hypotheses', 'perturb', 'audit',
                                 'njobs', 'subject', 'through', 'second_map', 'degrees',
                                 'sheaf'])

Outcome = namedtuple('Outcome', ['lines', 'data', 'code', 'audit_notes'])


def default_options(**overrides):
    """Options with the module defaults, for programmatic use."""
    values = dict(window=gconfig.window, order=None, seed=gconfig.seed, hypotheses='check',
                  perturb=True, audit=True, njobs=gconfig.njobs, subject=None, through=None,
                  second_map=None, degrees=(0, 1), sheaf=None)
    values.update(overrides)
    return Options(**values)


class CommandReport(object):
    """Text and JSON form of one command run."""

    def __init__(self, command, options, outcome):
        self.command = command
        self.options = options
        self.outcome = outcome

    @property
    def code(self):
        return self.outcome.code

    @property
    def audit_verdict(self):
        if not self.options.audit:
            return 'skipped'
        if self.outcome.audit_notes:
            return 'partial ({0})'.format('; '.join(self.outcome.audit_notes))
        return 'pass'

    def lines(self):
        o = self.options
        out = ['PDEFORM {0} window={1} order={2} seed={3}'.format(
            self.command, o.window, 'datum' if o.order is None else o.order, o.seed)]
        out.extend(self.outcome.lines)
        out.append('audit {0}'.format(self.audit_verdict))
        out.append('exit {0}'.format(self.code))
        return out

    def as_dict(self):
        o = self.options
        return {'command': self.command, 'window': o.window, 'order': o.order, 'seed': o.seed,
                'audit': self.audit_verdict, 'exit': self.code, 'lines': self.lines(),
                'result': self.outcome.data}

    def text(self):
        return '\n'.join(self.lines()) + '\n'

    def json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=str) + '\n'


# subjects

def _pick(scenario, kind, name):
    if name is None:
        return scenario.first(kind)
    return scenario.get(kind, name)


def _subject(scenario, name):
    """The atlas, map or submanifold called ``name``; the first atlas by default."""
    if name is None:
        return scenario.first('atlas')
    for kind in ('atlas', 'map', 'submanifold'):
        if name in scenario.table(kind):
            return scenario.table(kind)[name]
    raise UnresolvedReference('atlas, map or submanifold', name)


def _ring_of_order(ring, order):
    return ParamRing(ring.names, order, ring.ideal)


def _lift_ring(datum, order):
    """Ring reached by ``lift`` and ``obstruct``: ``order``, or one step above the datum."""
    if order is None:
        return _ring_of_order(datum.ring, datum.ring.mu + 1)
    if order <= datum.ring.mu:
        raise ExtensionMismatch('datum {0} already has order {1}'.format(datum.name,
                                                                          datum.ring.mu))
    return _ring_of_order(datum.ring, order)


def _at_order(datum, order):
    return datum if order is None else datum.recast(_ring_of_order(datum.ring, order))


def _hypothesis_notes(report):
    if report is None:
        return []
    return ['{0}: {1}'.format(e.name, e.note) for e in report.entries if e.rank is None]


# commands

def cmd_validate(scenario, options):
    reports = []
    reports.extend(validate_atlas(a) for a in scenario.atlases.values())
    reports.extend(validate_map(m) for m in scenario.maps.values())
    reports.extend(validate_submanifold(s) for s in scenario.submanifolds.values())
    reports.extend(validate_deformation(d) for d in scenario.deformations.values())
    lines = []
    for report in reports:
        lines.append('VALIDATE {0}'.format(report.subject))
        lines.extend(report.lines())
    passed = all(r.passed for r in reports)
    lines.append('verdict {0}'.format('PASS' if passed else 'FAIL'))
    return Outcome(lines, [r.as_dict() for r in reports], EXIT_OK if passed else EXIT_INPUT,
                   [])


def cmd_cohomology(scenario, options):
    subject = _subject(scenario, options.subject)
    if options.sheaf is not None:
        slot = TangentSlot(subject, options.sheaf)
        total = TotalComplex(single_slot_complex(slot), 'S')
    elif isinstance(subject, PoissonMapData):
        total = pullback_total(subject)
    elif isinstance(subject, SubmanifoldData):
        total = normal_total(subject)
    else:
        total = tangent_total(subject)
    report = hypercohomology(total, options.degrees, options.window, options.audit,
                             options.njobs)
    return Outcome(report.lines(), report.as_dict(), EXIT_OK, [])


def cmd_pd(scenario, options):
    space = pd_space(_pick(scenario, 'map', options.subject), options.window, options.audit,
                     options.njobs)
    return Outcome(space.lines(), space.as_dict(), EXIT_OK, [])


def cmd_pd1(scenario, options):
    space = pd1_space(_pick(scenario, 'map', options.subject), options.window, options.audit,
                      options.njobs)
    return Outcome(space.lines(), space.as_dict(), EXIT_OK, [])


def cmd_audit_exactness(scenario, options):
    report = exactness_audit(_pick(scenario, 'map', options.subject), options.window,
                             options.audit, options.njobs)
    notes = ['{0} unbounded'.format(t.label) for seq in report.sequences
             for t in seq.terms if t.unbounded]
    return Outcome(report.lines(), report.as_dict(), EXIT_OK, sorted(set(notes)))


def cmd_first_order(scenario, options):
    cls = first_order_class(_pick(scenario, 'deformation', options.subject),
                            window=options.window, audit=options.audit, njobs=options.njobs)
    return Outcome(cls.lines(), cls.as_dict(), EXIT_OK, [])


def cmd_obstruct(scenario, options):
    datum = _pick(scenario, 'deformation', options.subject)
    extension = extension_path(datum.ring, _lift_ring(datum, options.order))[0]
    obstruction = obstruction_class(datum, extension, options.seed, options.perturb,
                                    options.window, options.audit, options.njobs)
    code = EXIT_OK if obstruction.is_zero else EXIT_NEGATIVE
    return Outcome(obstruction.lines(), obstruction.as_dict(), code, [])


def cmd_lift(scenario, options):
    datum = _pick(scenario, 'deformation', options.subject)
    outcome = lift(datum, _lift_ring(datum, options.order), options.seed, options.perturb,
                   options.window, options.audit, options.njobs)
    code = EXIT_NEGATIVE if isinstance(outcome, ObstructionClass) else EXIT_OK
    return Outcome(outcome.lines(), outcome.as_dict(), code, [])


def _certificate_outcome(certificate):
    code = EXIT_OK if certificate.passed else EXIT_INPUT
    return Outcome(certificate.lines(), certificate.as_dict(), code,
                   _hypothesis_notes(certificate.hypotheses))


def cmd_stability(scenario, options):
    datum = _at_order(_pick(scenario, 'deformation', options.subject), options.order)
    return _certificate_outcome(stability_lift(
        datum.base, datum, options.hypotheses, options.seed, options.perturb, options.window,
        options.audit, options.njobs))


def cmd_costability(scenario, options):
    datum = _at_order(_pick(scenario, 'deformation', options.subject), options.order)
    return _certificate_outcome(costability_lift(
        datum.base, datum, options.hypotheses, options.seed, options.perturb, options.window,
        options.audit, options.njobs))


def _factor_inputs(scenario, options):
    data = list(scenario.deformations.values())
    upsilon = _pick(scenario, 'deformation', options.subject)
    if options.through is not None:
        phi = scenario.get('deformation', options.through)
    else:
        phi = next((d for d in data if d is not upsilon
                    and d.base.source.name == upsilon.base.source.name), None)
        if phi is None:
            raise UnresolvedReference('deformation', '<first map of {0}>'.format(upsilon.name))
    if options.second_map is not None:
        g = scenario.get('map', options.second_map)
    else:
        g = next((m for m in scenario.maps.values()
                  if m.source.name == phi.base.target.name
                  and m.target.name == upsilon.base.target.name), None)
        if g is None:
            raise UnresolvedReference('map', '<second map of {0}>'.format(upsilon.name))
    return _at_order(upsilon, options.order), _at_order(phi, options.order), g


def cmd_factor(scenario, options):
    upsilon, phi, g = _factor_inputs(scenario, options)
    return _certificate_outcome(factor_through_family(
        upsilon, phi, g, options.hypotheses, options.seed, options.perturb, options.window,
        options.audit, options.njobs))


def cmd_normal_compare(scenario, options):
    sub = _pick(scenario, 'submanifold', options.subject)
    comparison = compare_normal_cohomology(sub, degrees=tuple(k for k in options.degrees
                                                               if k in (0, 1)),
                                           window=options.window, audit=options.audit,
                                           njobs=options.njobs)
    return Outcome(comparison.lines(), comparison.as_dict(), EXIT_OK, [])


commandMap = {
    'validate': cmd_validate,
    'cohomology': cmd_cohomology,
    'pd': cmd_pd,
    'pd1': cmd_pd1,
    'audit-exactness': cmd_audit_exactness,
    'first-order': cmd_first_order,
    'obstruct': cmd_obstruct,
    'lift': cmd_lift,
    'stability': cmd_stability,
    'costability': cmd_costability,
    'factor': cmd_factor,
    'normal-compare': cmd_normal_compare,
}


def run_command(command, scenario, options=None):
    """Runs one command on a parsed scenario.

    Args:
        command (str): a key of :data:`commandMap`.
        scenario (Scenario): the parsed scenario.
        options (Options): flags; :func:`default_options` when None.

    Returns:
        CommandReport: the report; a failed rank hypothesis is reported with
        exit status 2 instead of raised.

    Raises:
        PdeformError: any input problem, with the command name prepended.
    """
    options = options or default_options()
    try:
        handler = commandMap[command]
    except KeyError:
        raise UnresolvedReference('command', command)
    try:
        outcome = handler(scenario, options)
    except HypothesisFailed as err:
        LOGGER.info('%s: %s', command, err)
        outcome = Outcome(['HYPOTHESIS FAILED {0}'.format(err.name),
                           'rank {0} required {1}'.format(err.rank, err.required),
                           str(err)],
                          {'hypothesis': err.name, 'rank': err.rank, 'required': err.required,
                           'message': str(err)}, EXIT_NEGATIVE, [])
    except PdeformError as err:
        err.args = ('{0}: {1}'.format(command, err.args[0] if err.args else ''),) + err.args[1:]
        raise
    return CommandReport(command, options, outcome)


def _degrees(text):
    return tuple(int(k) for k in text.split(','))


def build_parser():
    parser = ArgumentParser(prog='pdeform',
                            description='Deformations of Poisson maps in exact arithmetic')
    parser.add_argument('command', choices=sorted(commandMap), help='command to run')
    parser.add_argument('scenario', help='scenario file or name of a bundled scenario')
    parser.add_argument('-w', '--window', type=int,
                        help='exponent window D (default: scenario, then {0})'.format(
                            gconfig.window))
    parser.add_argument('-o', '--order', type=int,
                        help='parameter order MU of lifts (default: scenario, then the datum)')
    parser.add_argument('-s', '--seed', type=int,
                        help='seed of the lift choices (default: scenario, then {0})'.format(
                            gconfig.seed))
    parser.add_argument('--json', action='store_true', help='print the report as JSON')
    parser.add_argument('--hypotheses', choices=('check', 'report', 'skip'),
                        help='handling of rank hypotheses (default: scenario, then check)')
    parser.add_argument('--no-perturb', dest='perturb', action='store_false',
                        help='use the canonical lifts')
    parser.add_argument('--no-audit', dest='audit', action='store_false',
                        help='skip the window sufficiency audit')
    parser.add_argument('-j', '--njobs', type=int, default=gconfig.njobs,
                        help='workers for matrix assembly (default: %(default)s)')
    parser.add_argument('--subject', help='atlas, map, submanifold or deformation to use')
    parser.add_argument('--through', help='factor: deformation of the first map')
    parser.add_argument('--map', dest='second_map', help='factor: the second map')
    parser.add_argument('--degrees', type=_degrees, default=(0, 1),
                        help='comma separated degrees (default: 0,1)')
    parser.add_argument('--sheaf', type=int,
                        help='cohomology: plain sheaf cohomology of wedge^P T')
    parser.add_argument('-v', '--verbose', action='store_true', help='log progress')
    return parser


def resolve_options(args, scenario):
    """Flags override scenario ``[defaults]``, which override the module defaults."""
    defaults = scenario.defaults

    def pick(name, fallback):
        value = getattr(args, name)
        if value is not None:
            return value
        return defaults.get(name, fallback)

    return Options(window=pick('window', gconfig.window), order=pick('order', None),
                   seed=pick('seed', gconfig.seed), hypotheses=pick('hypotheses', 'check'),
                   perturb=args.perturb, audit=args.audit, njobs=args.njobs,
                   subject=args.subject, through=args.through, second_map=args.second_map,
                   degrees=args.degrees, sheaf=args.sheaf)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format=gconfig.log_format, stream=sys.stderr)
    t1 = time()
    try:
        scenario = load_scenario(args.scenario, validate=args.command != 'validate')
        report = run_command(args.command, scenario, resolve_options(args, scenario))
    except (PdeformError, IOError) as err:
        sys.stderr.write('pdeform: error: {0}\n'.format(err))
        return EXIT_INPUT
    sys.stdout.write(report.json() if args.json else report.text())
    LOGGER.info('%s finished in %.2f s', args.command, time() - t1)
    return report.code


if __name__ == '__main__':
    sys.exit(main())
