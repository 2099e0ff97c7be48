#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Scenario files: parsing, validation and canonical serialization.

A scenario is a sequence of sections::

    [defaults]
    window = 3

    [ring A]
    params = t
    order = 1

    [atlas P1]
    chart U0 = z
    chart U1 = w
    transition U0 <- U1 = w^-1
    transition U1 <- U0 = z^-1

    [map f]
    source = L
    target = P1
    chart L0 -> U0 = s

    [submanifold X]
    ambient = Y
    chart U0 = x2

    [deformation D]
    map = f
    ring = A
    mode = fixed_both
    component L0 = s + t

Transition components are separated by ``:``, map components by ``;``.
Bivectors read ``bivector U0 = dz[0,1] : x`` with indices into the chart
variables.
Blank lines and lines starting with ``#`` are ignored. Sections may appear in
any order; :func:`serialize` writes them grouped by kind in the order above,
so serializing a parsed scenario gives its canonical text.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
import os
import re
from collections import OrderedDict
from collections import namedtuple

from pdeform.deformation.datum import DeformationDatum
from pdeform.deformation.datum import MODES
from pdeform.deformation.datum import datum_lines
from pdeform.deformation.datum import validate_deformation
from pdeform.deformation.hypotheses import HYPOTHESIS_MODES
from pdeform.geometry.atlas import Chart
from pdeform.geometry.atlas import PoissonAtlas
from pdeform.geometry.atlas import PoissonMapData
from pdeform.geometry.atlas import validate_atlas
from pdeform.geometry.atlas import validate_map
from pdeform.geometry.multivector import ChartMap
from pdeform.geometry.submanifold import SubmanifoldData
from pdeform.geometry.submanifold import validate_submanifold
from pdeform.utils.errors import InvariantViolation
from pdeform.utils.errors import PdeformError
from pdeform.utils.errors import ScenarioSyntaxError
from pdeform.utils.errors import UnresolvedReference
from pdeform.utils.grammar_util import format_multivector
from pdeform.utils.grammar_util import format_poly
from pdeform.utils.grammar_util import parse_multivector
from pdeform.utils.grammar_util import parse_poly
from pdeform.utils.laurent_util import ParamRing

LOGGER = logging.getLogger(__name__)

KINDS = ('defaults', 'ring', 'atlas', 'map', 'submanifold', 'deformation')

DEFAULT_KEYS = ('window', 'order', 'seed', 'hypotheses')

_HEADER = re.compile(r'^\[\s*([a-z]+)(?:\s+([A-Za-z0-9_.\']+))?\s*\]$')
_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_\']*$')
_TRANSITION = re.compile(r'^(?:(source|target)\.)?transition\s+(\S+)\s*<-\s*(\S+)$')
_CHART_MAP = re.compile(r'^chart\s+(\S+)\s*->\s*(\S+)$')

Entry = namedtuple('Entry', ['line', 'key', 'value', 'column'])

CONFIG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config')


class Section(object):
    """One ``[kind name]`` block with its ``key = value`` entries."""

    def __init__(self, kind, name, line):
        self.kind = kind
        self.name = name
        self.line = line
        self.entries = []

    def single(self, key, required=True):
        found = [e for e in self.entries if e.key == key]
        if len(found) > 1:
            raise ScenarioSyntaxError('{0} given twice'.format(key), found[1].line, 1)
        if not found:
            if required:
                raise ScenarioSyntaxError('[{0} {1}] needs {2}'.format(
                    self.kind, self.name, key), self.line, 1)
            return None
        return found[0]


class Scenario(object):
    """Named rings, atlases, maps, submanifolds and deformation data.

    Attributes:
        defaults (OrderedDict): command defaults, keys among
            :data:`DEFAULT_KEYS`.
        rings, atlases, maps, submanifolds, deformations (OrderedDict):
            name -> object, in file order.
    """

    def __init__(self):
        self.defaults = OrderedDict()
        self.rings = OrderedDict()
        self.atlases = OrderedDict()
        self.maps = OrderedDict()
        self.submanifolds = OrderedDict()
        self.deformations = OrderedDict()

    def table(self, kind):
        return {'ring': self.rings, 'atlas': self.atlases, 'map': self.maps,
                'submanifold': self.submanifolds, 'deformation': self.deformations}[kind]

    def get(self, kind, name, line=0):
        """Object ``name`` of ``kind``.

        Raises:
            UnresolvedReference: if no such object exists.
        """
        try:
            return self.table(kind)[name]
        except KeyError:
            raise UnresolvedReference(kind, name, line)

    def first(self, kind):
        table = self.table(kind)
        if not table:
            raise UnresolvedReference(kind, '<any>')
        return next(iter(table.values()))

    def ring_name(self, ring):
        for name, candidate in self.rings.items():
            if candidate == ring:
                return name
        return None

    def __repr__(self):
        return 'Scenario(atlases={0}, maps={1}, deformations={2})'.format(
            list(self.atlases), list(self.maps), list(self.deformations))


# reading

def split_sections(text):
    """Groups the lines of ``text`` into :class:`Section` objects.

    Raises:
        ScenarioSyntaxError: on a line outside any section, a malformed header
            or a line without ``=``.
    """
    sections = []
    current = None
    for number, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith('#'):
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith('['):
            match = _HEADER.match(stripped)
            if not match:
                raise ScenarioSyntaxError('bad section header {0!r}'.format(stripped), number,
                                          indent + 1)
            kind, name = match.group(1), match.group(2)
            if kind not in KINDS:
                raise ScenarioSyntaxError('unknown section kind {0!r}'.format(kind), number,
                                          indent + 2)
            if (kind == 'defaults') != (name is None):
                raise ScenarioSyntaxError('[{0}] {1} a name'.format(
                    kind, 'takes no' if kind == 'defaults' else 'needs'), number, indent + 1)
            current = Section(kind, name, number)
            sections.append(current)
            continue
        if current is None:
            raise ScenarioSyntaxError('entry outside of a section', number, indent + 1)
        key, sep, value = raw.partition('=')
        if not sep:
            raise ScenarioSyntaxError('expected key = value', number, indent + 1)
        start = len(key) + 1
        column = start + len(value) - len(value.lstrip()) + 1
        current.entries.append(Entry(number, ' '.join(key.split()), value.strip(), column))
    return sections


def _pieces(entry, separator):
    """Splits ``entry.value`` on ``separator`` with the column of every piece."""
    if not entry.value:
        return []
    out, offset = [], 0
    for piece in entry.value.split(separator):
        lead = len(piece) - len(piece.lstrip())
        out.append((piece.strip(), entry.column + offset + lead))
        offset += len(piece) + len(separator)
    return out


def _int_value(entry):
    try:
        return int(entry.value)
    except ValueError:
        raise ScenarioSyntaxError('{0} must be an integer'.format(entry.key), entry.line,
                                  entry.column)


def _names(entry):
    names = tuple(piece for piece, _ in _pieces(entry, ','))
    for name in names:
        if not _NAME.match(name):
            raise ScenarioSyntaxError('bad name {0!r}'.format(name), entry.line, entry.column)
    return names


def _chart(atlas, name, entry):
    try:
        return atlas.chart_index(name)
    except KeyError:
        raise UnresolvedReference('chart of {0}'.format(atlas.name), name, entry.line)


def _polys(entry, separator, ctx, count):
    pieces = _pieces(entry, separator)
    if len(pieces) != count:
        raise ScenarioSyntaxError('expected {0} components, got {1}'.format(count, len(pieces)),
                                  entry.line, entry.column)
    return tuple(parse_poly(text, ctx, entry.line, column) for text, column in pieces)


def _unknown(entry, section):
    return ScenarioSyntaxError('unknown key {0!r} in [{1}]'.format(entry.key, section.kind),
                               entry.line, 1)


def parse_monomial(text, names, line=0, column=1):
    """Exponent vector of a parameter monomial such as ``t1^2*t2``."""
    exps = [0] * len(names)
    for factor in text.split('*'):
        name, _, power = factor.strip().partition('^')
        if name.strip() not in names:
            raise UnresolvedReference('parameter', name.strip(), line)
        try:
            power = int(power) if power else 1
        except ValueError:
            raise ScenarioSyntaxError('bad exponent in {0!r}'.format(factor), line, column)
        if power < 1:
            raise ScenarioSyntaxError('ideal generators need positive powers', line, column)
        exps[names.index(name.strip())] += power
    return tuple(exps)


def format_monomial(exps, names):
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append('{0}^{1}'.format(name, e))
    return '*'.join(factors)


def _read_defaults(scenario, section):
    for entry in section.entries:
        if entry.key not in DEFAULT_KEYS:
            raise _unknown(entry, section)
        if entry.key == 'hypotheses':
            if entry.value not in HYPOTHESIS_MODES:
                raise ScenarioSyntaxError('hypotheses must be one of {0}'.format(
                    ', '.join(HYPOTHESIS_MODES)), entry.line, entry.column)
            scenario.defaults[entry.key] = entry.value
        else:
            scenario.defaults[entry.key] = _int_value(entry)
    scenario.defaults = OrderedDict((k, scenario.defaults[k]) for k in DEFAULT_KEYS
                                    if k in scenario.defaults)


def _read_ring(section):
    for entry in section.entries:
        if entry.key not in ('params', 'order', 'ideal'):
            raise _unknown(entry, section)
    params = section.single('params')
    order = section.single('order')
    names = _names(params)
    ideal = section.single('ideal', required=False)
    gens = []
    if ideal is not None:
        gens = [parse_monomial(text, names, ideal.line, column)
                for text, column in _pieces(ideal, ',')]
    try:
        return ParamRing(names, _int_value(order), gens)
    except ValueError as err:
        raise ScenarioSyntaxError(str(err), section.line, 1)


def _read_atlas(section):
    charts, rest = [], []
    for entry in section.entries:
        if entry.key.startswith('chart '):
            charts.append(Chart(entry.key.split(None, 1)[1], _names(entry)))
        elif entry.key.startswith('transition ') or entry.key.startswith('bivector '):
            rest.append(entry)
        else:
            raise _unknown(entry, section)
    if not charts:
        raise ScenarioSyntaxError('atlas {0} has no charts'.format(section.name), section.line, 1)
    try:
        atlas = PoissonAtlas(section.name, charts)
    except ValueError as err:
        raise ScenarioSyntaxError(str(err), section.line, 1)
    transitions, bivectors = {}, {}
    for entry in rest:
        read_atlas_entry(atlas, entry, transitions, bivectors)
    return atlas.with_data(transitions, bivectors)


def read_atlas_entry(atlas, entry, transitions, bivectors, key=None):
    """Reads a ``transition`` or ``bivector`` line of ``atlas`` into the dicts."""
    key = key if key is not None else entry.key
    match = _TRANSITION.match(key)
    if match:
        i = _chart(atlas, match.group(2), entry)
        j = _chart(atlas, match.group(3), entry)
        if i == j:
            raise ScenarioSyntaxError('transition of a chart to itself', entry.line, 1)
        transitions[(i, j)] = _polys(entry, ':', atlas.ctx(j), atlas.dimension(i))
        return
    kind, _, label = key.partition(' ')
    if kind.split('.')[-1] != 'bivector' or not label:
        raise ScenarioSyntaxError('unknown key {0!r}'.format(entry.key), entry.line, 1)
    i = _chart(atlas, label.strip(), entry)
    bivectors[i] = parse_multivector(entry.value, atlas.ctx(i), atlas.frame(i), 2, entry.line,
                                     entry.column)


def _read_map(scenario, section):
    source = scenario.get('atlas', section.single('source').value, section.single('source').line)
    target = scenario.get('atlas', section.single('target').value, section.single('target').line)
    assignment, components = {}, {}
    for entry in section.entries:
        if entry.key in ('source', 'target'):
            continue
        match = _CHART_MAP.match(entry.key)
        if not match:
            raise _unknown(entry, section)
        i = _chart(source, match.group(1), entry)
        a = _chart(target, match.group(2), entry)
        assignment[i] = a
        components[i] = _polys(entry, ';', source.ctx(i), target.dimension(a))
    try:
        return PoissonMapData(section.name, source, target, assignment, components)
    except PdeformError as err:
        raise ScenarioSyntaxError(str(err), section.line, 1)


def _read_submanifold(scenario, section):
    entry = section.single('ambient')
    ambient = scenario.get('atlas', entry.value, entry.line)
    defining = {}
    for entry in section.entries:
        if entry.key == 'ambient':
            continue
        if not entry.key.startswith('chart '):
            raise _unknown(entry, section)
        defining[_chart(ambient, entry.key.split(None, 1)[1], entry)] = _names(entry)
    try:
        return SubmanifoldData(section.name, ambient, defining)
    except PdeformError as err:
        raise ScenarioSyntaxError(str(err), section.line, 1)


def _fill_reverse(atlas, base_atlas, given):
    """Inverts every given transition whose reverse was not given."""
    transitions = dict(atlas.transitions)
    for (i, j) in given:
        if (j, i) in given or (j, i) not in base_atlas.transitions:
            continue
        chart_map = ChartMap(atlas.ctx(j), atlas.ctx(i), atlas.transitions[(i, j)],
                             base_inverse=base_atlas.transitions[(j, i)])
        transitions[(j, i)] = chart_map.formal_inverse()
    return atlas.with_data(transitions=transitions)


def _read_deformation(scenario, section):
    entry = section.single('map')
    base = scenario.get('map', entry.value, entry.line)
    entry = section.single('ring')
    ring = scenario.get('ring', entry.value, entry.line)
    mode = section.single('mode')
    if mode.value not in MODES:
        raise ScenarioSyntaxError('mode must be one of {0}'.format(', '.join(MODES)),
                                  mode.line, mode.column)
    prescribed = section.single('prescribed', required=False)
    sides = {'source': base.source.recast(ring), 'target': base.target.recast(ring)}
    changes = {'source': ({}, {}), 'target': ({}, {})}
    components = {}
    for entry in section.entries:
        if entry.key in ('map', 'ring', 'mode', 'prescribed'):
            continue
        side = entry.key.split('.', 1)[0]
        if side in changes:
            transitions, bivectors = changes[side]
            read_atlas_entry(sides[side], entry, transitions, bivectors,
                             entry.key.split('.', 1)[1])
        elif entry.key.startswith('component '):
            atlas = sides['source']
            i = _chart(atlas, entry.key.split(None, 1)[1], entry)
            components[i] = _polys(entry, ';', atlas.ctx(i), base.target.dimension(
                base.assignment[i]))
        else:
            raise _unknown(entry, section)
    for side, (transitions, bivectors) in changes.items():
        if transitions or bivectors:
            atlas = sides[side].with_data(transitions, bivectors)
            sides[side] = _fill_reverse(atlas, getattr(base, side), transitions)
    merged = dict((i, tuple(c.recast(sides['source'].ctx(i)) for c in comps))
                  for i, comps in base.components.items())
    merged.update(components)
    try:
        return DeformationDatum(section.name, base, ring, mode.value, sides['source'],
                                sides['target'], merged,
                                prescribed.value if prescribed is not None else None)
    except PdeformError as err:
        raise ScenarioSyntaxError(str(err), section.line, 1)


def _check(report, section):
    if not report.passed:
        failed = report.failures()[0]
        raise InvariantViolation('[{0} {1}] at line {2}: CHECK {3} [{4}] FAIL residual={5}'.format(
            section.kind, section.name, section.line, failed.name,
            ','.join(str(k) for k in failed.simplex), failed.residual))


def parse_scenario(text, validate=True):
    """Builds a :class:`Scenario` from its text.

    Args:
        text (str): scenario source.
        validate (bool): run the geometry validators on every object.

    Returns:
        Scenario: every reference resolved.

    Raises:
        ScenarioSyntaxError: with line and column of the offending text.
        UnresolvedReference: naming an undefined ring, atlas, map, chart or
            variable.
        InvariantViolation: when a validator fails, naming the section.
    """
    scenario = Scenario()
    sections = split_sections(text)
    for kind in KINDS:
        for section in (s for s in sections if s.kind == kind):
            if kind == 'defaults':
                _read_defaults(scenario, section)
                continue
            table = scenario.table(kind)
            if section.name in table:
                raise ScenarioSyntaxError('{0} {1} defined twice'.format(kind, section.name),
                                          section.line, 1)
            if kind == 'ring':
                table[section.name] = _read_ring(section)
            elif kind == 'atlas':
                table[section.name] = _read_atlas(section)
                if validate:
                    _check(validate_atlas(table[section.name]), section)
            elif kind == 'map':
                table[section.name] = _read_map(scenario, section)
                if validate:
                    _check(validate_map(table[section.name]), section)
            elif kind == 'submanifold':
                table[section.name] = _read_submanifold(scenario, section)
                if validate:
                    _check(validate_submanifold(table[section.name]), section)
            else:
                table[section.name] = _read_deformation(scenario, section)
                if validate:
                    _check(validate_deformation(table[section.name]), section)
    LOGGER.debug('parsed %r', scenario)
    return scenario


def scenario_path(name):
    """``name`` itself when it exists, else the bundled scenario of that name."""
    if os.path.exists(name):
        return name
    bundled = os.path.join(CONFIG_DIR, name if name.endswith('.scn') else name + '.scn')
    return bundled if os.path.exists(bundled) else name


def load_scenario(path, validate=True):
    with open(scenario_path(path), 'r') as handle:
        return parse_scenario(handle.read(), validate)


# writing

def _line(key, value):
    return '{0} = {1}'.format(key, value).rstrip()


def atlas_lines(atlas):
    out = ['[atlas {0}]'.format(atlas.name)]
    for chart in atlas.charts:
        out.append(_line('chart {0}'.format(chart.name), ', '.join(chart.variables)))
    for (i, j) in sorted(atlas.transitions):
        out.append(_line('transition {0} <- {1}'.format(atlas.charts[i].name,
                                                         atlas.charts[j].name),
                         ' : '.join(format_poly(c) for c in atlas.transitions[(i, j)])))
    for i in range(len(atlas)):
        if not atlas.bivector(i).is_zero():
            out.append(_line('bivector {0}'.format(atlas.charts[i].name),
                             format_multivector(atlas.bivector(i))))
    return out


def map_lines(fmap):
    out = ['[map {0}]'.format(fmap.name), 'source = {0}'.format(fmap.source.name),
           'target = {0}'.format(fmap.target.name)]
    for i in range(len(fmap.source)):
        key = 'chart {0} -> {1}'.format(fmap.source.charts[i].name,
                                        fmap.target.charts[fmap.assignment[i]].name)
        out.append(_line(key, ' ; '.join(format_poly(c) for c in fmap.components[i])))
    return out


def ring_lines(name, ring):
    out = ['[ring {0}]'.format(name), _line('params', ', '.join(ring.names)),
           'order = {0}'.format(ring.mu)]
    if ring.ideal:
        out.append(_line('ideal', ', '.join(format_monomial(g, ring.names) for g in ring.ideal)))
    return out


def submanifold_lines(sub):
    out = ['[submanifold {0}]'.format(sub.name), 'ambient = {0}'.format(sub.ambient.name)]
    for i in sub.charts:
        out.append(_line('chart {0}'.format(sub.ambient.charts[i].name),
                         ', '.join(sub.defining[i])))
    return out


def serialize(scenario):
    """Canonical text of a scenario; :func:`parse_scenario` reads it back."""
    blocks = []
    if scenario.defaults:
        blocks.append(['[defaults]'] + ['{0} = {1}'.format(k, v)
                                        for k, v in scenario.defaults.items()])
    blocks.extend(ring_lines(name, ring) for name, ring in scenario.rings.items())
    blocks.extend(atlas_lines(atlas) for atlas in scenario.atlases.values())
    blocks.extend(map_lines(fmap) for fmap in scenario.maps.values())
    blocks.extend(submanifold_lines(sub) for sub in scenario.submanifolds.values())
    for datum in scenario.deformations.values():
        blocks.append(datum_lines(datum, ring_name=scenario.ring_name(datum.ring)))
    return '\n\n'.join('\n'.join(block) for block in blocks) + '\n'
