#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Text form of rationals and Laurent polynomials.

The grammar is the one scenario files use::

    poly     := "0" | term (("+" | "-") term)*
    term     := ["-"] factor ("*" factor)*
    factor   := integer ["/" integer] | name ["^" ["-"] integer]

``format_poly`` writes terms in decreasing monomial order, so that
``format_poly(parse_poly(s, ctx))`` is a canonical form of ``s``.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import re

from sympy import QQ

from pdeform.utils.errors import ScenarioSyntaxError
from pdeform.utils.errors import UnresolvedReference
from pdeform.utils.laurent_util import LaurentPoly

_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')
_NUMBER = re.compile(r'^[0-9]+(/[0-9]+)?$')


def format_rational(value):
    value = QQ.convert(value)
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return str(num)
    return '{0}/{1}'.format(num, den)


def _format_monomial(names, exps):
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append('{0}^{1}'.format(name, e))
    return '*'.join(factors)


def format_poly(poly):
    """Canonical text of a :class:`LaurentPoly`."""
    names = poly.ctx.names
    pieces = []
    for exps, coef in poly.items():
        negative = coef < 0
        magnitude = -coef if negative else coef
        monomial = _format_monomial(names, exps)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = '{0}*{1}'.format(format_rational(magnitude), monomial)
        if not pieces:
            pieces.append('-' + body if negative else body)
        else:
            pieces.append(('- ' if negative else '+ ') + body)
    return ' '.join(pieces) if pieces else '0'


def split_terms(text):
    """Splits ``text`` into ``(sign, term, column)`` triples.

    A ``+`` or ``-`` starts a new term unless it follows ``^``, ``*`` or
    ``/``, where it belongs to an exponent or a factor.
    """
    terms = []
    sign = 1
    start = 0
    previous = ''
    for k, ch in enumerate(text):
        if ch in '+-' and previous not in ('^', '*', '/'):
            chunk = text[start:k].strip()
            if chunk:
                terms.append((sign, chunk, start + 1))
            elif terms or previous in ('+', '-'):
                raise ScenarioSyntaxError('dangling {0!r}'.format(ch), column=k + 1)
            sign = -1 if ch == '-' else 1
            start = k + 1
            previous = ch
            continue
        if not ch.isspace():
            previous = ch
    chunk = text[start:].strip()
    if not chunk:
        raise ScenarioSyntaxError('missing term', column=len(text) + 1)
    terms.append((sign, chunk, start + 1))
    return terms


def parse_poly(text, ctx, line=0, column=1):
    """Parses a polynomial of the scenario grammar in context ``ctx``.

    Args:
        text (str): source text.
        ctx (VariableContext): context giving the admissible names.
        line (int): line number reported in errors.
        column (int): column of ``text`` inside the line.

    Raises:
        ScenarioSyntaxError: on malformed input.
        UnresolvedReference: on a name that is not a variable of ``ctx``.
    """
    text = text.strip()
    if not text:
        raise ScenarioSyntaxError('empty polynomial', line, column)
    try:
        terms = split_terms(text)
    except ScenarioSyntaxError as err:
        raise ScenarioSyntaxError('bad polynomial {0!r}: dangling sign'.format(text),
                                  line, column + err.column - 1)
    result = {}
    for sign, term, offset in terms:
        coef = QQ(sign)
        exps = [0] * ctx.size
        for factor in term.split('*'):
            factor = factor.strip()
            where = column + offset - 1
            if _NUMBER.match(factor):
                num, _, den = factor.partition('/')
                if den and int(den) == 0:
                    raise ScenarioSyntaxError('zero denominator in {0!r}'.format(factor),
                                              line, where)
                coef = coef * QQ(int(num), int(den or 1))
                continue
            name, _, power = factor.partition('^')
            name = name.strip()
            if not _NAME.match(name):
                raise ScenarioSyntaxError('bad factor {0!r}'.format(factor), line, where)
            try:
                power = int(power) if power else 1
            except ValueError:
                raise ScenarioSyntaxError('bad exponent in {0!r}'.format(factor), line, where)
            if not ctx.has(name):
                raise UnresolvedReference('variable', name, line)
            slot = ctx.index(name)
            if slot >= ctx.nvars and power < 0:
                raise ScenarioSyntaxError('negative parameter power in {0!r}'.format(factor),
                                          line, where)
            exps[slot] += power
        exps = tuple(exps)
        result[exps] = result.get(exps, QQ(0)) + coef
    return LaurentPoly(ctx, result)


def format_multivector(mv):
    """Text of a multivector, entries ``dz[a,b] : <poly>`` joined by ``;``."""
    entries = []
    for idx, coef in mv.items():
        entries.append('dz[{0}] : {1}'.format(','.join(str(k) for k in idx), format_poly(coef)))
    return ' ; '.join(entries) if entries else '0'


_ENTRY = re.compile(r'^dz\[([0-9,\s]*)\]\s*:\s*(.+)$')


def parse_multivector(text, ctx, frame, degree, line=0, column=1):
    """Parses the output of :func:`format_multivector`.

    Raises:
        ScenarioSyntaxError: on malformed entries or a degree mismatch.
    """
    from pdeform.geometry.multivector import Multivector
    text = text.strip()
    if text == '0':
        return Multivector.zero(ctx, frame, degree)
    coeffs = {}
    offset = 0
    for entry in text.split(';'):
        where = column + offset
        offset += len(entry) + 1
        match = _ENTRY.match(entry.strip())
        if not match:
            raise ScenarioSyntaxError('bad multivector entry {0!r}'.format(entry.strip()),
                                      line, where)
        raw = match.group(1).strip()
        idx = tuple(int(k) for k in raw.split(',')) if raw else ()
        if len(idx) != degree:
            raise ScenarioSyntaxError('entry {0!r} is not of degree {1}'.format(
                entry.strip(), degree), line, where)
        if any(k >= len(frame) for k in idx):
            raise ScenarioSyntaxError('index out of range in {0!r}'.format(entry.strip()),
                                      line, where)
        poly = parse_poly(match.group(2), ctx, line, where)
        coeffs[idx] = coeffs[idx] + poly if idx in coeffs else poly
    return Multivector(ctx, frame, degree, coeffs)
