#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the text form of polynomials and multivectors
"""
import pytest
from sympy import QQ

from pdeform.geometry.multivector import Multivector
from pdeform.utils.errors import ScenarioSyntaxError
from pdeform.utils.errors import UnresolvedReference
from pdeform.utils.grammar_util import format_multivector
from pdeform.utils.grammar_util import format_poly
from pdeform.utils.grammar_util import format_rational
from pdeform.utils.grammar_util import parse_multivector
from pdeform.utils.grammar_util import parse_poly
from pdeform.utils.grammar_util import split_terms
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import ParamRing
from pdeform.utils.laurent_util import VariableContext

CTX = VariableContext(('x', 'y'), ParamRing(('t',), mu=2))


def test_format_rational():
    assert format_rational(QQ(-3, 4)) == '-3/4'
    assert format_rational(QQ(6, 3)) == '2'
    assert format_rational(0) == '0'


def test_parse_poly_values():
    x = LaurentPoly.variable(CTX, 'x')
    y = LaurentPoly.variable(CTX, 'y')
    t = LaurentPoly.variable(CTX, 't')
    assert parse_poly('x^2*y - 3/2*t + 1', CTX) == x * x * y - t.scale(QQ(3, 2)) + 1
    assert parse_poly('-x^-1', CTX) == -(x ** -1)
    assert parse_poly('2*x*x', CTX) == 2 * x * x
    assert parse_poly('t^3', CTX).is_zero()
    assert parse_poly('0', CTX).is_zero()


def test_format_is_canonical():
    text = format_poly(parse_poly('1 + x^2*y - 3/2*t', CTX))
    assert text == '-3/2*t + x^2*y + 1'
    assert format_poly(parse_poly(text, CTX)) == text
    assert format_poly(parse_poly('t*x', CTX)) == 'x*t'
    assert format_poly(LaurentPoly.zero(CTX)) == '0'


def test_split_terms_keeps_exponent_signs():
    terms = split_terms('x^-1 - y')
    assert [(sign, term) for sign, term, _ in terms] == [(1, 'x^-1'), (-1, 'y')]
    assert terms[0][2] == 1


def test_parse_poly_errors():
    with pytest.raises(ScenarioSyntaxError):
        parse_poly('x +', CTX)
    with pytest.raises(ScenarioSyntaxError):
        parse_poly('--x', CTX)
    with pytest.raises(ScenarioSyntaxError):
        parse_poly('1/0', CTX)
    with pytest.raises(ScenarioSyntaxError):
        parse_poly('t^-1', CTX)
    with pytest.raises(ScenarioSyntaxError):
        parse_poly('', CTX, line=4)
    with pytest.raises(UnresolvedReference) as err:
        parse_poly('x + q', CTX, line=7)
    assert err.value.name == 'q'
    assert err.value.line == 7


def test_syntax_error_reports_position():
    with pytest.raises(ScenarioSyntaxError) as err:
        parse_poly('x * $', CTX, line=3, column=10)
    assert err.value.line == 3
    assert err.value.column >= 10


def test_multivector_text():
    ctx = VariableContext(('x', 'y'))
    mv = parse_multivector('dz[0,1] : x - y', ctx, ctx.variables, 2)
    assert mv == Multivector.tangent(ctx, 2, {(0, 1): LaurentPoly.variable(ctx, 'x')
                                              - LaurentPoly.variable(ctx, 'y')})
    assert format_multivector(mv) == 'dz[0,1] : x - y'
    field = parse_multivector('dz[0] : 1 ; dz[1] : y^2', ctx, ctx.variables, 1)
    assert format_multivector(field) == 'dz[0] : 1 ; dz[1] : y^2'
    assert parse_multivector('0', ctx, ctx.variables, 2).is_zero()
    with pytest.raises(ScenarioSyntaxError):
        parse_multivector('dz[0] : x', ctx, ctx.variables, 2)
    with pytest.raises(ScenarioSyntaxError):
        parse_multivector('dz[0,2] : x', ctx, ctx.variables, 2)
