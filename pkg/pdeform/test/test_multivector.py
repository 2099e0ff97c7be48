#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the Schouten calculus on multivector fields
"""
import itertools

import numpy as np
import pytest

from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.multivector import ChartMap
from pdeform.geometry.multivector import Multivector
from pdeform.geometry.multivector import evaluate
from pdeform.geometry.multivector import pushforward
from pdeform.geometry.multivector import schouten
from pdeform.geometry.multivector import transform
from pdeform.geometry.multivector import wedge
from pdeform.utils.errors import ArityMismatch
from pdeform.utils.errors import ChartMismatch
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import ParamRing
from pdeform.utils.laurent_util import VariableContext

CTX = VariableContext(('x', 'y', 'z'), label='R3')


def _random_poly(rng, ctx):
    terms = {}
    for _ in range(int(rng.integers(1, 4))):
        exps = tuple(int(e) for e in rng.integers(0, 3, size=ctx.nvars))
        terms[exps] = int(rng.integers(-3, 4))
    return LaurentPoly(ctx, terms)


def _random_multivector(rng, degree, ctx=CTX):
    coeffs = {}
    for idx in itertools.combinations(range(ctx.nvars), degree):
        if rng.random() < 0.7:
            coeffs[idx] = _random_poly(rng, ctx)
    return Multivector.tangent(ctx, degree, coeffs)


def _sign(exponent):
    return -1 if exponent % 2 else 1


def _vanishes(*terms):
    # brackets of two functions are degree 0 zeros, they drop out of the sum
    live = [term for term in terms if not term.is_zero()]
    if not live:
        return True
    total = live[0]
    for term in live[1:]:
        total = total + term
    return total.is_zero()


def test_evaluate_sign_convention():
    ctx = VariableContext(('x', 'y'))
    x, y = LaurentPoly.variable(ctx, 'x'), LaurentPoly.variable(ctx, 'y')
    area = Multivector.basis(ctx, ctx.variables, (0, 1))
    assert evaluate(area, (x, y)) == 1
    assert evaluate(area, (y, x)) == -1
    assert Multivector.basis(ctx, ctx.variables, (1, 0)) == -area
    with pytest.raises(ArityMismatch):
        evaluate(area, (x,))


def test_schouten_low_degrees():
    ctx = VariableContext(('x', 'y'))
    x, y = LaurentPoly.variable(ctx, 'x'), LaurentPoly.variable(ctx, 'y')
    # X = x d/dx, Y = d/dy
    X = Multivector.tangent(ctx, 1, {(0,): x})
    Y = Multivector.basis(ctx, ctx.variables, (1,))
    f = Multivector.function(x * x * y)
    assert schouten(X, f) == Multivector.function(2 * x * x * y)
    assert schouten(f, X) == -schouten(X, f)
    assert schouten(X, Y).is_zero()
    Z = Multivector.tangent(ctx, 1, {(1,): x})
    assert schouten(X, Z) == Z


def test_poisson_bivectors_commute_with_themselves():
    ctx = VariableContext(('x', 'y', 'z'))
    x, y, z = [LaurentPoly.variable(ctx, n) for n in ('x', 'y', 'z')]
    # linear Poisson structure of so(3)
    lie = Multivector.tangent(ctx, 2, {(0, 1): z, (1, 2): x, (0, 2): -y})
    assert schouten(lie, lie).is_zero()
    bad = Multivector.tangent(ctx, 2, {(0, 1): z, (1, 2): y})
    assert not schouten(bad, bad).is_zero()


def test_randomized_graded_identities():
    rng = np.random.default_rng(20)
    checks = 0
    for _ in range(70):
        p, q, r = (int(d) for d in rng.integers(0, 3, size=3))
        P = _random_multivector(rng, p)
        Q = _random_multivector(rng, q)
        R = _random_multivector(rng, r)

        # graded antisymmetry
        assert schouten(P, Q) == schouten(Q, P).scale(-_sign((p - 1) * (q - 1)))
        checks += 1

        # graded Jacobi
        assert _vanishes(schouten(P, schouten(Q, R)).scale(_sign((p - 1) * (r - 1))),
                         schouten(Q, schouten(R, P)).scale(_sign((q - 1) * (p - 1))),
                         schouten(R, schouten(P, Q)).scale(_sign((r - 1) * (q - 1))))
        checks += 1

        # graded Leibniz rule
        assert _vanishes(schouten(P, wedge(Q, R)),
                         -wedge(schouten(P, Q), R),
                         wedge(Q, schouten(P, R)).scale(-_sign((p - 1) * q)))
        checks += 1
    assert checks >= 200


def test_wedge_graded_commutative():
    rng = np.random.default_rng(7)
    for _ in range(20):
        p, q = (int(d) for d in rng.integers(0, 3, size=2))
        a, b = _random_multivector(rng, p), _random_multivector(rng, q)
        assert wedge(a, b) == wedge(b, a).scale(_sign(p * q))


def test_frames_do_not_mix():
    other = VariableContext(('x', 'y', 'z'), label='R3b')
    a = Multivector.basis(CTX, CTX.variables, (0,))
    b = Multivector.basis(other, other.variables, (0,))
    with pytest.raises(ChartMismatch):
        a + b
    with pytest.raises(ChartMismatch):
        schouten(a, b)


def test_transform_and_pushforward_on_p1():
    z_ctx = VariableContext(('z',), label='U0')
    w_ctx = VariableContext(('w',), label='U1')
    z = LaurentPoly.variable(z_ctx, 'z')
    w = LaurentPoly.variable(w_ctx, 'w')
    flip = ChartMap(z_ctx, w_ctx, (z ** -1,), (w ** -1,))
    d_z = Multivector.basis(z_ctx, z_ctx.variables, (0,))
    moved = transform(d_z, flip.components, w_ctx.variables)
    assert moved.coefficient((0,)) == -(z ** -2)
    assert pushforward(d_z, flip) == Multivector.tangent(w_ctx, 1, {(0,): -(w * w)})
    # z^2 d/dz extends over the chart at infinity as -d/dw
    assert pushforward(d_z.scale(z * z), flip) == Multivector.tangent(w_ctx, 1, {(0,): -1})


def test_formal_inverse_by_newton():
    ring = ParamRing(('t',), mu=2)
    src = VariableContext(('z',), ring, label='A')
    tgt = VariableContext(('w',), ring, label='B')
    z, t = LaurentPoly.variable(src, 'z'), LaurentPoly.variable(src, 't')
    shift = ChartMap(src, tgt, (z + t + t * z,))
    inverse = shift.formal_inverse()
    w, s = LaurentPoly.variable(tgt, 'w'), LaurentPoly.variable(tgt, 't')
    assert shift.inverse_substitution()(shift.components[0]) == w
    assert inverse[0] == (w - s) * (1 + s).inverse()
    assert shift.compose(ChartMap(tgt, src, inverse)).components[0] == w


def test_pushforward_is_functorial():
    rng = np.random.default_rng(31)
    p2 = load_scenario('p2').atlases['P2']
    first, second = p2.transition(1, 2), p2.transition(0, 1)
    direct = p2.transition(0, 2)
    ctx = p2.ctx(2)
    for _ in range(15):
        a = _random_multivector(rng, int(rng.integers(0, 3)), ctx)
        stepwise = pushforward(pushforward(a, first), second)
        assert stepwise == pushforward(a, second.compose(first))
        assert stepwise == pushforward(a, direct)

    p1 = load_scenario('p1_zero').atlases['P1']
    there, back = p1.transition(1, 0), p1.transition(0, 1)
    for _ in range(10):
        a = _random_multivector(rng, int(rng.integers(0, 2)), p1.ctx(0))
        assert pushforward(pushforward(a, there), back) == a


def test_pushforward_commutes_with_schouten():
    rng = np.random.default_rng(37)
    p2 = load_scenario('p2').atlases['P2']
    for i, j in ((0, 1), (1, 2), (2, 0)):
        move = p2.transition(i, j)
        ctx = p2.ctx(j)
        for _ in range(10):
            p, q = (int(d) for d in rng.integers(0, 3, size=2))
            a, b = _random_multivector(rng, p, ctx), _random_multivector(rng, q, ctx)
            assert (pushforward(schouten(a, b), move)
                    == schouten(pushforward(a, move), pushforward(b, move)))
