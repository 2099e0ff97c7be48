#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing the exact Laurent arithmetic and linear algebra
"""
import numpy as np
import pytest
from sympy import QQ

from pdeform.utils.errors import ContextMismatch
from pdeform.utils.errors import ExtensionMismatch
from pdeform.utils.errors import NoInverse
from pdeform.utils.errors import NotInSpace
from pdeform.utils.errors import WindowOverflow
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import ParamRing
from pdeform.utils.laurent_util import SmallExtension
from pdeform.utils.laurent_util import VariableContext
from pdeform.utils.laurent_util import to_rational
from pdeform.utils.linalg_util import EchelonBasis
from pdeform.utils.linalg_util import kernel
from pdeform.utils.linalg_util import quotient_coords
from pdeform.utils.linalg_util import quotient_basis
from pdeform.utils.linalg_util import rank
from pdeform.utils.linalg_util import rref_rows
from pdeform.utils.linalg_util import solve


def _vars(ctx, *names):
    return [LaurentPoly.variable(ctx, name) for name in names]


def _random_laurent(rng, ctx):
    terms = {}
    for _ in range(int(rng.integers(1, 4))):
        exps = tuple(int(e) for e in rng.integers(-2, 3, size=ctx.nvars))
        params = tuple(int(e) for e in rng.integers(0, 3, size=ctx.size - ctx.nvars))
        terms[exps + params] = int(rng.integers(-3, 4))
    return LaurentPoly(ctx, terms)


def _random_vector(rng, ncols):
    return dict((k, QQ(int(rng.integers(-2, 3)))) for k in range(ncols) if rng.random() < 0.6)


def test_to_rational():
    assert to_rational(3) == QQ(3)
    assert to_rational('-3/4') == QQ(-3, 4)
    assert to_rational((1, 2)) == QQ(1, 2)
    assert to_rational(QQ(5, 7)) == QQ(5, 7)


def test_param_ring_standard_monomials():
    ring = ParamRing(('s', 't'), mu=2)
    assert ring.dimension() == 6
    assert ring.standard_monomials()[0] == (0, 0)
    assert set(ring.standard_monomials()[1:3]) == {(1, 0), (0, 1)}
    assert ring.vanishes((2, 1))
    assert not ring.vanishes((1, 1))

    cut = ParamRing(('s', 't'), mu=2, ideal=((1, 1),))
    assert cut.dimension() == 5
    assert cut.vanishes((1, 1))
    assert cut != ring
    assert ParamRing.from_standard(('s', 't'), cut.standard_monomials()) == cut


def test_param_ring_rejects_bad_input():
    with pytest.raises(ValueError):
        ParamRing(('t',), mu=-1)
    with pytest.raises(ValueError):
        ParamRing(('t',), mu=2, ideal=((1, 1),))
    with pytest.raises(ValueError):
        ParamRing.from_standard(('t',), [(0,), (2,)])


def test_extension_chain_is_small():
    ring = ParamRing(('s', 't'), mu=2)
    chain = ring.extension_chain()
    assert len(chain) == ring.dimension() - 1
    assert chain[0].quotient.is_field()
    assert chain[-1].total == ring
    for previous, current in zip(chain, chain[1:]):
        assert current.quotient == previous.total
    for extension in chain:
        assert sum(extension.kernel_generator) >= 1


def test_small_extension_checks():
    ring = ParamRing(('t',), mu=2)
    with pytest.raises(ExtensionMismatch):
        SmallExtension(ring, ring.truncated(1), (1,))
    with pytest.raises(ExtensionMismatch):
        SmallExtension(ring, ParamRing(('s',), mu=1), (2,))


def test_arithmetic_truncates_parameters():
    ctx = VariableContext(('x', 'y'), ParamRing(('t',), mu=2))
    x, y, t = _vars(ctx, 'x', 'y', 't')
    assert (1 + t) * (1 - t + t * t) == 1
    assert t ** 3 == 0
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - x).is_zero()
    assert 3 - x == -(x - 3)
    assert (x * t).parameter_degree() == 1
    assert LaurentPoly.zero(ctx).parameter_degree() is None


def test_inverse_of_unit():
    ctx = VariableContext(('x',), ParamRing(('t',), mu=3))
    x, t = _vars(ctx, 'x', 't')
    unit = x + t * x * x
    assert unit * unit.inverse() == 1
    assert (2 * x ** -1).inverse() == x.scale(QQ(1, 2))
    with pytest.raises(NoInverse):
        (1 + x).inverse()


def test_diff_and_laurent_shift():
    ctx = VariableContext(('x', 'y'))
    x, y = _vars(ctx, 'x', 'y')
    f = x ** 3 * y - x ** -2
    assert f.diff(0) == 3 * x * x * y + 2 * x ** -3
    assert f.diff(1) == x ** 3
    assert (x * y).divide_by_variable(0) == y


def test_parameter_coefficients_and_recast():
    ring = ParamRing(('t',), mu=2)
    ctx = VariableContext(('x',), ring)
    x, t = _vars(ctx, 'x', 't')
    f = x + 2 * t * x ** -1 - 5 * t * t
    assert f.at_zero() == LaurentPoly.variable(ctx.base(), 'x')
    assert f.coefficient_of((1,)) == LaurentPoly.variable(ctx.base(), 'x', -1).scale(2)
    assert f.parameter_support() == [(0,), (1,), (2,)]

    lower = VariableContext(('x',), ring.truncated(2))
    assert f.recast(lower) == (x + 2 * t * x ** -1).recast(lower)
    bare = VariableContext(('x',))
    assert f.recast(bare, drop_missing=True) == LaurentPoly.variable(bare, 'x')
    with pytest.raises(ContextMismatch):
        f.recast(bare)


def test_contexts_do_not_mix():
    a = VariableContext(('x',), label='U0')
    b = VariableContext(('x',), label='U1')
    assert a != b
    with pytest.raises(ContextMismatch):
        LaurentPoly.variable(a, 'x') + LaurentPoly.variable(b, 'x')


def test_window_drops_or_raises():
    soft = VariableContext(('x',), window=2)
    x = LaurentPoly.variable(soft, 'x')
    assert (x * x * x).is_zero()
    strict = VariableContext(('x',), window=2, strict=True)
    y = LaurentPoly.variable(strict, 'x')
    with pytest.raises(WindowOverflow):
        y * y * y


def test_rank_kernel_solve():
    rows = [{0: QQ(1), 1: QQ(2)}, {0: QQ(2), 1: QQ(4)}, {2: QQ(1)}]
    assert rank(rows, 3) == 2
    basis = kernel(rows, 3)
    assert len(basis) == 1
    for row in rows:
        assert sum(row.get(k, QQ(0)) * v for k, v in basis[0].items()) == 0
    solution = solve(rows, 3, {0: QQ(3), 1: QQ(6), 2: QQ(1)})
    assert solution is not None
    assert solution[0] + 2 * solution.get(1, QQ(0)) == 3
    assert solve(rows, 3, {0: QQ(1)}) is None


def test_echelon_basis_and_quotient():
    span = EchelonBasis([{0: QQ(1), 1: QQ(1)}], 3)
    assert span.contains({0: QQ(2), 1: QQ(2)})
    assert span.coordinates({0: QQ(3), 1: QQ(3)}) == (QQ(3),)
    with pytest.raises(NotInSpace):
        span.coordinates({2: QQ(1)})
    quotient = quotient_basis([{0: QQ(1)}, {1: QQ(1)}, {0: QQ(1), 1: QQ(1)}], span)
    assert quotient.dimension == 1


def test_ring_axioms_on_random_polynomials():
    ring = ParamRing(('t',), mu=2)
    ctx = VariableContext(('x', 'y'), ring)
    lower = VariableContext(('x', 'y'), ring.truncated(2))
    rng = np.random.default_rng(19)
    for _ in range(60):
        f, g, h = (_random_laurent(rng, ctx) for _ in range(3))
        assert f * g == g * f
        assert f + g == g + f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) - g == f
        # dropping parameter monomials is a ring homomorphism
        assert (f * g).recast(lower) == f.recast(lower) * g.recast(lower)
        assert (f + g).recast(lower) == f.recast(lower) + g.recast(lower)
        assert (f * g).at_zero() == f.at_zero() * g.at_zero()


def test_kernel_of_a_rank_one_matrix():
    rows = [{0: QQ(1), 1: QQ(2)}, {0: QQ(2), 1: QQ(4)}]
    assert kernel(rows, 2) == [{0: QQ(-2), 1: QQ(1)}]
    assert rref_rows(rows, 2) == ([{0: QQ(1), 1: QQ(2)}], (0,))


def test_linear_algebra_is_deterministic():
    rng = np.random.default_rng(23)
    for _ in range(10):
        rows = [_random_vector(rng, 6) for _ in range(5)]
        assert kernel(rows, 6) == kernel([dict(r) for r in rows], 6)
        assert rref_rows(rows, 6) == rref_rows(list(rows), 6)
        target = _random_vector(rng, 5)
        assert solve(rows, 6, target) == solve(rows, 6, dict(target))


def test_quotient_coordinates_ignore_the_subspace():
    rng = np.random.default_rng(29)
    for _ in range(10):
        span = EchelonBasis([_random_vector(rng, 5) for _ in range(2)], 5)
        quotient = quotient_basis([{k: QQ(1)} for k in range(5)], span)
        assert quotient.dimension == 5 - span.dimension
        v = _random_vector(rng, 5)
        s = {}
        for row in span.rows:
            c = QQ(int(rng.integers(-3, 4)))
            for k, a in row.items():
                s[k] = s.get(k, QQ(0)) + c * a
        shifted = dict((k, v.get(k, QQ(0)) + s.get(k, QQ(0))) for k in set(v) | set(s))
        assert quotient_coords(span, quotient, shifted) == quotient_coords(span, quotient, v)
