#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Multivector fields on a chart and their graded calculus.

A :class:`Multivector` stores coefficients on strictly increasing index
tuples of a *frame*, the names of the variables whose partial derivatives
span it. Tangent multivectors use the chart's own variables as frame;
pullback multivectors ``f*T_Y`` use the target chart's variables as frame
while their coefficients are functions of the source chart.

Sign conventions, fixed once for the whole package:

* ``evaluate(dx ^ dy, (x, y)) == 1``: a bivector with coefficient ``c`` on
  ``(a, b)``, ``a < b``, pairs to ``c * (da f * db g - db f * da g)``.
* ``schouten(P, Q) = sum_k (P <- d xi_k) ^ (d_k Q)
  - (-1)^((p-1)(q-1)) (Q <- d xi_k) ^ (d_k P)``, where ``<- d xi_k`` is the
  right derivative that removes index ``k``. Then ``schouten(X, f) = X(f)``
  and ``schouten`` restricts to the Lie bracket on vector fields.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import itertools
import logging

from sympy import QQ

from pdeform.utils.errors import ArityMismatch
from pdeform.utils.errors import ChartMismatch
from pdeform.utils.errors import NoInverse
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import Substitution
from pdeform.utils.laurent_util import to_rational

LOGGER = logging.getLogger(__name__)


def sort_sign(indices):
    """Sorts ``indices`` and returns ``(sign, sorted)``; sign 0 on repeats."""
    indices = list(indices)
    if len(set(indices)) != len(indices):
        return 0, tuple(sorted(indices))
    sign = 1
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            if indices[a] > indices[b]:
                sign = -sign
    return sign, tuple(sorted(indices))


def _perm_sign(perm):
    return sort_sign(perm)[0]


class Multivector(object):
    """Degree ``p`` antisymmetric field with Laurent coefficients.

    Args:
        ctx (VariableContext): context of the coefficient functions.
        frame (tuple): names of the frame variables.
        degree (int): the degree ``p``.
        coeffs (dict): index tuple -> LaurentPoly. Unsorted tuples are
            sorted with their permutation sign; tuples with a repeated index
            are dropped.
    """
    __slots__ = ('ctx', 'frame', 'degree', '_coeffs', '_hash')

    def __init__(self, ctx, frame, degree, coeffs=None):
        self.ctx = ctx
        self.frame = tuple(frame)
        self.degree = int(degree)
        self._hash = None
        clean = {}
        m = len(self.frame)
        for idx, coef in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != self.degree:
                raise ValueError('index {0} does not have degree {1}'.format(idx, degree))
            if any(k < 0 or k >= m for k in idx):
                raise ValueError('index {0} outside frame {1}'.format(idx, self.frame))
            sign, key = sort_sign(idx)
            if not sign:
                continue
            if not isinstance(coef, LaurentPoly):
                coef = LaurentPoly.constant(ctx, coef)
            elif coef.ctx != ctx:
                raise ChartMismatch('coefficient in {0}, multivector in {1}'.format(coef.ctx, ctx))
            if sign < 0:
                coef = -coef
            clean[key] = clean[key] + coef if key in clean else coef
        self._coeffs = dict((k, c) for k, c in clean.items() if not c.is_zero())

    # constructors

    @classmethod
    def zero(cls, ctx, frame, degree):
        return cls(ctx, frame, degree)

    @classmethod
    def function(cls, poly, frame=None):
        frame = poly.ctx.variables if frame is None else frame
        return cls(poly.ctx, frame, 0, {(): poly})

    @classmethod
    def basis(cls, ctx, frame, indices, coef=1):
        if not isinstance(coef, LaurentPoly):
            coef = LaurentPoly.constant(ctx, coef)
        return cls(ctx, frame, len(indices), {tuple(indices): coef})

    @classmethod
    def tangent(cls, ctx, degree, coeffs=None):
        """Multivector in the chart's own frame."""
        return cls(ctx, ctx.variables, degree, coeffs)

    # accessors

    @property
    def dimension(self):
        return len(self.frame)

    def is_tangent(self):
        return self.frame == self.ctx.variables

    def coefficients(self):
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def coefficient(self, indices):
        """Coefficient on any index sequence, with the alternating sign."""
        sign, key = sort_sign(indices)
        if not sign or key not in self._coeffs:
            return LaurentPoly.zero(self.ctx)
        coef = self._coeffs[key]
        return coef if sign > 0 else -coef

    def function_value(self):
        """The coefficient of a degree 0 multivector."""
        return self._coeffs.get((), LaurentPoly.zero(self.ctx))

    def is_zero(self):
        return not self._coeffs

    def max_abs_exponent(self):
        return max([c.max_abs_exponent() for c in self._coeffs.values()] + [0])

    def compatible(self, other):
        return self.ctx == other.ctx and self.frame == other.frame

    def _check(self, other):
        if not self.compatible(other):
            raise ChartMismatch('{0}/{1} vs {2}/{3}'.format(
                self.ctx, self.frame, other.ctx, other.frame))

    # linear structure

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise ValueError('cannot add degrees {0} and {1}'.format(self.degree, other.degree))
        coeffs = dict(self._coeffs)
        for k, c in other._coeffs.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        return Multivector(self.ctx, self.frame, self.degree, coeffs)

    def __neg__(self):
        return Multivector(self.ctx, self.frame, self.degree,
                           dict((k, -c) for k, c in self._coeffs.items()))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        """Multiplies every coefficient by a rational or a function."""
        if isinstance(value, LaurentPoly):
            return Multivector(self.ctx, self.frame, self.degree,
                               dict((k, c * value) for k, c in self._coeffs.items()))
        value = to_rational(value)
        return Multivector(self.ctx, self.frame, self.degree,
                           dict((k, c.scale(value)) for k, c in self._coeffs.items()))

    def map_coefficients(self, fn, ctx=None):
        """Applies ``fn`` to every coefficient; the result lives in ``ctx``."""
        ctx = self.ctx if ctx is None else ctx
        return Multivector(ctx, self.frame, self.degree,
                           dict((k, fn(c)) for k, c in self._coeffs.items()))

    def substitute(self, substitution):
        """Composes every coefficient with a :class:`Substitution`."""
        return self.map_coefficients(substitution, substitution.target)

    def recast(self, ctx, drop_missing=False):
        return self.map_coefficients(lambda c: c.recast(ctx, drop_missing), ctx)

    def with_frame(self, frame):
        return Multivector(self.ctx, frame, self.degree, self._coeffs)

    # calculus

    def right_derivative(self, k):
        """Contraction ``P <- d xi_k``, degree ``p - 1``."""
        p = self.degree
        coeffs = {}
        for idx, c in self._coeffs.items():
            if k in idx:
                s = idx.index(k)
                rest = idx[:s] + idx[s + 1:]
                coeffs[rest] = c if (p - 1 - s) % 2 == 0 else -c
        return Multivector(self.ctx, self.frame, p - 1, coeffs)

    def diff(self, name):
        """Partial derivative of every coefficient by the chart variable ``name``."""
        k = self.ctx.index(name)
        return Multivector(self.ctx, self.frame, self.degree,
                           dict((i, c.diff(k)) for i, c in self._coeffs.items()))

    def __eq__(self, other):
        return (isinstance(other, Multivector) and self.compatible(other)
                and self.degree == other.degree and self._coeffs == other._coeffs)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.frame, self.degree,
                               frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return 'Multivector({0})'.format(self)

    def __str__(self):
        from pdeform.utils.grammar_util import format_multivector
        return format_multivector(self)


def wedge(a, b):
    """Exterior product, graded commutative."""
    a._check(b)
    coeffs = {}
    for i, ca in a._coeffs.items():
        for j, cb in b._coeffs.items():
            if set(i) & set(j):
                continue
            sign, key = sort_sign(i + j)
            term = ca * cb
            if sign < 0:
                term = -term
            coeffs[key] = coeffs[key] + term if key in coeffs else term
    return Multivector(a.ctx, a.frame, a.degree + b.degree, coeffs)


def schouten(a, b):
    """Schouten-Nijenhuis bracket of two tangent multivectors."""
    a._check(b)
    if not a.is_tangent():
        raise ChartMismatch('schouten needs tangent multivectors, frame {0}'.format(a.frame))
    p, q = a.degree, b.degree
    result = Multivector.zero(a.ctx, a.frame, max(p + q - 1, 0))
    if p + q == 0:
        return result
    sign = -1 if ((p - 1) * (q - 1)) % 2 == 0 else 1
    for k, name in enumerate(a.frame):
        if p:
            left = a.right_derivative(k)
            if not left.is_zero():
                result = result + wedge(left, b.diff(name))
        if q:
            right = b.right_derivative(k)
            if not right.is_zero():
                term = wedge(right, a.diff(name))
                result = result + (term if sign > 0 else -term)
    return result


def _determinant(rows, cols, ctx):
    if not cols:
        return LaurentPoly.one(ctx)
    total = LaurentPoly.zero(ctx)
    for perm in itertools.permutations(range(len(cols))):
        term = None
        for r, c in enumerate(perm):
            entry = rows[r][cols[c]]
            if entry.is_zero():
                term = None
                break
            term = entry if term is None else term * entry
        if term is not None:
            total = total + term if _perm_sign(perm) > 0 else total - term
    return total


def jacobian(functions, frame, sub=None):
    """Matrix of partials ``d functions[r] / d frame[s]``, optionally composed.

    Args:
        functions (tuple): LaurentPolys sharing one context.
        frame (tuple): variable names of that context.
        sub (Substitution): applied to each entry afterwards.
    """
    rows = []
    for fn in functions:
        row = []
        for name in frame:
            entry = fn.diff(fn.ctx.index(name))
            row.append(sub(entry) if sub is not None else entry)
        rows.append(row)
    return rows


def _contract(a, rows, ctx):
    """``sum_I a_I det(rows[:, I])`` for a square block of ``len(rows)`` rows."""
    total = LaurentPoly.zero(ctx)
    for idx, coef in a._coeffs.items():
        det = _determinant(rows, idx, ctx)
        if not det.is_zero():
            total = total + coef * det
    return total


def evaluate(a, fns, sub=None):
    """Pairs a degree ``p`` multivector with ``p`` functions.

    Args:
        a (Multivector): the multivector.
        fns (tuple): functions whose context contains ``a.frame``.
        sub (Substitution): composes the partials of ``fns`` into
            ``a.ctx``, used for pullback multivectors.

    Raises:
        ArityMismatch: if ``len(fns) != a.degree``.
        ChartMismatch: if the functions do not live where ``a`` expects.
    """
    fns = tuple(fns)
    if len(fns) != a.degree:
        raise ArityMismatch('degree {0} multivector on {1} functions'.format(a.degree, len(fns)))
    if not fns:
        return a.function_value()
    for fn in fns:
        if sub is None and fn.ctx != a.ctx:
            raise ChartMismatch('function in {0}, multivector in {1}'.format(fn.ctx, a.ctx))
        if sub is not None and fn.ctx != sub.source:
            raise ChartMismatch('function in {0}, expected {1}'.format(fn.ctx, sub.source))
        if not all(fn.ctx.has(name) for name in a.frame):
            raise ChartMismatch('frame {0} is not a chart of {1}'.format(a.frame, fn.ctx))
    return _contract(a, jacobian(fns, a.frame, sub), a.ctx)


def transform(a, components, frame, sub=None):
    """Re-expresses ``a`` in the frame of ``components``.

    The coefficient on an increasing ``J`` is ``evaluate(a, components[J])``,
    the Jacobian minor rule. Coefficients stay in ``a.ctx``.
    """
    components = tuple(components)
    if len(components) != len(frame):
        raise ChartMismatch('{0} components for frame {1}'.format(len(components), frame))
    rows = jacobian(components, a.frame, sub)
    coeffs = {}
    for idx in itertools.combinations(range(len(frame)), a.degree):
        value = _contract(a, [rows[r] for r in idx], a.ctx)
        if not value.is_zero():
            coeffs[idx] = value
    return Multivector(a.ctx, frame, a.degree, coeffs)


def pushforward(a, chart_map):
    """Transports a tangent multivector along an invertible chart map."""
    if a.ctx != chart_map.source or not a.is_tangent():
        raise ChartMismatch('{0} does not live on {1}'.format(a.ctx, chart_map.source))
    moved = transform(a, chart_map.components, chart_map.target.variables)
    return moved.substitute(chart_map.inverse_substitution())


class ChartMap(object):
    """Map between two charts given by the target coordinates.

    Args:
        source (VariableContext): the chart the map starts from.
        target (VariableContext): the chart it lands in.
        components (tuple): one polynomial in ``source`` per target variable.
        inverse (tuple): optional polynomials in ``target``, one per source
            variable.
        base_inverse (tuple): optional inverse of the parameter-free part,
            used as the start of Newton iteration.

    Examples:
        >>> z = VariableContext(('z',), label='U0')
        >>> w = VariableContext(('w',), label='U1')
        >>> flip = ChartMap(z, w, (LaurentPoly.variable(z, 'z', -1),),
        ...                 (LaurentPoly.variable(w, 'w', -1),))
    """

    def __init__(self, source, target, components, inverse=None, base_inverse=None):
        components = tuple(components)
        if len(components) != target.nvars:
            raise ChartMismatch('{0} components for {1} target variables'.format(
                len(components), target.nvars))
        for c in components:
            if c.ctx != source:
                raise ChartMismatch('component {0} not in {1}'.format(c, source))
        self.source = source
        self.target = target
        self.components = components
        self._inverse = None if inverse is None else tuple(inverse)
        self._base_inverse = None if base_inverse is None else tuple(base_inverse)
        self._sub = None
        self._inv_sub = None

    @property
    def inverse(self):
        return self._inverse

    def substitution(self):
        """Composition ``h -> h o map`` for functions ``h`` of the target."""
        if self._sub is None:
            self._sub = Substitution(self.target, self.source, self.components)
        return self._sub

    def inverse_substitution(self):
        if self._inv_sub is None:
            self._inv_sub = Substitution(self.source, self.target, self.formal_inverse())
        return self._inv_sub

    def __call__(self, poly):
        return self.substitution()(poly)

    def at_zero(self):
        base_src, base_tgt = self.source.base(), self.target.base()
        inverse = None
        if self._inverse is not None:
            inverse = tuple(c.at_zero(base_tgt) for c in self._inverse)
        return ChartMap(base_src, base_tgt, tuple(c.at_zero(base_src) for c in self.components),
                        inverse)

    def compose(self, other):
        """``self o other`` where ``other`` lands in ``self.source``."""
        if other.target != self.source:
            raise ChartMismatch('cannot compose {0} after {1}'.format(self.source, other.target))
        sub = other.substitution()
        components = tuple(sub(c) for c in self.components)
        inverse = None
        if self._inverse is not None and other._inverse is not None:
            back = Substitution(other.target, self.target, self._inverse)
            inverse = tuple(back(c) for c in other._inverse)
        return ChartMap(other.source, self.target, components, inverse)

    def _affine_base_inverse(self):
        from sympy.polys.matrices import DomainMatrix
        n = self.source.nvars
        if self.target.nvars != n:
            raise NoInverse('non-square chart map {0} -> {1}'.format(self.source, self.target))
        rows, shift = [], []
        for comp in self.components:
            base = comp.at_zero()
            row = [QQ(0)] * n
            const = QQ(0)
            for exps, c in base.terms().items():
                if not any(exps):
                    const = c
                elif sum(exps) == 1 and min(exps) == 0:
                    row[exps.index(1)] = c
                else:
                    raise NoInverse('base map is not affine, term {0}'.format(exps))
            rows.append(row)
            shift.append(const)
        matrix = DomainMatrix([list(r) for r in rows], (n, n), QQ).to_dense()
        if matrix.det() == 0:
            raise NoInverse('base map is singular')
        inv = matrix.inv().to_Matrix()
        result = []
        tgt = self.target
        for s in range(n):
            poly = LaurentPoly.zero(tgt)
            for r in range(n):
                coef = QQ.convert(inv[s, r])
                if coef:
                    wr = LaurentPoly.variable(tgt, tgt.variables[r])
                    poly = poly + (wr - shift[r]).scale(coef)
            result.append(poly)
        return tuple(result)

    def formal_inverse(self):
        """Inverse modulo the parameter order, by Newton iteration.

        Raises:
            NoInverse: when no inverse is known and the base map is not an
                invertible affine map.
        """
        if self._inverse is not None:
            return self._inverse
        if self._base_inverse is not None:
            start = tuple(c.recast(self.target) for c in self._base_inverse)
        else:
            start = self._affine_base_inverse()
        target = self.target
        base_jac = jacobian(start, target.variables)
        base_jac = [[e.at_zero(target) if e.ctx.ring.r else e for e in row] for row in base_jac]
        psi = list(start)
        identity = [LaurentPoly.variable(target, name) for name in target.variables]
        for _ in range(target.ring.dimension() + 1):
            sub = Substitution(self.source, target, psi)
            residual = [sub(c) - w for c, w in zip(self.components, identity)]
            if all(r.is_zero() for r in residual):
                self._inverse = tuple(psi)
                return self._inverse
            for s in range(len(psi)):
                correction = LaurentPoly.zero(target)
                for r, res in enumerate(residual):
                    if not res.is_zero():
                        correction = correction + base_jac[s][r] * res
                psi[s] = psi[s] - correction
        raise NoInverse('Newton iteration did not close for {0} -> {1}'.format(
            self.source, self.target))

    def __repr__(self):
        return 'ChartMap({0} -> {1})'.format(self.source.label, self.target.label)
