#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Exact Laurent polynomials over QQ with truncated deformation parameters.

A :class:`LaurentPoly` lives in a :class:`VariableContext`. The context names
the chart variables, the deformation parameters and the :class:`ParamRing`
that truncates them. Chart exponents may be negative, parameter exponents
never are.

Examples:
    >>> from pdeform.utils.laurent_util import ParamRing, VariableContext, LaurentPoly
    >>> ctx = VariableContext(('x', 'y'), ParamRing(('t',), mu=2))
    >>> x = LaurentPoly.variable(ctx, 'x')
    >>> t = LaurentPoly.variable(ctx, 't')
    >>> (1 + t) * (1 - t + t * t) == LaurentPoly.one(ctx)
    True
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import itertools
import logging

from sympy import QQ

from pdeform.utils.errors import ContextMismatch
from pdeform.utils.errors import ExtensionMismatch
from pdeform.utils.errors import NoInverse
from pdeform.utils.errors import WindowOverflow

LOGGER = logging.getLogger(__name__)

ZERO = QQ(0)
ONE = QQ(1)


def to_rational(value):
    """Converts ints, ``"p/q"`` strings and QQ elements into QQ."""
    if QQ.of_type(value):
        return value
    if isinstance(value, str):
        num, _, den = value.strip().partition('/')
        return QQ(int(num), int(den or 1))
    if isinstance(value, tuple):
        return QQ(int(value[0]), int(value[1]))
    return QQ(int(value))


def monomial_key(exps):
    """Graded key of a parameter exponent vector; lower keys come first."""
    return (sum(exps), tuple(-e for e in exps))


def _divides(gen, exps):
    return all(g <= e for g, e in zip(gen, exps))


def _monomials_up_to(r, mu):
    for degree in range(mu + 1):
        for combo in itertools.combinations_with_replacement(range(r), degree):
            exps = [0] * r
            for v in combo:
                exps[v] += 1
            yield tuple(exps)


class ParamRing(object):
    """Truncated parameter ring QQ[t_1..t_r] / (m^(mu+1) + monomial ideal).

    Args:
        names (tuple): parameter names.
        mu (int): truncation order, monomials of total degree > mu vanish.
        ideal (tuple): optional monomial generators, as exponent vectors.

    Two rings are equal when they have the same names and the same standard
    monomials, whatever generators were used to present them.
    """

    def __init__(self, names=(), mu=0, ideal=()):
        self._names = tuple(names)
        self._mu = int(mu)
        if self._mu < 0:
            raise ValueError('truncation order must be >= 0, got {0}'.format(mu))
        gens = set()
        for gen in ideal:
            gen = tuple(int(e) for e in gen)
            if len(gen) != len(self._names) or min(gen + (0,)) < 0:
                raise ValueError('bad ideal generator {0}'.format(gen))
            gens.add(gen)
        self._ideal = tuple(sorted(gens))
        standard = [m for m in _monomials_up_to(len(self._names), self._mu)
                    if not any(_divides(g, m) for g in self._ideal)]
        self._standard = tuple(sorted(standard, key=monomial_key))
        self._standard_set = frozenset(self._standard)

    @classmethod
    def from_standard(cls, names, monomials):
        """Builds the ring whose surviving monomials are ``monomials``.

        ``monomials`` must be an order ideal (closed under division).
        """
        names = tuple(names)
        r = len(names)
        kept = set(tuple(m) for m in monomials)
        if not kept:
            raise ValueError('a parameter ring needs at least the unit monomial')
        mu = max(sum(m) for m in kept)
        candidates = set()
        for m in kept:
            for v in range(r):
                c = list(m)
                c[v] += 1
                candidates.add(tuple(c))
        gens = []
        for c in candidates - kept:
            below = []
            for v in range(r):
                if c[v]:
                    d = list(c)
                    d[v] -= 1
                    below.append(tuple(d) in kept)
            if all(below):
                gens.append(c)
        ring = cls(names, mu, gens)
        if ring._standard_set != frozenset(kept):
            raise ValueError('monomials do not form an order ideal')
        return ring

    @property
    def names(self):
        return self._names

    @property
    def r(self):
        return len(self._names)

    @property
    def mu(self):
        return self._mu

    @property
    def ideal(self):
        return self._ideal

    def vanishes(self, exps):
        """True when the parameter monomial ``exps`` is zero in the ring."""
        return tuple(exps) not in self._standard_set

    def standard_monomials(self):
        """Surviving monomials, in ascending graded order."""
        return self._standard

    def dimension(self):
        return len(self._standard)

    def unit_monomial(self):
        return (0,) * len(self._names)

    def is_field(self):
        return len(self._standard) == 1

    def truncated(self, count):
        """Quotient ring keeping only the first ``count`` standard monomials."""
        return ParamRing.from_standard(self._names, self._standard[:count])

    def extension_chain(self):
        """Small extensions climbing from QQ up to this ring.

        Returns:
            list: :class:`SmallExtension` objects, lowest first. Each kernel
            generator is the newest standard monomial.
        """
        chain = []
        for count in range(1, len(self._standard)):
            chain.append(SmallExtension(self.truncated(count + 1),
                                        self.truncated(count),
                                        self._standard[count]))
        return chain

    def __eq__(self, other):
        return (isinstance(other, ParamRing) and self._names == other._names
                and self._standard_set == other._standard_set)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._names, self._standard_set))

    def __repr__(self):
        return 'ParamRing(names={0}, mu={1}, ideal={2})'.format(
            self._names, self._mu, self._ideal)


class SmallExtension(object):
    """Surjection total -> quotient whose kernel is spanned by one monomial.

    Attributes:
        total (ParamRing): the ring A~.
        quotient (ParamRing): the ring A.
        kernel_generator (tuple): exponent vector of tau.
    """

    def __init__(self, total, quotient, kernel_generator):
        kernel_generator = tuple(kernel_generator)
        if total.names != quotient.names:
            raise ExtensionMismatch('parameter names differ: {0} vs {1}'.format(
                total.names, quotient.names))
        extra = set(total.standard_monomials()) - set(quotient.standard_monomials())
        if extra != {kernel_generator} or not set(quotient.standard_monomials()) <= set(
                total.standard_monomials()):
            raise ExtensionMismatch('kernel of {0} -> {1} is not spanned by {2}'.format(
                total, quotient, kernel_generator))
        for v in range(total.r):
            shifted = list(kernel_generator)
            shifted[v] += 1
            if not total.vanishes(shifted):
                raise ExtensionMismatch('maximal ideal does not annihilate {0}'.format(
                    kernel_generator))
        self.total = total
        self.quotient = quotient
        self.kernel_generator = kernel_generator

    def __repr__(self):
        return 'SmallExtension({0} -> {1}, tau={2})'.format(
            self.total, self.quotient, self.kernel_generator)


class VariableContext(object):
    """Names and truncation rules shared by a family of polynomials.

    Args:
        variables (tuple): chart variable names.
        ring (ParamRing): parameter ring, defaults to QQ.
        window (int): optional exponent window D for chart variables.
        strict (bool): raise :class:`WindowOverflow` instead of dropping terms
            outside the window.
        label: chart label, contexts of different charts never compare equal.
    """

    def __init__(self, variables, ring=None, window=None, strict=False, label=None):
        self._variables = tuple(variables)
        self._ring = ring if ring is not None else ParamRing()
        self._window = None if window is None else int(window)
        self._strict = bool(strict)
        self._label = label
        self._index = dict((name, k) for k, name in enumerate(self._variables + self._ring.names))
        if len(self._index) != len(self._variables) + self._ring.r:
            raise ValueError('duplicate variable names in {0} + {1}'.format(
                self._variables, self._ring.names))
        self._key = (self._variables, self._ring, self._window, self._strict, self._label)

    @property
    def variables(self):
        return self._variables

    @property
    def ring(self):
        return self._ring

    @property
    def window(self):
        return self._window

    @property
    def strict(self):
        return self._strict

    @property
    def label(self):
        return self._label

    @property
    def nvars(self):
        return len(self._variables)

    @property
    def size(self):
        return len(self._variables) + self._ring.r

    @property
    def names(self):
        return self._variables + self._ring.names

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ContextMismatch('{0!r} is not a variable of {1}'.format(name, self))

    def has(self, name):
        return name in self._index

    def with_ring(self, ring):
        return VariableContext(self._variables, ring, self._window, self._strict, self._label)

    def base(self):
        """The same context without parameters."""
        return self.with_ring(ParamRing())

    def admits(self, exps):
        """Decides whether a term with exponent vector ``exps`` survives."""
        n = len(self._variables)
        if self._ring.r and self._ring.vanishes(exps[n:]):
            return False
        if self._window is not None:
            for e in exps[:n]:
                if e > self._window or e < -self._window:
                    if self._strict:
                        raise WindowOverflow('exponent {0} leaves window [-{1}, {1}]'.format(
                            e, self._window))
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, VariableContext) and self._key == other._key

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return 'VariableContext({0}, params={1}, label={2!r})'.format(
            self._variables, self._ring.names, self._label)


class LaurentPoly(object):
    """Exact Laurent polynomial; immutable.

    Args:
        ctx (VariableContext): the ring context.
        terms (dict): exponent vector (chart exponents then parameter
            exponents) -> coefficient.
    """
    __slots__ = ('_ctx', '_terms', '_hash')

    def __init__(self, ctx, terms=None, _trusted=False):
        self._ctx = ctx
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean = {}
        size = ctx.size
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != size:
                raise ValueError('exponent vector {0} does not fit {1}'.format(exps, ctx))
            if min(exps[ctx.nvars:] + (0,)) < 0:
                raise ValueError('negative parameter exponent in {0}'.format(exps))
            coef = to_rational(coef)
            if coef and ctx.admits(exps):
                clean[exps] = clean.get(exps, ZERO) + coef
        self._terms = dict((m, c) for m, c in clean.items() if c)

    # constructors

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {}, _trusted=True)

    @classmethod
    def constant(cls, ctx, value):
        value = to_rational(value)
        if not value:
            return cls.zero(ctx)
        return cls(ctx, {(0,) * ctx.size: value})

    @classmethod
    def one(cls, ctx):
        return cls.constant(ctx, ONE)

    @classmethod
    def variable(cls, ctx, name, power=1):
        exps = [0] * ctx.size
        exps[ctx.index(name)] = power
        return cls(ctx, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, ctx, exps, coef=ONE):
        exps = tuple(exps)
        if len(exps) == ctx.nvars:
            exps = exps + (0,) * ctx.ring.r
        return cls(ctx, {exps: coef})

    # accessors

    @property
    def ctx(self):
        return self._ctx

    def terms(self):
        """Copy of the term map."""
        return dict(self._terms)

    def items(self):
        """Terms sorted by decreasing monomial order."""
        n = self._ctx.nvars
        return sorted(self._terms.items(), key=lambda mc: _term_key(mc[0], n), reverse=True)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    __nonzero__ = __bool__

    def __len__(self):
        return len(self._terms)

    def max_abs_exponent(self):
        n = self._ctx.nvars
        return max([abs(e) for m in self._terms for e in m[:n]] + [0])

    def parameter_degree(self):
        """Smallest total parameter degree among the terms, None for zero."""
        n = self._ctx.nvars
        if not self._terms:
            return None
        return min(sum(m[n:]) for m in self._terms)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other._ctx != self._ctx:
                raise ContextMismatch('{0} vs {1}'.format(self._ctx, other._ctx))
            return other
        return LaurentPoly.constant(self._ctx, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            if m in terms:
                s = terms[m] + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
            else:
                terms[m] = c
        return LaurentPoly(self._ctx, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self._ctx, dict((m, -c) for m, c in self._terms.items()),
                           _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, value):
        value = to_rational(value)
        if not value:
            return LaurentPoly.zero(self._ctx)
        return LaurentPoly(self._ctx, dict((m, c * value) for m, c in self._terms.items()),
                           _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        other = self._coerce(other)
        ctx = self._ctx
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if not ctx.admits(m):
                    continue
                if m in terms:
                    s = terms[m] + c1 * c2
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
                else:
                    terms[m] = c1 * c2
        return LaurentPoly(ctx, terms, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one(self._ctx)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self):
        """Formal inverse of (unit monomial) + (parameter-nilpotent part).

        Raises:
            NoInverse: if the parameter-free part is not a single term.
        """
        n = self._ctx.nvars
        lead = [(m, c) for m, c in self._terms.items() if not any(m[n:])]
        if len(lead) != 1:
            raise NoInverse('{0} is not a unit'.format(self))
        m0, c0 = lead[0]
        lead_inv = LaurentPoly(self._ctx, {tuple(-e for e in m0[:n]) + m0[n:]: ONE / c0})
        nil = (self - LaurentPoly(self._ctx, {m0: c0})) * lead_inv
        result = LaurentPoly.one(self._ctx)
        power = LaurentPoly.one(self._ctx)
        for _ in range(self._ctx.ring.mu + 1):
            power = -(power * nil)
            if power.is_zero():
                break
            result = result + power
        return result * lead_inv

    def diff(self, k):
        """Partial derivative with respect to chart variable ``k``."""
        terms = {}
        for m, c in self._terms.items():
            e = m[k]
            if e:
                d = list(m)
                d[k] = e - 1
                terms[tuple(d)] = c * e
        return LaurentPoly(self._ctx, terms, _trusted=True)

    def divide_by_variable(self, k):
        """Exact division by the chart variable ``k`` (Laurent shift)."""
        terms = {}
        for m, c in self._terms.items():
            d = list(m)
            d[k] -= 1
            terms[tuple(d)] = c
        return LaurentPoly(self._ctx, terms)

    # parameter handling

    def coefficient_of(self, param_exps, ctx=None):
        """Coefficient of a parameter monomial, as a parameter-free polynomial.

        Args:
            param_exps (tuple): exponent vector of the parameter monomial.
            ctx (VariableContext): target context with the same chart
                variables, defaults to the base of ``self.ctx``.
        """
        n = self._ctx.nvars
        param_exps = tuple(param_exps)
        target = ctx if ctx is not None else self._ctx.base()
        pad = (0,) * target.ring.r
        terms = dict((m[:n] + pad, c) for m, c in self._terms.items() if m[n:] == param_exps)
        return LaurentPoly(target, terms)

    def at_zero(self, ctx=None):
        """Sets every parameter to zero."""
        return self.coefficient_of(self._ctx.ring.unit_monomial(), ctx)

    def parameter_support(self):
        n = self._ctx.nvars
        return sorted(set(m[n:] for m in self._terms), key=monomial_key)

    def recast(self, ctx, drop_missing=False):
        """Moves the polynomial into another context, matching variables by name.

        Args:
            ctx (VariableContext): the target context.
            drop_missing (bool): drop terms carrying a parameter that ``ctx``
                lacks instead of failing; this sets such parameters to zero.

        Raises:
            ContextMismatch: if a needed variable is missing from ``ctx``.
        """
        if ctx == self._ctx:
            return self
        names = self._ctx.names
        nvars = self._ctx.nvars
        placement = [ctx.index(name) if ctx.has(name) else None for name in names]
        terms = {}
        for m, c in self._terms.items():
            exps = [0] * ctx.size
            keep = True
            for k, e in enumerate(m):
                if not e:
                    continue
                slot = placement[k]
                if slot is None:
                    if drop_missing and k >= nvars:
                        keep = False
                        break
                    raise ContextMismatch('variable {0!r} missing from {1}'.format(names[k], ctx))
                exps[slot] = e
            if keep:
                exps = tuple(exps)
                terms[exps] = terms.get(exps, ZERO) + c
        return LaurentPoly(ctx, terms)

    # comparisons

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._ctx == other._ctx and self._terms == other._terms
        try:
            value = to_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self == LaurentPoly.constant(self._ctx, value)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._ctx, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from pdeform.utils.grammar_util import format_poly
        return 'LaurentPoly({0})'.format(format_poly(self))

    def __str__(self):
        from pdeform.utils.grammar_util import format_poly
        return format_poly(self)


def _term_key(m, n):
    params, chart = m[n:], m[:n]
    return (sum(params), params, sum(chart), chart)


class Substitution(object):
    """Composition of polynomials with a tuple of images.

    Sends chart variable ``k`` of ``source`` to ``images[k]``, a polynomial in
    ``target``. Parameters are matched by name. Powers and monomial images
    are memoized, so one substitution should be reused across many calls.

    Args:
        source (VariableContext): context of the polynomials to compose.
        target (VariableContext): context of the images.
        images (tuple): one :class:`LaurentPoly` in ``target`` per chart
            variable of ``source``.
    """

    def __init__(self, source, target, images):
        images = tuple(images)
        if len(images) != source.nvars:
            raise ContextMismatch('{0} images for {1} variables'.format(len(images), source.nvars))
        for image in images:
            if image.ctx != target:
                raise ContextMismatch('image {0} is not in {1}'.format(image, target))
        self._source = source
        self._target = target
        self._images = images
        self._params = [target.index(name) if target.has(name) else None
                        for name in source.ring.names]
        self._powers = {}
        self._monomials = {}

    @property
    def source(self):
        return self._source

    @property
    def target(self):
        return self._target

    @property
    def images(self):
        return self._images

    def _power(self, k, e):
        key = (k, e)
        if key not in self._powers:
            if e == 1:
                self._powers[key] = self._images[k]
            elif e == -1:
                self._powers[key] = self._images[k].inverse()
            else:
                half = self._power(k, e // 2 if e > 0 else -((-e) // 2))
                rest = self._power(k, 1 if e > 0 else -1) if e % 2 else None
                value = half * half
                if rest is not None:
                    value = value * rest
                self._powers[key] = value
        return self._powers[key]

    def _chart_monomial(self, chart_exps):
        if chart_exps not in self._monomials:
            value = LaurentPoly.one(self._target)
            for k, e in enumerate(chart_exps):
                if e:
                    value = value * self._power(k, e)
            self._monomials[chart_exps] = value
        return self._monomials[chart_exps]

    def __call__(self, poly):
        if poly.ctx != self._source:
            raise ContextMismatch('{0} is not in {1}'.format(poly, self._source))
        n = self._source.nvars
        target = self._target
        terms = {}
        for m, c in poly._terms.items():
            shift = [0] * target.size
            for k, e in enumerate(m[n:]):
                if e:
                    slot = self._params[k]
                    if slot is None:
                        raise ContextMismatch('parameter {0!r} missing from {1}'.format(
                            self._source.ring.names[k], target))
                    shift[slot] = e
            image = self._chart_monomial(m[:n])
            for mm, cc in image._terms.items():
                exps = tuple(a + b for a, b in zip(mm, shift))
                if not target.admits(exps):
                    continue
                value = terms.get(exps, ZERO) + c * cc
                if value:
                    terms[exps] = value
                else:
                    terms.pop(exps, None)
        return LaurentPoly(target, terms, _trusted=True)
