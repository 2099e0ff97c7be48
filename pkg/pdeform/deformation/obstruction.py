#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""First-order classes, obstruction classes and lifts along small extensions.

For a datum with fixed source and target the first-order class lives in
``H^0(f*T)`` and obstructions in ``H^1(f*T)``; with a fixed target the
first-order class lives in PD and obstructions in PD^1.

A lift step over ``A~ -> A`` with kernel ``tau``:

1. lift the datum to ``A~`` (canonical recast, seeded perturbation);
2. read the residual cochains off the lift and classify them;
3. if the class vanishes, solve for the correction and apply it;
4. re-validate every identity over ``A~`` by substitution.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

from sympy import QQ

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cech_cochain import nerve
from pdeform.cohomology.cochain_space import element_scale
from pdeform.cohomology.hypercohomology import cohomology_problem
from pdeform.cohomology.hypercohomology import pullback_total
from pdeform.cohomology.pd_space import DeformationSpace
from pdeform.cohomology.pd_space import MapOperators
from pdeform.cohomology.pd_space import pd1_coboundary
from pdeform.cohomology.pd_space import pd1_problem
from pdeform.cohomology.pd_space import pd1_source_blocks
from pdeform.cohomology.pd_space import pd_element
from pdeform.cohomology.pd_space import pd_problem
from pdeform.cohomology.quotient import describe_element
from pdeform.cohomology.quotient import solve_preimage
from pdeform.deformation.datum import DeformationDatum
from pdeform.deformation.datum import add_to_atlas
from pdeform.deformation.datum import add_to_components
from pdeform.deformation.datum import datum_lines
from pdeform.deformation.datum import extension_path
from pdeform.deformation.datum import lift_map
from pdeform.deformation.datum import make_rng
from pdeform.deformation.datum import require_valid
from pdeform.deformation.datum import validate_deformation
from pdeform.deformation.residuals import fixed_both_tuple
from pdeform.deformation.residuals import fixed_target_tuple
from pdeform.deformation.residuals import vector_of
from pdeform.geometry.atlas import ValidationReport
from pdeform.utils import gconfig
from pdeform.utils.errors import InvalidDatum
from pdeform.utils.errors import InvariantViolation
from pdeform.utils.errors import WindowInsufficient
from pdeform.utils.errors import WrongRing
from pdeform.utils.laurent_util import ParamRing

LOGGER = logging.getLogger(__name__)

OBSTRUCTED_MODES = ('fixed_both', 'fixed_target')


def _check_mode(mode):
    if mode not in OBSTRUCTED_MODES:
        raise InvalidDatum('mode {0} has no obstruction theory here; use {1}'.format(
            mode, ' or '.join(OBSTRUCTED_MODES)))


class _Spaces(object):
    """Operators and the two groups of one mode, computed on demand."""

    def __init__(self, base, mode, window=None, audit=True, njobs=None):
        self.base = base
        self.mode = mode
        self.window = gconfig.window if window is None else window
        self.audit = audit
        self.njobs = njobs
        self.ops = MapOperators(base)
        self.total = pullback_total(self.ops.fmap, 'P')
        self._spaces = {}

    def _space(self, which):
        if which not in self._spaces:
            if which == 'first' and self.mode == 'fixed_both':
                problem, name = cohomology_problem(self.total, 0, self.njobs), 'H0(f*T)'
            elif which == 'first':
                problem, name = pd_problem(self.ops.fmap, self.njobs, self.ops), 'PD'
            elif self.mode == 'fixed_both':
                problem, name = cohomology_problem(self.total, 1, self.njobs), 'H1(f*T)'
            else:
                problem, name = pd1_problem(self.ops.fmap, self.njobs, self.ops), 'PD1'
            result = problem.compute(self.window, self.audit)
            self._spaces[which] = DeformationSpace(name, problem, result)
        return self._spaces[which]

    @property
    def first(self):
        return self._space('first')

    @property
    def second(self):
        return self._space('second')


# first order

def first_order_ring(name='eps'):
    """``QQ[eps]/(eps^2)``."""
    return ParamRing((name,), 1)


def _parameter_part(datum, ops, exps):
    """``(v, rho, lam)`` of the ``exps`` coefficient of a datum."""
    base = ops.fmap
    src = base.source
    tau_values, rho_values, lam_values = {}, {}, {}
    for i in range(len(src)):
        ctx = src.ctx(i)
        polys = [c.coefficient_of(exps, ctx) for c in datum.components[i]]
        tau_values[(i,)] = vector_of(polys, ctx, base.frame(i))
        lam_values[(i,)] = -datum.source.bivector(i).map_coefficients(
            lambda c: c.coefficient_of(exps, ctx), ctx)
    for (i, j) in nerve(src)(1):
        ctx = src.ctx(j)
        polys = [-c.coefficient_of(exps, ctx) for c in datum.source.transitions[(i, j)]]
        rho_values[(i, j)] = vector_of(polys, ctx, src.frame(i)).substitute(src.pull(j, i))
    return (CechCochain(ops.pullback(1), 0, tau_values),
            CechCochain(ops.tangent(1), 1, rho_values),
            CechCochain(ops.tangent(2), 0, lam_values))


class FirstOrderClass(object):
    """A first-order class with its representative and coordinates."""

    def __init__(self, mode, element, coordinates, space):
        self.mode = mode
        self.element = element
        self.coordinates = coordinates
        self.space = space

    @property
    def is_zero(self):
        return not any(self.coordinates)

    def lines(self):
        out = ['FIRST_ORDER mode={0} space={1} dim={2}'.format(
            self.mode, self.space.name, self.space.dimension)]
        out.append('coordinates ({0})'.format(', '.join(str(c) for c in self.coordinates)))
        out.extend(describe_element(self.element, '  rep'))
        return out

    def as_dict(self):
        return {'mode': self.mode, 'space': self.space.name,
                'coordinates': [str(c) for c in self.coordinates],
                'representative': describe_element(self.element, '')}


def _element_for(spaces, parts):
    tau, rho, lam = parts
    if spaces.mode == 'fixed_both':
        return spaces.total.element(OrderedDict([((1, 0), tau)]))
    return pd_element(spaces.ops, tau, rho, lam)


def first_order_class(datum, mode=None, window=None, audit=True, njobs=None):
    """Class of a datum over ``QQ[eps]/(eps^2)``.

    Args:
        mode (str): overrides ``datum.mode``. A fixed_both datum read in
            fixed_target mode gives a class with ``rho = lam = 0``.

    Raises:
        WrongRing: unless the ring has one parameter and order one.
        InvalidDatum: if the datum fails validation.
    """
    ring = datum.ring
    if ring.r != 1 or ring.dimension() != 2:
        raise WrongRing('first-order classes need QQ[eps]/(eps^2), got {0}'.format(ring))
    mode = mode or datum.mode
    _check_mode(mode)
    require_valid(datum)
    spaces = _Spaces(datum.base, mode, window, audit, njobs)
    element = _element_for(spaces, _parameter_part(datum, spaces.ops, (1,)))
    return FirstOrderClass(mode, element, spaces.first.classify(element), spaces.first)


def characteristic_map(datum, window=None, audit=True, njobs=None):
    """Classes of the first-order directions of a family with ``mu = 1``.

    Returns:
        OrderedDict: parameter name -> coordinate tuple in PD (or ``H^0(f*T)``
        for fixed_both families).
    """
    ring = datum.ring
    if ring.dimension() != ring.r + 1:
        raise WrongRing('the characteristic map needs a ring with mu = 1, got {0}'.format(ring))
    _check_mode(datum.mode)
    require_valid(datum)
    spaces = _Spaces(datum.base, datum.mode, window, audit, njobs)
    out = OrderedDict()
    for v, name in enumerate(ring.names):
        exps = tuple(1 if k == v else 0 for k in range(ring.r))
        element = _element_for(spaces, _parameter_part(datum, spaces.ops, exps))
        out[name] = spaces.first.classify(element)
    return out


def datum_from_class(base, tau=None, rho=None, lam=None, mode='fixed_target', name=None,
                     parameter='eps'):
    """A datum over ``QQ[eps]/(eps^2)`` realising the class ``(tau, rho, lam)``.

    ``Phi = f + eps tau``, ``phi_ij = phi_ij - eps rho_ij`` and
    ``Lambda = Lambda - eps lam``; reverse transitions are rebuilt.
    """
    _check_mode(mode)
    ring = first_order_ring(parameter)
    datum = DeformationDatum.trivial(base, ring, mode, name)
    fmap = datum.fmap
    eps = (1,)
    if tau is not None:
        fmap = add_to_components(fmap, tau, eps)
    if mode == 'fixed_target' and (rho is not None or lam is not None):
        source = add_to_atlas(fmap.source, base.source, eps,
                              u=-rho if rho is not None else None,
                              c=-lam if lam is not None else None)
        fmap = fmap.with_data(source=source)
    return datum.with_fmap(fmap)


# obstructions

class ObstructionClass(object):
    """Obstruction of a lift step.

    Attributes:
        raw (OrderedDict): the residual tuple of the chosen lift.
        coordinates (tuple): its class in ``space``.
        lifted (PoissonMapData): the lift over ``extension.total``.
    """

    def __init__(self, datum, extension, mode, raw, coordinates, space, lifted):
        self.datum = datum
        self.extension = extension
        self.mode = mode
        self.raw = raw
        self.coordinates = coordinates
        self.space = space
        self.lifted = lifted

    @property
    def is_zero(self):
        return not any(self.coordinates)

    def lines(self):
        out = ['OBSTRUCTION {0} mode={1} tau={2} space={3} dim={4}'.format(
            self.datum.name, self.mode, list(self.extension.kernel_generator), self.space.name,
            self.space.dimension)]
        out.append('coordinates ({0})'.format(', '.join(str(c) for c in self.coordinates)))
        out.append('verdict {0}'.format('zero' if self.is_zero else 'NONZERO'))
        out.extend(describe_element(self.raw, '  residual'))
        return out

    def as_dict(self):
        return {'datum': self.datum.name, 'mode': self.mode,
                'tau': list(self.extension.kernel_generator),
                'space': self.space.name, 'zero': self.is_zero,
                'coordinates': [str(c) for c in self.coordinates],
                'residual': describe_element(self.raw, '')}


class LiftCertificate(object):
    """A lifted datum with its validation and the corrections applied per step."""

    def __init__(self, datum, report, steps=None, hypotheses=None):
        self.datum = datum
        self.report = report
        self.steps = list(steps or [])
        self.hypotheses = hypotheses

    @property
    def passed(self):
        return self.report.passed

    def lines(self):
        out = ['CERTIFICATE {0} mode={1} ring={2}'.format(
            self.datum.name, self.datum.mode, list(self.datum.ring.standard_monomials()))]
        for n, step in enumerate(self.steps):
            out.append('step {0} tau={1}'.format(n, list(step['tau'])))
            out.extend(describe_element(step['correction'], '  correction'))
        if self.hypotheses is not None:
            out.extend(self.hypotheses.lines())
        out.extend(datum_lines(self.datum))
        out.extend(self.report.lines())
        out.append('verdict {0}'.format('PASS' if self.passed else 'FAIL'))
        return out

    def as_dict(self):
        return {'datum': self.datum.name, 'mode': self.datum.mode, 'passed': self.passed,
                'ring': [list(m) for m in self.datum.ring.standard_monomials()],
                'steps': [{'tau': list(s['tau']),
                           'correction': describe_element(s['correction'], '')}
                          for s in self.steps],
                'hypotheses': self.hypotheses.as_dict() if self.hypotheses else None,
                'datum_text': datum_lines(self.datum),
                'checks': self.report.as_dict()}


def _sides(mode):
    return ('map',) if mode == 'fixed_both' else ('map', 'source')


def obstruction_class(datum, extension, seed=None, perturb=True, window=None, audit=True,
                      njobs=None, spaces=None):
    """Obstruction to lifting ``datum`` along ``extension``.

    Raises:
        InvalidDatum: for modes without obstruction theory or invalid data.
        ExtensionMismatch: if the datum does not live on ``extension.quotient``.
        NotACocycle: if the residual tuple violates its cocycle relations.
    """
    _check_mode(datum.mode)
    require_valid(datum)
    spaces = spaces or _Spaces(datum.base, datum.mode, window, audit, njobs)
    rng = make_rng(seed) if perturb else None
    lifted = lift_map(datum.fmap, extension, _sides(datum.mode), rng)
    tau = extension.kernel_generator
    if datum.mode == 'fixed_both':
        raw = fixed_both_tuple(lifted, spaces.ops, spaces.total, tau)
    else:
        raw = fixed_target_tuple(lifted, spaces.ops, tau)
    coordinates = spaces.second.classify(raw)
    LOGGER.info('obstruction of %s at tau=%s: %s', datum.name, tau, coordinates)
    return ObstructionClass(datum, extension, datum.mode, raw, coordinates, spaces.second,
                            lifted)


def _correct(obstruction, spaces):
    """Solves for and applies the correction of a vanishing obstruction."""
    ops, tau = spaces.ops, obstruction.extension.kernel_generator
    lifted = obstruction.lifted
    if obstruction.mode == 'fixed_both':
        total = spaces.total
        correction = solve_preimage(lambda s: total.differential(s, 0), total.blocks(0),
                                    obstruction.raw, spaces.window, njobs=spaces.njobs)
        if correction is None:
            raise WindowInsufficient('no correction found for a vanishing obstruction')
        lifted = add_to_components(lifted, total.part(correction, 1, 0), tau)
    else:
        correction = solve_preimage(lambda s: pd1_coboundary(ops, s), pd1_source_blocks(ops),
                                    element_scale(obstruction.raw, QQ(-1)), spaces.window,
                                    njobs=spaces.njobs)
        if correction is None:
            raise WindowInsufficient('no correction found for a vanishing obstruction')
        lifted = add_to_components(lifted, correction['a'], tau)
        source = add_to_atlas(lifted.source, ops.fmap.source, tau, correction['u'],
                              correction['c'])
        lifted = lifted.with_data(source=source)
    return lifted, correction


def lift_step(datum, extension, seed=None, perturb=True, window=None, audit=True, njobs=None,
              spaces=None):
    """One lift along a small extension.

    Returns:
        LiftCertificate or ObstructionClass: the certificate when the
        obstruction vanishes, else the nonzero obstruction.

    Raises:
        InvariantViolation: if the corrected lift fails validation.
    """
    spaces = spaces or _Spaces(datum.base, datum.mode, window, audit, njobs)
    obstruction = obstruction_class(datum, extension, seed, perturb, spaces=spaces)
    if not obstruction.is_zero:
        return obstruction
    lifted, correction = _correct(obstruction, spaces)
    result = datum.with_fmap(lifted, extension.total)
    report = validate_deformation(result)
    if not report.passed:
        raise InvariantViolation('corrected lift of {0} fails: {1}'.format(
            datum.name, report.failures()[0]))
    step = {'tau': extension.kernel_generator, 'correction': correction}
    return LiftCertificate(result, report, [step])


def lift(datum, ring, seed=None, perturb=True, window=None, audit=True, njobs=None):
    """Lifts ``datum`` step by step up to ``ring``.

    Returns:
        LiftCertificate or ObstructionClass: the final certificate, or the
        first nonzero obstruction met.
    """
    spaces = _Spaces(datum.base, datum.mode, window, audit, njobs)
    steps = []
    current = datum
    report = ValidationReport('deformation {0}'.format(datum.name))
    for n, extension in enumerate(extension_path(datum.ring, ring)):
        step_seed = None if seed is None else seed + n
        outcome = lift_step(current, extension, step_seed, perturb, spaces=spaces)
        if isinstance(outcome, ObstructionClass):
            return outcome
        steps.extend(outcome.steps)
        current, report = outcome.datum, outcome.report
    if not steps:
        report = require_valid(current)
    return LiftCertificate(current, report, steps)

