#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is for testing first-order classes, obstructions and lifts
"""
import pytest

from pdeform.cohomology.cech_cochain import CechCochain
from pdeform.cohomology.cochain_space import element_sub
from pdeform.cohomology.pd_space import MapOperators
from pdeform.deformation.datum import DeformationDatum
from pdeform.deformation.datum import datum_lines
from pdeform.deformation.datum import extension_path
from pdeform.deformation.datum import validate_deformation
from pdeform.deformation.obstruction import LiftCertificate
from pdeform.deformation.obstruction import ObstructionClass
from pdeform.deformation.obstruction import characteristic_map
from pdeform.deformation.obstruction import datum_from_class
from pdeform.deformation.obstruction import first_order_class
from pdeform.deformation.obstruction import lift
from pdeform.deformation.obstruction import obstruction_class
from pdeform.experiments.scenario import load_scenario
from pdeform.geometry.multivector import Multivector
from pdeform.utils.errors import ExtensionMismatch
from pdeform.utils.errors import InvalidDatum
from pdeform.utils.errors import WrongRing
from pdeform.utils.laurent_util import LaurentPoly
from pdeform.utils.laurent_util import ParamRing


def _slide():
    return load_scenario('point_in_plane').deformations['slide']


def test_slide_is_valid():
    slide = _slide()
    assert validate_deformation(slide).passed
    assert datum_lines(slide, ring_name='E')[:4] == [
        '[deformation slide]', 'map = i', 'ring = E', 'mode = fixed_both']
    assert ('component', 'p') in slide.corrections()


def test_first_order_class_of_slide():
    slide = _slide()
    fixed = first_order_class(slide)
    assert fixed.space.name == 'H0(f*T)'
    assert fixed.space.dimension == 1
    assert not fixed.is_zero
    free_source = first_order_class(slide, mode='fixed_target')
    assert free_source.space.name == 'PD'
    assert not free_source.is_zero
    assert list(characteristic_map(slide).keys()) == ['eps']


def test_class_round_trip():
    base = _slide().base
    ops = MapOperators(base)
    along_y = Multivector.basis(base.source.ctx(0), base.frame(0), (1,), 3)
    datum = datum_from_class(base, tau=CechCochain(ops.pullback(1), 0, {(0,): along_y}),
                             mode='fixed_both')
    assert first_order_class(datum).coordinates == tuple(
        3 * c for c in first_order_class(_slide()).coordinates)


def test_invalid_data_are_rejected():
    slide = _slide()
    eps = LaurentPoly.variable(slide.source.ctx(0), 'eps')
    off_locus = DeformationDatum('off', slide.base, slide.ring, 'fixed_both',
                                 components={0: (eps, LaurentPoly.zero(slide.source.ctx(0)))})
    assert not validate_deformation(off_locus).passed
    with pytest.raises(InvalidDatum):
        first_order_class(off_locus)
    with pytest.raises(InvalidDatum):
        first_order_class(slide, mode='free')
    with pytest.raises(WrongRing):
        first_order_class(slide.recast(ParamRing(('eps',), 2)))
    with pytest.raises(InvalidDatum):
        DeformationDatum('odd', slide.base, slide.ring, 'sideways')


def test_slide_lifts_to_second_order():
    slide = _slide()
    target = ParamRing(('eps',), 2)
    assert len(extension_path(slide.ring, target)) == 1
    for seed in (0, 1, 7):
        outcome = lift(slide, target, seed=seed)
        assert isinstance(outcome, LiftCertificate)
        assert outcome.passed
        assert outcome.datum.ring == target
        assert outcome.lines()[-1] == 'verdict PASS'
    assert lift(slide, target, perturb=False).passed
    with pytest.raises(ExtensionMismatch):
        extension_path(target, ParamRing(('t',), 3))


def test_obstructed_toy():
    toy = load_scenario('obstructed').deformations['toy']
    assert validate_deformation(toy).passed
    outcome = lift(toy, ParamRing(('t',), 2))
    assert isinstance(outcome, ObstructionClass)
    assert not outcome.is_zero
    assert outcome.space.name == 'H1(f*T)'
    assert 'verdict NONZERO' in outcome.lines()
    assert outcome.as_dict()['zero'] is False


def _obstruction_data():
    """Every bundled datum with an obstruction theory."""
    data = [load_scenario('obstructed').deformations['toy'], _slide()]
    chain = load_scenario('factor_chain').deformations
    data.extend([chain['upsilon'], chain['phi']])
    return data


def test_obstruction_does_not_depend_on_lift_choice():
    for datum in _obstruction_data():
        ring = datum.ring
        extension = extension_path(ring, ParamRing(ring.names, ring.mu + 1))[0]
        first = obstruction_class(datum, extension, seed=0)
        for seed in range(1, 11):
            other = obstruction_class(datum, extension, seed=seed)
            assert other.coordinates == first.coordinates
            difference = element_sub(first.raw, other.raw)
            assert not any(first.space.classify(difference))
        assert first.is_zero == (datum.name != 'toy')
