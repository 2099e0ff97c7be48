'''
==================================
Example Code for Lifting
==================================
'''

#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from argparse import ArgumentParser

from pdeform.deformation.obstruction import first_order_class
from pdeform.deformation.obstruction import lift
from pdeform.experiments.scenario import load_scenario
from pdeform.utils.laurent_util import ParamRing


if __name__ == '__main__':

    parser = ArgumentParser(description='First-order class and order-by-order lifts')
    parser.add_argument('-o', '--order', default=3, type=int,
                        help='order of the parameter ring to lift to')
    parser.add_argument('--seed', default=0, type=int,
                        help='seed of the lift choices')
    args = parser.parse_args()

    slide = load_scenario('point_in_plane').deformations['slide']
    print('\n'.join(first_order_class(slide).lines()))

    ring = ParamRing(slide.ring.names, args.order, slide.ring.ideal)
    outcome = lift(slide, ring, seed=args.seed)
    print('\n'.join(outcome.lines()))

    # the synthetic obstructed datum stops at the first extension
    toy = load_scenario('obstructed').deformations['toy']
    outcome = lift(toy, ParamRing(toy.ring.names, 2, toy.ring.ideal), seed=args.seed)
    print('\n'.join(outcome.lines()))
