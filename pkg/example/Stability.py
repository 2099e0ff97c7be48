'''
=======================================
Example Code for Stability Lifts
=======================================
'''

#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from argparse import ArgumentParser
from time import time

from pdeform.deformation.stability import costability_lift
from pdeform.deformation.stability import stability_lift
from pdeform.experiments.scenario import load_scenario
from pdeform.utils.laurent_util import ParamRing


if __name__ == '__main__':

    parser = ArgumentParser(description='Lift a deformation of the target of a line in P2')
    parser.add_argument('-o', '--order', default=3, type=int,
                        help='order of the parameter ring')
    parser.add_argument('--seed', default=2, type=int,
                        help='seed of the lift choices')
    args = parser.parse_args()

    scenario = load_scenario('line_in_p2')
    pencil = scenario.deformations['pencil']
    pencil = pencil.recast(ParamRing(pencil.ring.names, args.order, pencil.ring.ideal))
    t1 = time()
    certificate = stability_lift(scenario.maps['f'], pencil, hypotheses='report',
                                 seed=args.seed)
    print('\n'.join(certificate.lines()))
    print('stability lift in {0:.2f} s'.format(time() - t1))

    scenario = load_scenario('costability_line')
    certificate = costability_lift(scenario.maps['f'], scenario.deformations['shift'],
                                   hypotheses='report', seed=args.seed)
    print('\n'.join(certificate.lines()))
