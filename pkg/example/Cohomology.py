'''
====================================
Example Code for Hypercohomology
====================================
'''

#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from argparse import ArgumentParser
from time import time

from pdeform.cohomology.hypercohomology import TotalComplex
from pdeform.cohomology.hypercohomology import hypercohomology
from pdeform.cohomology.hypercohomology import tangent_total
from pdeform.complexes.operators import single_slot_complex
from pdeform.complexes.sheaf_slot import TangentSlot
from pdeform.experiments.scenario import load_scenario


if __name__ == '__main__':

    parser = ArgumentParser(description='Hypercohomology of the Lichnerowicz complex')
    parser.add_argument('-w', '--window', default=3, type=int,
                        help='exponent window')
    args = parser.parse_args()

    # global vector fields on P^1: dimension 3 in degree 0, nothing in degree 1
    p1 = load_scenario('p1_zero').atlases['P1']
    t1 = time()
    report = hypercohomology(tangent_total(p1), degrees=(0, 1), window=args.window)
    print('\n'.join(report.lines()))
    print('P1 computed in {0:.2f} s'.format(time() - t1))

    # sections of wedge^2 T on P^2, that is O(3): ten cubic monomials
    p2 = load_scenario('p2').atlases['P2']
    total = TotalComplex(single_slot_complex(TangentSlot(p2, 2)), 'S')
    report = hypercohomology(total, degrees=(0,), window=args.window)
    print('\n'.join(report.lines(with_basis=False)))
