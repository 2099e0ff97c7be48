'''
=======================================
Example Code for PD and PD1 of a Map
=======================================
'''

#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from argparse import ArgumentParser

from pdeform.cohomology.exactness import exactness_audit
from pdeform.cohomology.pd_space import cone_check
from pdeform.cohomology.pd_space import pd1_space
from pdeform.cohomology.pd_space import pd_space
from pdeform.experiments.scenario import load_scenario


if __name__ == '__main__':

    parser = ArgumentParser(description='Deformation and obstruction spaces of a Poisson map')
    parser.add_argument('-s', '--scenario', default='point_in_plane', type=str,
                        help='bundled scenario or scenario file')
    parser.add_argument('-m', '--map', default='i', type=str,
                        help='name of the map in the scenario')
    args = parser.parse_args()

    fmap = load_scenario(args.scenario).maps[args.map]
    pd = pd_space(fmap)
    pd1 = pd1_space(fmap)
    print('\n'.join(pd.lines()))
    print('\n'.join(pd1.lines()))

    # PD again, from the cone of F
    print('PD={0}, H^1 of the cone of F={1}'.format(*cone_check(fmap)))

    print('\n'.join(exactness_audit(fmap).lines()))
