# -*- coding: utf-8 -*-
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, version 2 of the License.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# vim:sw=4:ts=4:et
from collections import OrderedDict

from .experiments import ABLATION_CASES


class Ablation(object):

    def run_ablation(self, case, best, test):
        """
        Evaluate GRALS on the test folds with the case's constraint
        applied on top of best. Case 1 is evaluate_test itself.
        """
        hyper, keep_temporal, keep_spatial = case.constrain(best)
        solver = self.grals_solver(hyper, keep_temporal=keep_temporal,
                                   keep_spatial=keep_spatial)
        return self.evaluate_test(hyper, test, solver=solver,
                                  method='grals-case{}'.format(case.id))

    def run_ablations(self, best, test, cases=ABLATION_CASES):
        return OrderedDict((case.id, self.run_ablation(case, best, test))
                           for case in cases)
