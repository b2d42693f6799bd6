# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.

import doctest
import glob
import os
import unittest

from .. import audit, document, enet, policy, verify

HERE = os.path.dirname(__file__)


class ScenarioTestCase(unittest.TestCase):
    'Run the scenario_*.rst files'

    def test_scenarios(self):
        for scenario in sorted(glob.glob(os.path.join(HERE,
                        'scenario_*.rst'))):
            with self.subTest(scenario=os.path.basename(scenario)):
                failures, _ = doctest.testfile(scenario,
                    module_relative=False, encoding='utf-8',
                    globs={
                        'audit': audit,
                        'document': document,
                        'enet': enet,
                        'policy': policy,
                        'verify': verify,
                        'here': HERE,
                        },
                    optionflags=doctest.REPORT_ONLY_FIRST_FAILURE)
                self.assertEqual(failures, 0)
