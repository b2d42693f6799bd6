# This file is part enetacl module. The COPYRIGHT file at the top level of
# this repository contains the full copyright notices and license terms.
import io
import os
import shutil
import tempfile
import unittest

from click.testing import CliRunner

from ..audit import replay
from ..cli import cli

HERE = os.path.dirname(__file__)
ENGL = os.path.join(HERE, 'engl.json')
ENLG = os.path.join(HERE, 'enlg.json')

# Both nets share their wiring
GRANTED_TRACE = (
    '1\tt1\tbp1\tb1\tpending\n'
    '2\tt2\tb1\tb2\tpending\n'
    '3\tt3\tb2\tb3\tpending\n'
    '4\tt5\tb3\tb4\tpending\n'
    '5\tt6\tb4\tb5\tpending\n'
    '6\tt7\tb5\tb6\tpending\n'
    '7\tt8\tb6\tb7\tpending\n'
    '8\tt9\tb7\tb8\tused\n'
    '9\tt10\tb8\tb9\tused\n'
    '10\tt11\tb9\t-\tused\n')


class CliTestCase(unittest.TestCase):
    'Test command line'

    def setUp(self):
        self.runner = CliRunner()
        self.directory = tempfile.mkdtemp()
        self.audit = os.path.join(self.directory, 'audit.log')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def invoke(self, *args, **kwargs):
        kwargs.setdefault('env', {'ENETACL_AUDIT': None})
        return self.runner.invoke(cli, list(args), **kwargs)

    def test_check(self):
        result = self.invoke('check', '--policy', ENGL, 'u1', 'r1',
            '--group', 'g1')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, 'ALLOW\n')
        result = self.invoke('check', '--policy', ENGL, 'u1', 'r2',
            '--group', 'g2')
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(result.output, 'DENY\n')
        result = self.invoke('check', '--policy', ENGL, 'u1', 'r1',
            '--group', 'g1', '--second-user', 'u2')
        self.assertEqual(result.exit_code, 0)

    def test_check_errors(self):
        result = self.invoke('check', '--policy', ENGL, 'eve', 'r1',
            '--group', 'g1')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('eve', result.output)
        result = self.invoke('check', '--policy', ENGL, 'u1', 'r1')
        self.assertEqual(result.exit_code, 2)
        result = self.invoke('check', '--policy', ENGL, '--model', 'enlg',
            'u1', 'r1')
        self.assertEqual(result.exit_code, 2)
        result = self.invoke('check', '--policy', 'missing.json', 'u1', 'r1')
        self.assertEqual(result.exit_code, 2)

    def test_check_enlg(self):
        result = self.invoke('check', '--policy', ENLG, 'u1', 'r1')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, 'ALLOW (2, g1)\n')
        result = self.invoke('check', '--policy', ENLG, 'u1', 'r1',
            '--second-user', 'u2', '--group', 'g1')
        self.assertEqual(result.output, 'ALLOW (2, g1)\n')

    def test_list(self):
        result = self.invoke('list', '--policy', ENGL, 'u2')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, 'g1\t2\ng2\t1\n')
        result = self.invoke('list', '--policy', ENGL, 'u1', '--group', 'g1')
        self.assertEqual(result.output, 'r1\n')
        result = self.invoke('list', '--policy', ENGL, 'u1', '--group', 'g1',
            '--level', '1')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, '')
        result = self.invoke('list', '--policy', ENGL, 'u1', '--resource',
            'r1', '--group', 'g1')
        self.assertEqual(result.output, 'u1\nu2\n')
        result = self.invoke('list', '--policy', ENLG, 'u1', '--level', '1')
        self.assertEqual(result.output, 'g1\t1\n')
        result = self.invoke('list', '--policy', ENGL, 'u1', '--group', 'g1',
            '--level', '4')
        self.assertEqual(result.exit_code, 2)
        result = self.invoke('list', '--policy', ENGL, 'u9')
        self.assertEqual(result.exit_code, 2)

    def test_list_level(self):
        result = self.invoke('list', '--policy', ENGL, 'u1', '--level', '1')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, 'g1\t1\n')
        result = self.invoke('list', '--policy', ENGL, 'u2', '--level', '2')
        self.assertEqual(result.output, 'g1\t2\ng2\t1\n')
        result = self.invoke('list', '--policy', ENGL, 'u1', '--level', '4')
        self.assertEqual(result.exit_code, 2)

    def test_invalid_encoding(self):
        policy = os.path.join(self.directory, 'policy.json')
        with io.open(policy, 'wb') as f:
            f.write(b'{"model": "engl", "users": ["\xff"]}\n')
        result = self.invoke('check', '--policy', policy, 'u1', 'r1',
            '--group', 'g1')
        self.assertEqual(result.exit_code, 2)
        self.assertNotIn('DENY', result.output)
        self.assertIn('line 1', result.output)
        with io.open(self.audit, 'wb') as f:
            f.write(b'\xff\xfe garbage\n')
        result = self.invoke('audit', self.audit)
        self.assertEqual(result.exit_code, 2)
        self.assertIn('line 1', result.output)

    def test_simulate(self):
        result = self.invoke('simulate', '--policy', ENGL, 'u1', '--script',
            'g1,2,r1', '--session', 's1', '--audit', self.audit)
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(result.output.endswith(GRANTED_TRACE))
        records = replay(self.audit)
        self.assertEqual([(x.session, x.outcome) for x in records],
            [('s1', 'used')])
        result = self.invoke('simulate', '--policy', ENLG, 'u1', '--script',
            ',g1,r1', '--session', 's2', '--audit', self.audit)
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(result.output.endswith(GRANTED_TRACE))
        self.assertEqual(len(replay(self.audit)), 2)

    def test_simulate_denied(self):
        result = self.invoke('simulate', '--policy', ENGL, 'u1', '--script',
            'g1,,r2')
        self.assertEqual(result.exit_code, 1)
        self.assertTrue(result.output.endswith('7\tt8\tb6\tb9\tdenied\n'
                '8\tt11\tb9\t-\tdenied\n'))
        result = self.invoke('simulate', '--policy', ENGL, 'u1', '--script',
            'quit')
        self.assertEqual(result.exit_code, 1)

    def test_simulate_audit_environment(self):
        result = self.invoke('simulate', '--policy', ENGL, 'eve', '--script',
            '', env={'ENETACL_AUDIT': self.audit})
        self.assertEqual(result.exit_code, 1)
        self.assertEqual([x.outcome for x in replay(self.audit)], ['denied'])

    def test_simulate_interactive(self):
        result = self.invoke('simulate', '--policy', ENGL, 'u1',
            '--interactive', '--session', 's1', input='g1\n2\nr1\n')
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(result.output.endswith(GRANTED_TRACE))
        self.assertIn('Group [g1, quit]', result.output)

    def test_simulate_errors(self):
        result = self.invoke('simulate', '--policy', ENGL, 'u1', '--script',
            'g1')
        self.assertEqual(result.exit_code, 2)
        result = self.invoke('simulate', '--policy', ENGL, 'u1', '--script',
            'g9')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('g9', result.output)
        result = self.invoke('simulate', '--policy', ENGL, 'u1')
        self.assertEqual(result.exit_code, 2)
        result = self.invoke('simulate', '--policy', ENGL, 'u1',
            '--interactive', input='g1\n')
        self.assertEqual(result.exit_code, 2)

    def test_verify(self):
        result = self.invoke('verify', '--policy', ENGL)
        self.assertEqual(result.exit_code, 0)
        self.assertIn('0 discrepancies', result.output)
        result = self.invoke('verify', '--policy', ENLG, '--random', '3',
            '--seed', '1')
        self.assertEqual(result.exit_code, 0)
        self.assertIn('enlg random: 3 policies', result.output)
        result = self.invoke('verify')
        self.assertEqual(result.exit_code, 2)

    def test_audit(self):
        for session in ('s1', 's2'):
            self.invoke('simulate', '--policy', ENGL, 'u1', '--script',
                'g1,,r1', '--session', session, '--audit', self.audit)
        result = self.invoke('audit', self.audit)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(result.output.splitlines()), 2)
        result = self.invoke('audit', self.audit, '--session', 's2')
        lines = result.output.splitlines()
        self.assertEqual(len(lines), 1)
        self.assertIn('"session": "s2"', lines[0])
        with io.open(self.audit, 'a', encoding='utf-8') as f:
            f.write('not json\n')
        result = self.invoke('audit', self.audit)
        self.assertEqual(result.exit_code, 2)
        self.assertIn('line 3', result.output)
