#!/usr/bin/env python3
"""
Tests for cli.py
"""

import io
import json
import unittest
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent

# Add parent directory to path
sys.path.insert(0, str(PROJECT_ROOT))
sys.path.insert(0, str(PROJECT_ROOT / 'scripts'))

from cli import CLI, EXIT_FAILED, EXIT_INVALID, EXIT_OK  # noqa: E402
from gm_module import PairingValue  # noqa: E402


class TestCLI(unittest.TestCase):
    """Test commands, output formats and exit codes"""

    def setUp(self):
        """Set up test fixtures"""
        self.cli = CLI()

    def _run(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = self.cli.run(list(argv))
        return code, out.getvalue(), err.getvalue()

    def _records(self, stdout):
        return [json.loads(line) for line in stdout.splitlines() if line.strip()]

    def test_no_command(self):
        """Bare invocation prints help"""
        code, out, _ = self._run()
        self.assertEqual(code, EXIT_OK)
        self.assertIn('pair', out)

    def test_pair_jsonl(self):
        """Default job with S = (0,0) emits the golden record"""
        code, out, _ = self._run('pair', '--aux', '0,0', '--format', 'jsonl')
        self.assertEqual(code, EXIT_OK)
        [record] = self._records(out)
        self.assertEqual(record['op'], 't_hat')
        self.assertEqual(record['raw'], [175, 396])
        self.assertEqual(record['exponents'], [158, 248])
        self.assertEqual(record['reduced'], [2, 0])

        value = PairingValue.from_record(record)
        self.assertEqual(value.reduced, 2)

    def test_pair_is_deterministic(self):
        """Same config and seed give byte-identical output"""
        first = self._run('pair', '--format', 'jsonl', '--seed', '42')[1]
        second = self._run('pair', '--format', 'jsonl', '--seed', '42')[1]
        self.assertEqual(first, second)

    def test_pair_human(self):
        """Human output shows the reduced value"""
        code, out, _ = self._run('pair', '--aux', '0,0')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('g^{2}', out)

    def test_pair_classical(self):
        """tate with alpha = 5 reduces to g^1"""
        code, out, _ = self._run('pair', '--op', 'tate', '--alpha', '5,0', '--format', 'jsonl')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self._records(out)[0]['reduced'], [1, 0])

    def test_norm_relation(self):
        """norm_relation reports a boolean record"""
        code, out, _ = self._run('pair', '--op', 'norm_relation', '--format', 'jsonl')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(self._records(out)[0]['holds'])

    def test_other_instance(self):
        """The bundled F_43 config runs end to end"""
        config = str(PROJECT_ROOT / 'data' / 'examples' / 'f43_j0.yaml')
        code, out, _ = self._run('pair', '--config', config, '--format', 'jsonl')
        self.assertEqual(code, EXIT_OK)
        record = self._records(out)[0]
        self.assertEqual(record['q'], 43)
        self.assertEqual(record['order'], [-1, 1])

    def test_invalid_inputs(self):
        """Bad input exits with 2 and names the error on stderr"""
        cases = [
            ('pair', '--op', 'bogus'),
            ('pair', '--p', '56,137'),
            ('pair', '--alpha', 'a,b'),
            ('pair', '--config', str(PROJECT_ROOT / 'no_such.yaml')),
            ('scan', '--alpha', '3,0'),
        ]
        for argv in cases:
            code, _, err = self._run(*argv)
            self.assertEqual(code, EXIT_INVALID, msg=' '.join(argv))
            self.assertIn('❌', err)

    def test_example(self):
        """Goldens pass with i = 20 and fail with i = 381"""
        code, out, _ = self._run('example')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('golden values match', out)
        code, _, _ = self._run('example', '--root', '381')
        self.assertEqual(code, EXIT_FAILED)

    def test_scan(self):
        """Scan of alpha = 1 - 2i passes"""
        code, out, _ = self._run('scan', '--alpha', '1,-2')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('Result: PASS', out)

    def test_selftest_jsonl(self):
        """selftest emits a law record and a scan record"""
        code, out, _ = self._run('selftest', '--trials', '1', '--laws', 'classical_weil',
                                 'torsion_w_hat', '--format', 'jsonl')
        self.assertEqual(code, EXIT_OK)
        laws, scan = self._records(out)
        self.assertTrue(laws['all_passed'])
        self.assertEqual(sorted(laws['laws']), ['classical_weil', 'torsion_w_hat'])
        self.assertEqual(len(scan['table']), 5)

    def test_selftest_is_deterministic(self):
        """Two full selftest runs with the same seed print the same report"""
        argv = ('selftest', '--trials', '1', '--seed', '7', '--format', 'jsonl')
        code, first, _ = self._run(*argv)
        self.assertEqual(code, EXIT_OK)
        self.cli = CLI()
        _, second, _ = self._run(*argv)
        self.assertEqual(first, second)
        laws, _ = self._records(first)
        self.assertEqual(len(laws['laws']), 29)


if __name__ == '__main__':
    unittest.main()
