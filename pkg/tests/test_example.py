#!/usr/bin/env python3
"""
Tests for example.py
"""

import unittest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'scripts'))

from curve_cm import Curve
from example import Q_FIELD, WorkedExample, format_example_report, run_example


class TestWorkedExample(unittest.TestCase):
    """Test the golden table of the F_401 example"""

    def test_all_goldens_match(self):
        """Every golden row is reproduced with i = 20"""
        report = run_example()
        mismatches = [row for row in report['rows'] if not row['match']]
        self.assertEqual(mismatches, [])
        self.assertTrue(report['passed'])
        self.assertEqual(report['matched'], report['total'])
        self.assertEqual(report['root'], 20)

    def test_other_seed(self):
        """Seeded auxiliary points do not change any golden"""
        self.assertTrue(run_example(seed=12345)['passed'])

    def test_extra_auxiliary_point(self):
        """An explicit S adds one row that still reduces to g^2"""
        base = len(WorkedExample().goldens())
        report = run_example(aux=Curve.from_ints(Q_FIELD, -1, 0).point(0, 0))
        self.assertEqual(report['total'], base + 1)
        self.assertTrue(report['passed'])

    def test_conjugate_root_mismatches(self):
        """i = 381 swaps the orientation, so goldens are reported as mismatches"""
        report = run_example(root=381)
        self.assertFalse(report['passed'])
        self.assertLess(report['matched'], report['total'])
        names = {row['name'] for row in report['rows'] if not row['match']}
        self.assertIn('[i]P', names)

    def test_format(self):
        """Summary line counts the matches"""
        report = run_example()
        text = format_example_report(report)
        self.assertIn(f"{report['total']}/{report['total']} golden values match", text)
        self.assertIn('i = 20', text)


if __name__ == '__main__':
    unittest.main()
