#!/usr/bin/env python3
"""
Tests for miller.py
"""

import unittest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'scripts'))

from curve_cm import CMEndo, Curve
from errors import NonPrincipalDivisor, NonzeroDegree, SupportCollision, ZeroEvaluation
from miller import (EvalPlan, LineCoeffs, RFunction, eval_line, eval_two_point, line_through,
                    miller_h, vertical_at)
from quad_order import GAUSSIAN, QuadInt
from rdivisor import eta, translate


class TestLines(unittest.TestCase):
    """Test chords, tangents and verticals"""

    def setUp(self):
        """Set up test fixtures"""
        self.curve = Curve.from_ints(401, -1, 0)
        self.F = self.curve.field
        self.P = self.curve.point(204, 283)
        self.Q = self.curve.point(56, 137)

    def test_tangent_at_p(self):
        """Tangent at P is Y - 47X + 82"""
        tangent = line_through(self.P, self.P)
        self.assertEqual(tangent, LineCoeffs(self.F(-47), self.F(1), self.F(82)))
        self.assertEqual(eval_line(self.P, self.P, self.Q), self.Q.y - 47 * self.Q.x + 82)
        with self.assertRaises(ZeroEvaluation):
            tangent(self.P)

    def test_chord_vanishes_on_third_point(self):
        """The chord through P and Q also meets -(P+Q)"""
        chord = line_through(self.P, self.Q)
        with self.assertRaises(ZeroEvaluation):
            chord(-(self.P + self.Q))
        self.assertTrue(chord(self.curve.point(0, 0)))

    def test_degenerate_lines(self):
        """L(T, -T) and V_O"""
        self.assertEqual(line_through(self.P, -self.P), vertical_at(self.P))
        self.assertTrue(vertical_at(self.curve.infinity).is_constant())
        self.assertEqual(line_through(self.curve.infinity, self.curve.infinity)(self.P), 1)


class TestEvalPlan(unittest.TestCase):
    """Test Miller functions and evaluation plans"""

    def setUp(self):
        """Set up test fixtures"""
        self.curve = Curve.from_ints(401, -1, 0)
        self.endo = CMEndo.j1728(self.curve, 20)
        self.P = self.curve.point(204, 283)
        self.Q = self.curve.point(56, 137)
        self.alpha = QuadInt(1, -2, GAUSSIAN)

    def test_non_principal(self):
        """(P) - (O) is not principal"""
        with self.assertRaises(NonPrincipalDivisor):
            EvalPlan(self.curve, [(self.P, 1)])

    def test_plan_divisor(self):
        """5(P) - 5(O) for a 5-torsion point"""
        plan = EvalPlan(self.curve, [(self.P, 5)])
        self.assertEqual(plan.divisor(), {self.P: 5, self.curve.infinity: -5})
        self.assertFalse(plan.is_trivial())

    def test_evaluate_rejects_bad_divisors(self):
        """Degree and support are checked before evaluating"""
        plan = EvalPlan(self.curve, [(self.P, 5)])
        with self.assertRaises(NonzeroDegree):
            plan.evaluate({self.Q: 1})
        with self.assertRaises(SupportCollision):
            plan.evaluate({self.P: 1, self.Q: -1})
        with self.assertRaises(SupportCollision):
            plan.evaluate({self.Q: 1, self.curve.infinity: -1})

    def test_value_at_is_cached(self):
        """A point is evaluated once per plan"""
        plan = EvalPlan(self.curve, [(self.P, 5)])
        R = self.curve.point(0, 0)
        self.assertIs(plan.value_at(R), plan.value_at(R))
        self.assertIsNot(EvalPlan(self.curve, [(self.P, 5)]).value_at(R), plan.value_at(R))
        self.assertEqual(EvalPlan(self.curve, [(self.P, 5)]).value_at(R), plan.value_at(R))

    def test_miller_h_matches_plan(self):
        """h_{P,5} and the one-term plan agree on a divisor avoiding P and O"""
        S = self.curve.point(0, 0)
        D = {self.Q + S: 1, S: -1}
        self.assertEqual(miller_h(self.P, 5, D), EvalPlan(self.curve, [(self.P, 5)]).evaluate(D))
        two_point = EvalPlan.two_point(self.P, 3, self.P, 2)
        self.assertEqual(eval_two_point(two_point, D), miller_h(self.P, 5, D))
        with self.assertRaises(SupportCollision):
            miller_h(self.P, 5, {self.P: 1, S: -1})

    def test_f_p_components(self):
        """f_P for alpha = 1 - 2i: the tangent at P and a vertical over a tangent"""
        f = RFunction.with_divisor(eta(self.P, self.endo).scale(self.alpha))
        minus_i_P = self.curve.point(197, 355)
        O = self.curve.infinity
        self.assertEqual(f.f0.divisor(), {minus_i_P: 1, self.P: 2, O: -3})
        self.assertEqual(f.divisor(), eta(self.P, self.endo).scale(self.alpha))

        tangent = LineCoeffs(self.curve.field(-47), self.curve.field(1), self.curve.field(82))
        samples = [self.Q, self.curve.point(0, 0), self.curve.point(1, 0)]
        ratios = {f.f0.value_at(R) / tangent(R) for R in samples}
        self.assertEqual(len(ratios), 1)

    def test_rfunction_evaluates_tau_component_conjugated(self):
        """f(tau*D) = f(D)^conj(tau)"""
        f = RFunction.with_divisor(eta(self.P, self.endo).scale(self.alpha))
        S = self.curve.point(0, 0)
        D = eta(self.Q, self.endo)
        shifted = translate(D, S)
        base = f.evaluate(shifted)
        scaled = f.evaluate(shifted.scale(GAUSSIAN.tau))
        self.assertEqual(scaled, base ** GAUSSIAN.tau.conj())


if __name__ == '__main__':
    unittest.main()
