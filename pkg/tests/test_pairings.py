#!/usr/bin/env python3
"""
Tests for pairings.py

Golden values on y^2 = x^3 - x over F_401 (i = 20, alpha = 1 - 2i,
P = (204,283) in E[1+2i], Q = (56,137)) and on y^2 = x^3 + 3 over F_43.
"""

import random
import unittest
import sys
from pathlib import Path

import yaml

PROJECT_ROOT = Path(__file__).parent.parent

# Add parent directory to path
sys.path.insert(0, str(PROJECT_ROOT / 'scripts'))

from curve_cm import CMEndo, Curve
from errors import NotInKernel, PairingError, RetriesExhausted, SupportCollision
from gm_module import GmElement, gm_pow
from pairings import (PairingContext, compute, norm_relation_check, t_alpha, t_hat,
                      t_hat_via_tn, t_n_closed_form, t_n_product, tate_classical, w_alpha,
                      w_hat, w_hat_via_en, w_n_product, weil_classical)
from quad_order import EISENSTEIN, GAUSSIAN, QuadInt, ResidueRing
from rdivisor import CanonicalPair, RDivisor, eta


class TestGaussianGoldens(unittest.TestCase):
    """Test the worked example over F_401"""

    def setUp(self):
        """Set up test fixtures"""
        self.curve = Curve.from_ints(401, -1, 0)
        self.ctx = PairingContext(self.curve, CMEndo.j1728(self.curve, 20), seed=0)
        self.alpha = QuadInt(1, -2, GAUSSIAN)
        self.five = QuadInt(5, 0, GAUSSIAN)
        self.P = self.curve.point(204, 283)
        self.Q = self.curve.point(56, 137)
        self.S = self.P + self.Q

    def test_t_hat_with_fixed_auxiliary_points(self):
        """Raw values for S = (0,0) and S = (1,0) both reduce to g^2"""
        first = t_hat(self.P, self.Q, self.alpha, self.ctx, aux=self.curve.point(0, 0))
        self.assertEqual(first.raw.as_tuple(), (175, 396))
        self.assertEqual(first.exponents(), (158, 248))
        self.assertEqual(first.reduced, 2)

        second = t_hat(self.P, self.Q, self.alpha, self.ctx, aux=self.curve.point(1, 0))
        self.assertEqual(second.raw.as_tuple(), (186, 144))
        self.assertEqual(second.exponents(), (134, 106))
        self.assertEqual(first, second)

    def test_t_hat_seeded_auxiliary(self):
        """The seeded search lands in the same coset"""
        value = t_hat(self.P, self.Q, self.alpha, self.ctx)
        self.assertEqual(value.reduced, 2)
        self.assertEqual(value.op, 't_hat')

    def test_t_hat_input_checks(self):
        """Left input must lie in E[conj(alpha)]; O pairs trivially"""
        with self.assertRaises(NotInKernel):
            t_hat(self.Q, self.P, self.alpha, self.ctx)
        self.assertTrue(t_hat(self.curve.infinity, self.Q, self.alpha, self.ctx).is_identity())
        self.assertTrue(t_hat(self.P, self.curve.infinity, self.alpha, self.ctx).is_identity())

    def test_explicit_auxiliary_collision(self):
        """An explicit S on the support is reported, not retried"""
        with self.assertRaises(SupportCollision):
            t_hat(self.P, self.Q, self.alpha, self.ctx, aux=self.P - self.Q)

    def test_retries_exhausted(self):
        """No retries left means no auxiliary point"""
        ctx = PairingContext(self.curve, self.ctx.endo, seed=0, retries=0)
        with self.assertRaises(RetriesExhausted):
            t_hat(self.P, self.Q, self.alpha, ctx)

    def test_deterministic(self):
        """Same seed, same raw value"""
        other = PairingContext(self.curve, CMEndo.j1728(self.curve, 20), seed=0)
        self.assertEqual(t_hat(self.P, self.Q, self.alpha, self.ctx).raw,
                         t_hat(self.P, self.Q, self.alpha, other).raw)

    def test_memo(self):
        """Values are cached by key; failures are not"""
        ctx = self.ctx
        self.assertEqual(ctx.memo(('k',), lambda: 1), 1)
        self.assertEqual(ctx.memo(('k',), lambda: 2), 1)

        def fail():
            raise SupportCollision('no')

        with self.assertRaises(SupportCollision):
            ctx.memo(('bad',), fail)
        self.assertEqual(ctx.memo(('bad',), lambda: 3), 3)
        self.assertIs(t_hat(self.P, self.Q, self.alpha, ctx).raw, t_hat(self.P, self.Q, self.alpha, ctx).raw)

    def test_t5_reduced_values(self):
        """Reduced classical Tate pairings"""
        two_i = QuadInt(0, 2, GAUSSIAN)

        def t5(A, B):
            return tate_classical(A, B, 5, self.ctx).exponent(self.ctx.h)

        self.assertEqual(t5(self.P, self.Q), 1)
        self.assertEqual(t5(self.ctx.mul(two_i, self.P), self.Q), 4)
        self.assertEqual(t5(self.P, self.P), 0)
        self.assertEqual(t5(self.ctx.mul(two_i, self.P), self.P), 0)
        self.assertEqual(t5(self.Q, self.Q), 0)
        self.assertEqual(t5(self.ctx.mul(two_i, self.Q), self.Q), 0)

    def test_t_hat_via_tn(self):
        """T_hat_5(P,Q) = g^(2+4i), and 4 mod alpha"""
        value = t_hat_via_tn(self.P, self.Q, 5, self.ctx)
        self.assertEqual(str(value.reduced), '2+4*tau')
        self.assertEqual(str(t_hat_via_tn(self.P, self.P, 5, self.ctx).reduced), '0')
        self.assertEqual(str(t_hat_via_tn(self.Q, self.Q, 5, self.ctx).reduced), '0')

    def test_t_hat_5_on_generator(self):
        """T_hat_5 evaluated on S = P + Q"""
        ctx, five = self.ctx, self.five
        self.assertEqual(str(t_hat(self.S, self.S, five, ctx).reduced), '4')
        self.assertEqual(str(t_hat(self.S, self.P, five, ctx).reduced), '2+1*tau')
        self.assertEqual(str(t_hat(self.S, self.Q, five, ctx).reduced), '2+4*tau')
        left = ctx.mul(QuadInt(3, 4, GAUSSIAN), self.S)
        right = ctx.mul(QuadInt(3, 1, GAUSSIAN), self.S)
        expanded = t_hat(left, right, five, ctx).reduced
        self.assertEqual(str(expanded), '2+4*tau')
        self.assertEqual(ResidueRing(self.alpha).reduce(expanded), 4)

    def test_cross_oracle(self):
        """Miller evaluation and the t_n formula agree for n = 5"""
        for A, B in ((self.P, self.Q), (self.S, self.P), (self.Q, self.S)):
            self.assertEqual(t_hat(A, B, self.five, self.ctx), t_hat_via_tn(A, B, 5, self.ctx))

    def test_norm_relation(self):
        """T_hat_{N(alpha)} = T_hat_alpha^conj(alpha) mod alpha-powers"""
        self.assertTrue(norm_relation_check(self.P, self.Q, self.alpha, self.ctx))
        self.assertTrue(norm_relation_check(self.P, self.S, self.alpha, self.ctx))

    def test_t_alpha_on_eta_matches_t_hat(self):
        """T_conj(alpha)(eta(P), eta(Q)) is T_hat_alpha(P, Q)"""
        endo = self.ctx.endo
        value = t_alpha(eta(self.P, endo), eta(self.Q, endo), self.alpha.conj(), self.ctx)
        self.assertEqual(value, t_hat(self.P, self.Q, self.alpha, self.ctx))
        self.assertEqual(value.reduced, 2)

    def test_t_alpha_kernel_check(self):
        """(P) - (O) alone is not killed by conj(alpha) in R tensor E"""
        DP = RDivisor.point_minus_origin(self.P, GAUSSIAN)
        DQ = RDivisor.point_minus_origin(self.Q, GAUSSIAN)
        with self.assertRaises(NotInKernel):
            t_alpha(DP, DQ, self.alpha, self.ctx)

    def test_product_formulas_agree(self):
        """Double product and closed form of T_n coincide"""
        DP = CanonicalPair(self.P, self.Q).expand(GAUSSIAN)
        DQ = eta(self.curve.point(0, 0), self.ctx.endo)
        self.assertEqual(t_n_product(DP, DQ, 5, self.ctx), t_n_closed_form(DP, DQ, 5, self.ctx))

    def test_weil_classical(self):
        """e_5 is alternating, skew and nondegenerate on E[5]"""
        ctx = self.ctx
        self.assertEqual(weil_classical(self.P, self.P, 5, ctx), 1)
        e = weil_classical(self.P, self.Q, 5, ctx)
        self.assertNotEqual(e, 1)
        self.assertEqual(e ** 5, 1)
        self.assertEqual(e * weil_classical(self.Q, self.P, 5, ctx), 1)

    def test_w_hat(self):
        """W_hat_alpha(P, Q) lies in G[alpha]"""
        value = w_hat(self.P, self.Q, self.alpha, self.ctx)
        self.assertTrue(value.is_exact)
        self.assertEqual(value.op, 'w_hat')
        self.assertTrue(gm_pow(value.raw, self.alpha).is_identity())
        with self.assertRaises(NotInKernel):
            w_hat(self.P, self.P, self.alpha, self.ctx)

    def test_compute(self):
        """Dispatch by name and input validation"""
        value = compute('tate', self.P, self.Q, self.five, self.ctx)
        self.assertEqual(value.reduced, 1)
        self.assertEqual(compute('t_hat', self.P, self.Q, self.alpha, self.ctx,
                                 aux=self.curve.point(0, 0)).raw.as_tuple(), (175, 396))
        with self.assertRaises(PairingError):
            compute('bogus', self.P, self.Q, self.alpha, self.ctx)
        with self.assertRaises(PairingError):
            compute('tate', self.P, self.Q, self.alpha, self.ctx)
        with self.assertRaises(PairingError):
            compute('t_hat', self.P, self.Q, QuadInt(0, 0, GAUSSIAN), self.ctx)


class TestGaussianCrossOracles(unittest.TestCase):
    """Miller evaluation against the classical formulas over F_401

    E(F_401) is Z[i]/20, so E[n] is full for every n dividing 20.
    """

    def setUp(self):
        """Set up test fixtures"""
        self.curve = Curve.from_ints(401, -1, 0)
        self.ctx = PairingContext(self.curve, CMEndo.j1728(self.curve, 20), seed=0)
        self.rng = random.Random(20)

    def _n(self, n):
        return QuadInt(n, 0, GAUSSIAN)

    def _random_divisor(self):
        group = self.ctx.group()
        Q0, Q1, R = (self.rng.choice(group) for _ in range(3))
        gamma = QuadInt(self.rng.randint(-3, 3), self.rng.randint(-3, 3), GAUSSIAN)
        delta = QuadInt(self.rng.randint(-3, 3), self.rng.randint(-3, 3), GAUSSIAN)
        return RDivisor(self.curve, GAUSSIAN, [(Q0, gamma), (Q1, delta), (R, -gamma - delta)])

    def _torsion_divisor(self, n):
        kernel = self.ctx.kernel(self._n(n))
        return CanonicalPair(self.rng.choice(kernel), self.rng.choice(kernel)).expand(GAUSSIAN)

    def test_t_hat_matches_t_n_on_all_of_e_n(self):
        """t_hat(P, Q, n) = t_hat_via_tn(P, Q, n) for every P in E[n], Q over E/nE

        E[2] sits inside 2E, so Q runs over E[4] when n = 2.
        """
        for n in (2, 4, 5):
            kernel = self.ctx.kernel(self._n(n))
            self.assertEqual(len(kernel), n * n)
            targets = self.ctx.kernel(self._n(4)) if n == 2 else kernel
            for P in kernel:
                for Q in targets:
                    self.assertEqual(t_hat(P, Q, self._n(n), self.ctx), t_hat_via_tn(P, Q, n, self.ctx),
                                     msg=f"n={n} P={P} Q={Q}")

    def test_t_hat_matches_t_n_sampled(self):
        """Sampled pairs for n = 10 and n = 20"""
        group = self.ctx.group()
        for n in (10, 20):
            kernel = self.ctx.kernel(self._n(n))
            for _ in range(25):
                P, Q = self.rng.choice(kernel), self.rng.choice(group)
                self.assertEqual(t_hat(P, Q, self._n(n), self.ctx), t_hat_via_tn(P, Q, n, self.ctx),
                                 msg=f"n={n} P={P} Q={Q}")

    def test_w_hat_matches_e_n(self):
        """w_hat(P, Q, n) = w_hat_via_en(P, Q, n) on E[2] and E[4], sampled on E[5]"""
        for n in (2, 4):
            kernel = self.ctx.kernel(self._n(n))
            for P in kernel:
                for Q in kernel:
                    self.assertEqual(w_hat(P, Q, self._n(n), self.ctx), w_hat_via_en(P, Q, n, self.ctx),
                                     msg=f"n={n} P={P} Q={Q}")
        kernel = self.ctx.kernel(self._n(5))
        for _ in range(40):
            P, Q = self.rng.choice(kernel), self.rng.choice(kernel)
            self.assertEqual(w_hat(P, Q, self._n(5), self.ctx), w_hat_via_en(P, Q, 5, self.ctx),
                             msg=f"P={P} Q={Q}")

    def test_t_n_products_match_t_alpha(self):
        """Double product and closed form against T_n on 200 random pairs"""
        for _ in range(200):
            DP, DQ = self._torsion_divisor(5), self._random_divisor()
            direct = t_alpha(DP, DQ, self._n(5), self.ctx)
            self.assertEqual(direct, t_n_product(DP, DQ, 5, self.ctx), msg=f"D_P={DP} D_Q={DQ}")
            self.assertEqual(direct, t_n_closed_form(DP, DQ, 5, self.ctx), msg=f"D_P={DP} D_Q={DQ}")

    def test_w_n_product_matches_w_alpha(self):
        """Double product against W_n on 200 random torsion pairs"""
        for _ in range(200):
            DP, DQ = self._torsion_divisor(5), self._torsion_divisor(5)
            self.assertEqual(w_alpha(DP, DQ, self._n(5), self.ctx), w_n_product(DP, DQ, 5, self.ctx),
                             msg=f"D_P={DP} D_Q={DQ}")


class TestEisensteinPairings(unittest.TestCase):
    """Test y^2 = x^3 + 3 over F_43, zeta = 6, alpha = 2 - zeta"""

    def setUp(self):
        """Set up test fixtures"""
        self.curve = Curve.from_ints(43, 0, 3)
        self.ctx = PairingContext(self.curve, CMEndo.j0(self.curve, 6), seed=3)
        self.alpha = QuadInt(2, -1, EISENSTEIN)
        self.P = self.curve.point(14, 9)
        self.Q = self.curve.point(1, 2)
        self.R = self.curve.point(19, 5)

    def test_t_hat_reduces_into_residue_ring(self):
        """Reduced value is one of the seven residues"""
        value = t_hat(self.P, self.Q, self.alpha, self.ctx)
        self.assertIsNotNone(value.reduced)
        self.assertEqual(value.reduced.y, 0)
        self.assertIn(value.reduced.x, range(7))

    def test_norm_relation(self):
        """Norm relation with N(alpha) = 7"""
        self.assertTrue(norm_relation_check(self.P, self.Q, self.alpha, self.ctx))

    def test_cross_oracle(self):
        """t_hat and t_hat_via_tn agree for n = 7"""
        seven = QuadInt(7, 0, EISENSTEIN)
        self.assertEqual(t_hat(self.Q, self.P, seven, self.ctx), t_hat_via_tn(self.Q, self.P, 7, self.ctx))

    def test_w_hat_torsion(self):
        """W_hat_alpha(P, R) is killed by alpha"""
        value = w_hat(self.P, self.R, self.alpha, self.ctx)
        self.assertTrue(gm_pow(value.raw, self.alpha).is_identity())
        self.assertIsInstance(value.raw, GmElement)

    def test_classical_values(self):
        """t_7(P,Q) = g^6, t_7(R,Q) = g^5 and e_7(P,R) = 4 = g^2"""
        ctx = self.ctx
        self.assertEqual(ctx.h, 3)
        self.assertEqual(tate_classical(self.P, self.Q, 7, ctx).exponent(ctx.h), 6)
        self.assertEqual(tate_classical(self.R, self.Q, 7, ctx).exponent(ctx.h), 5)
        self.assertEqual(weil_classical(self.P, self.R, 7, ctx), 4)

    def test_frozen_goldens(self):
        """Every row of the bundled F_43 table reproduces"""
        with open(PROJECT_ROOT / 'data' / 'examples' / 'f43_goldens.yaml', 'r', encoding='utf-8') as f:
            bundle = yaml.safe_load(f)
        points = {name: self.curve.point(*xy) for name, xy in bundle['points'].items()}
        self.assertEqual(points['S'], self.P + self.Q)
        ops = {'t_hat': t_hat, 'w_hat': w_hat}
        self.assertEqual(len(bundle['goldens']), 12)
        for row in bundle['goldens']:
            alpha = QuadInt(*row['alpha'], EISENSTEIN)
            value = ops[row['op']](points[row['p']], points[row['q']], alpha, self.ctx)
            self.assertEqual(str(value.reduced), row['reduced'], msg=str(row))

    def test_goldens_agree_with_classical_formulas(self):
        """T_hat_7 and W_hat_7 on the golden points match the t_7 / e_7 expansions"""
        seven = QuadInt(7, 0, EISENSTEIN)
        S = self.P + self.Q
        self.assertEqual(str(t_hat_via_tn(self.P, self.Q, 7, self.ctx).reduced), '1+5*tau')
        self.assertEqual(str(t_hat_via_tn(self.R, S, 7, self.ctx).reduced), '2+6*tau')
        self.assertEqual(str(w_hat_via_en(self.P, self.R, 7, self.ctx).reduced), '5+4*tau')
        self.assertEqual(w_hat(self.R, self.P, seven, self.ctx), w_hat_via_en(self.R, self.P, 7, self.ctx))


if __name__ == '__main__':
    unittest.main()
