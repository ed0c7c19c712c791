#!/usr/bin/env python3
"""
Tests for quad_order.py
"""

import unittest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'scripts'))

from errors import NotInvertible, OrderMismatch, PairingError, ZeroModulus
from quad_order import (EISENSTEIN, GAUSSIAN, HermiteLattice, QuadInt, QuadOrder,
                        ResidueRing, action_matrix, reduce_mod, residue_ring)


class TestQuadInt(unittest.TestCase):
    """Test arithmetic in Z[tau]"""

    def test_rejects_real_quadratic(self):
        """Only imaginary quadratic orders are accepted"""
        with self.assertRaises(PairingError):
            QuadOrder(3, 1)
        with self.assertRaises(PairingError):
            QuadOrder(2, 1)

    def test_gaussian_multiplication(self):
        """i^2 = -1 and (1+i)^2 = 2i"""
        i = GAUSSIAN.tau
        self.assertEqual(i * i, -1)
        self.assertEqual(QuadInt(1, 1, GAUSSIAN) ** 2, QuadInt(0, 2, GAUSSIAN))

    def test_eisenstein_multiplication(self):
        """zeta^2 = -zeta - 1 and zeta^3 = 1"""
        zeta = EISENSTEIN.tau
        self.assertEqual(zeta * zeta, QuadInt(-1, -1, EISENSTEIN))
        self.assertEqual(zeta ** 3, 1)

    def test_conj_norm_trace(self):
        """Conjugate, norm and trace of 1 - 2i and 2 - zeta"""
        alpha = QuadInt(1, -2, GAUSSIAN)
        self.assertEqual(alpha.conj(), QuadInt(1, 2, GAUSSIAN))
        self.assertEqual(alpha.norm(), 5)
        self.assertEqual(alpha.trace(), 2)
        self.assertEqual(alpha * alpha.conj(), 5)

        beta = QuadInt(2, -1, EISENSTEIN)
        self.assertEqual(beta.conj(), QuadInt(3, 1, EISENSTEIN))
        self.assertEqual(beta.norm(), 7)

    def test_order_mismatch(self):
        """Elements of different orders do not mix"""
        with self.assertRaises(OrderMismatch):
            GAUSSIAN.tau + EISENSTEIN.tau

    def test_str(self):
        """Display form used by reduced values"""
        self.assertEqual(str(QuadInt(2, 1, GAUSSIAN)), '2+1*tau')
        self.assertEqual(str(QuadInt(2, -1, GAUSSIAN)), '2-1*tau')
        self.assertEqual(str(QuadInt(0, 3, GAUSSIAN)), '3*tau')
        self.assertEqual(str(QuadInt(4, 0, GAUSSIAN)), '4')

    def test_action_matrix(self):
        """Columns are beta*1 and beta*tau"""
        m = action_matrix(QuadInt(1, -2, GAUSSIAN))
        self.assertEqual(m.as_tuple(), (1, 2, -2, 1))
        self.assertEqual(m.det(), 5)

        m = action_matrix(EISENSTEIN.tau)
        self.assertEqual(m.as_tuple(), (0, -1, 1, -1))
        self.assertEqual(m.det(), 1)


class TestResidueRing(unittest.TestCase):
    """Test R/alpha R"""

    def setUp(self):
        """Set up test fixtures"""
        self.alpha = QuadInt(1, -2, GAUSSIAN)
        self.ring = ResidueRing(self.alpha)

    def test_representatives(self):
        """R/(1-2i) is Z/5 with representatives 0..4"""
        self.assertEqual(self.ring.size, 5)
        self.assertEqual(self.ring.exponent, 5)
        self.assertEqual([str(r) for r in self.ring.representatives], ['0', '1', '2', '3', '4'])

    def test_reduce(self):
        """i = 3 mod (1 - 2i) and 2 + 4i = 4"""
        self.assertEqual(self.ring.reduce(GAUSSIAN.tau), 3)
        self.assertEqual(self.ring.reduce(QuadInt(2, 4, GAUSSIAN)), 4)
        self.assertEqual(self.ring.reduce(self.alpha), 0)
        self.assertTrue(self.ring.congruent(QuadInt(2, -1, GAUSSIAN), 4))
        self.assertEqual(reduce_mod(QuadInt(7, 2, GAUSSIAN), residue_ring(self.alpha)), 3)

    def test_inverse(self):
        """conj(alpha)^-1 = 3 mod alpha"""
        self.assertEqual(self.ring.inverse(self.alpha.conj()), 3)

    def test_integer_modulus(self):
        """R/5R has 25 elements of additive exponent 5"""
        ring = ResidueRing(QuadInt(5, 0, GAUSSIAN))
        self.assertEqual(ring.size, 25)
        self.assertEqual(ring.exponent, 5)
        with self.assertRaises(NotInvertible):
            ring.inverse(QuadInt(1, 2, GAUSSIAN))
        self.assertEqual(ring.reduce(ring.inverse(QuadInt(2, 0, GAUSSIAN)) * 2), 1)

    def test_zero_modulus(self):
        """R/0R is rejected"""
        with self.assertRaises(ZeroModulus):
            ResidueRing(GAUSSIAN.zero)

    def test_hermite_lattice(self):
        """HNF of 5Z^2 and membership"""
        lattice = HermiteLattice.from_columns([(5, 0), (0, 5)])
        self.assertEqual((lattice.A, lattice.B, lattice.D), (5, 0, 5))
        self.assertTrue(lattice.contains(10, -5))
        self.assertFalse(lattice.contains(1, 0))
        with self.assertRaises(ZeroModulus):
            HermiteLattice.from_columns([(1, 1), (2, 2)])


if __name__ == '__main__':
    unittest.main()
