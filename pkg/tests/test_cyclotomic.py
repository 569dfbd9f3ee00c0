from __future__ import annotations

import random
import unittest
from fractions import Fraction

from sympy import Symbol
from sympy.polys.specialpolys import cyclotomic_poly

from app.core.cyclotomic import (
    Cyclotomic,
    approx_complex,
    conjugate,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    mu8_to_cyclotomic,
    order_limit,
    root_of_unity,
    set_order_limit,
    sum_of_roots,
)
from app.core.errors import IncompatibleOrderError, LimitError
from app.models.entities import Mu8


class CyclotomicPolynomialTest(unittest.TestCase):
    def test_matches_sympy(self) -> None:
        x = Symbol("x")
        for n in range(1, 40):
            expected = tuple(int(c) for c in reversed(cyclotomic_poly(n, x, polys=True).all_coeffs()))
            self.assertEqual(cyclotomic_polynomial(n), expected, n)

    def test_euler_phi(self) -> None:
        self.assertEqual(euler_phi(1), 1)
        self.assertEqual(euler_phi(12), 4)
        self.assertEqual(euler_phi(15), 8)

    def test_order_limit(self) -> None:
        previous = order_limit()
        set_order_limit(10)
        try:
            with self.assertRaises(LimitError):
                cyclotomic_polynomial(11)
        finally:
            set_order_limit(previous)
        with self.assertRaises(LimitError):
            cyclotomic_polynomial(0)


class CyclotomicArithmeticTest(unittest.TestCase):
    def test_roots_sum_to_zero(self) -> None:
        zeta = root_of_unity(3)
        self.assertTrue((1 + zeta + zeta * zeta).is_zero())
        self.assertEqual(sum_of_roots(7, range(7)), 0)

    def test_power_wraps_around(self) -> None:
        self.assertEqual(root_of_unity(5) ** 5, 1)
        self.assertEqual(root_of_unity(9, 4) ** 9, Cyclotomic.one(9))

    def test_canonical_form_is_unique(self) -> None:
        self.assertEqual(Cyclotomic.from_group_ring(3, [0, 0, 1]).coefficients, (-1, -1))
        self.assertEqual(Cyclotomic.from_group_ring(3, [0, 0, 0, 1]), Cyclotomic.from_group_ring(3, [1]))

    def test_gauss_sum_square_for_order_three(self) -> None:
        value = Cyclotomic.from_group_ring(3, [1, 2])
        self.assertEqual(value * value, -3)

    def test_conjugate_product_is_norm(self) -> None:
        zeta = root_of_unity(5, 2)
        self.assertEqual(conjugate(zeta) * zeta, 1)

    def test_rational_scalars(self) -> None:
        zeta = root_of_unity(4)
        half = zeta * Fraction(1, 2)
        self.assertEqual(half.coefficients, (0, Fraction(1, 2)))
        self.assertEqual((half + half) * zeta, -1)

    def test_embed_changes_order(self) -> None:
        self.assertEqual(embed(root_of_unity(3), 15), root_of_unity(15, 5))
        with self.assertRaises(IncompatibleOrderError):
            embed(root_of_unity(3), 10)

    def test_mixed_orders_are_rejected(self) -> None:
        with self.assertRaises(IncompatibleOrderError):
            _ = root_of_unity(3) + root_of_unity(5)

    def test_approx_complex(self) -> None:
        self.assertAlmostEqual(approx_complex(root_of_unity(4)), 1j, places=12)
        self.assertAlmostEqual(approx_complex(root_of_unity(8, 3)), complex(-(0.5**0.5), 0.5**0.5), places=12)


class CyclotomicInvariantTest(unittest.TestCase):
    ORDERS = (1, 2, 3, 4, 8, 12, 15, 30, 60, 105, 120)

    def setUp(self) -> None:
        self.rng = random.Random(1729)

    def element(self, order: int) -> Cyclotomic:
        return Cyclotomic.from_group_ring(order, [self.rng.randint(-3, 3) for _ in range(order)])

    def test_ring_axioms(self) -> None:
        for order in self.ORDERS:
            for _ in range(3):
                x, y, z = self.element(order), self.element(order), self.element(order)
                self.assertEqual((x * y) * z, x * (y * z), order)
                self.assertEqual(x * (y + z), x * y + x * z, order)
                self.assertEqual(x * y, y * x, order)

    def test_conjugate_is_an_involution(self) -> None:
        for order in self.ORDERS:
            x = self.element(order)
            self.assertEqual(conjugate(conjugate(x)), x, order)

    def test_embed_preserves_complex_value(self) -> None:
        for order, target in ((3, 15), (4, 8), (5, 60), (8, 120), (12, 120)):
            x = self.element(order)
            self.assertLess(abs(approx_complex(embed(x, target)) - approx_complex(x)), 1e-9, (order, target))

    def test_mu8_embedding_is_injective_and_multiplicative(self) -> None:
        images = {k: mu8_to_cyclotomic(Mu8(k)) for k in range(8)}
        self.assertEqual(len(set(images.values())), 8)
        for j in range(8):
            for k in range(8):
                self.assertEqual(mu8_to_cyclotomic(Mu8(j) * Mu8(k)), images[j] * images[k], (j, k))

    def test_embedded_gauss_sum_squares_to_minus_three(self) -> None:
        value = embed(Cyclotomic.from_group_ring(3, [1, 2]), 15)
        self.assertEqual(value.order, 15)
        self.assertEqual(value * value, -3)


if __name__ == "__main__":
    unittest.main()
