from __future__ import annotations

import unittest
from fractions import Fraction
from itertools import permutations

from app.core.errors import NonTransverseError, OutOfDomainError
from app.core.maslov import basic_triple, kappa, kashiwara_form, symplectic_pairing, triple_phase, triple_phase_defect
from app.core.weil_index import defect, weil_index
from app.models.entities import LagrangianTriple, Mu8, Place, Slope

INF = Slope.infinity()


def _sign(value: Fraction) -> int:
    return 1 if value > 0 else -1


class SymplecticPairingTest(unittest.TestCase):
    def test_table(self) -> None:
        self.assertEqual(symplectic_pairing(Slope.of(2), Slope.of(5)), 3)
        self.assertEqual(symplectic_pairing(INF, Slope.of(4)), -1)
        self.assertEqual(symplectic_pairing(Slope.of(4), INF), 1)
        self.assertEqual(symplectic_pairing(Slope.of(Fraction(1, 3)), Slope.of(Fraction(1, 3))), 0)


class KashiwaraFormTest(unittest.TestCase):
    def test_documented_values(self) -> None:
        self.assertEqual(kashiwara_form(LagrangianTriple.of(INF, 5, 0)), 5)
        self.assertEqual(kashiwara_form(LagrangianTriple.of(0, 1, 2)), -2)
        self.assertEqual(kashiwara_form(LagrangianTriple.of(INF, 0, Fraction(3, 2))), Fraction(-3, 2))

    def test_repeated_slope_is_not_transverse(self) -> None:
        with self.assertRaises(NonTransverseError):
            LagrangianTriple.of(1, 1, 2)
        with self.assertRaises(NonTransverseError):
            LagrangianTriple.of(INF, INF, 2)

    def test_cyclic_invariance_and_antisymmetry(self) -> None:
        slopes = [INF] + [Slope.of(n) for n in range(-3, 4)]
        for first, second, third in permutations(slopes, 3):
            form = kashiwara_form(LagrangianTriple(first, second, third))
            self.assertEqual(kashiwara_form(LagrangianTriple(second, third, first)), form)
            self.assertEqual(kashiwara_form(LagrangianTriple(second, first, third)), -form)
            self.assertEqual(kashiwara_form(LagrangianTriple(first, third, second)), -form)

    def test_signature_cocycle(self) -> None:
        slopes = [INF] + [Slope.of(n) for n in range(-2, 4)]

        def tau(x: Slope, y: Slope, z: Slope) -> int:
            return _sign(kashiwara_form(LagrangianTriple(x, y, z)))

        for x1, x2, x3, x4 in permutations(slopes, 4):
            self.assertEqual(tau(x1, x2, x3) - tau(x1, x2, x4) + tau(x1, x3, x4) - tau(x2, x3, x4), 0)


class KappaTest(unittest.TestCase):
    def test_documented_values(self) -> None:
        self.assertEqual(kappa(LagrangianTriple.of(0, 1, 2)), -1)
        self.assertEqual(kappa(LagrangianTriple.of(0, 2, 1)), 1)

    def test_kappa_is_the_sign_of_the_form(self) -> None:
        for triple in permutations(range(-5, 6), 3):
            lagrangians = LagrangianTriple.of(*triple)
            self.assertEqual(kappa(lagrangians), _sign(kashiwara_form(lagrangians)), triple)

    def test_infinite_slope_is_out_of_domain(self) -> None:
        with self.assertRaises(OutOfDomainError):
            kappa(LagrangianTriple.of(INF, 1, 2))


class TriplePhaseTest(unittest.TestCase):
    def test_basic_triple_gives_weil_index(self) -> None:
        for place in (Place.real(), Place.finite(2), Place.finite(3), Place.finite(5)):
            for a in (-6, -1, 1, 2, 3, Fraction(5, 2)):
                self.assertEqual(triple_phase(basic_triple(a), place), weil_index(a, place))

    def test_documented_values(self) -> None:
        self.assertEqual(triple_phase(basic_triple(1), Place.finite(7)), Mu8(0))
        self.assertEqual(triple_phase(LagrangianTriple.of(0, 1, 2), Place.real()), weil_index(-2, Place.real()))

    def test_triple_phase_defect_is_the_local_defect(self) -> None:
        for place in (Place.real(), Place.finite(2), Place.finite(3)):
            for a in (-3, -1, 2, 3, 6):
                for b in (-2, 3, 5, 7):
                    self.assertEqual(triple_phase_defect(a, b, place), defect(a, b, place))


if __name__ == "__main__":
    unittest.main()
