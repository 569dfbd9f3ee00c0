from __future__ import annotations

from fractions import Fraction

from app.core.errors import NonTransverseError, OutOfDomainError
from app.core.weil_index import weil_index
from app.models.entities import LagrangianTriple, Mu8, Place, Slope


def symplectic_pairing(s: Slope, t: Slope) -> Fraction:
    """omega(e_s, e_t) with e_a = (1, a) and e_inf = (0, 1)."""
    x1, y1 = _basis_vector(s)
    x2, y2 = _basis_vector(t)
    return x1 * y2 - y1 * x2


def kashiwara_form(triple: LagrangianTriple) -> Fraction:
    """Coefficient of the one-dimensional Kashiwara form of the triple."""
    slopes = list(triple.slopes())
    infinite = [index for index, slope in enumerate(slopes) if slope.is_infinite]
    if len(infinite) > 1:
        raise NonTransverseError(f"無限大の傾きが複数あります: {triple}")

    if not infinite:
        a, b, c = (slope.value for slope in slopes)
        return -(a - b) * (b - c) * (c - a)

    # Move inf to the front; each transposition negates the coefficient.
    sign = 1
    position = infinite[0]
    if position != 0:
        slopes[0], slopes[position] = slopes[position], slopes[0]
        sign = -1
    return sign * (slopes[1].value - slopes[2].value)


def kappa(triple: LagrangianTriple) -> int:
    if any(slope.is_infinite for slope in triple.slopes()):
        raise OutOfDomainError(f"kappa は有限の傾きの三つ組でのみ定義されます: {triple}")
    v1, v2, v3 = triple.slopes()
    product = symplectic_pairing(v1, v2) * symplectic_pairing(v2, v3) * symplectic_pairing(v3, v1)
    return 1 if product > 0 else -1


def triple_phase(triple: LagrangianTriple, v: Place) -> Mu8:
    return weil_index(kashiwara_form(triple), v)


def basic_triple(a: int | Fraction) -> LagrangianTriple:
    """The ordered triple (L_inf, L_a, L_0)."""
    return LagrangianTriple(Slope.infinity(), Slope.of(a), Slope.of(0))


def triple_phase_defect(a: int | Fraction, b: int | Fraction, v: Place) -> Mu8:
    ra, rb = Fraction(a), Fraction(b)
    return (
        triple_phase(basic_triple(ra), v)
        * triple_phase(basic_triple(rb), v)
        / (triple_phase(basic_triple(1), v) * triple_phase(basic_triple(ra * rb), v))
    )


def _basis_vector(slope: Slope) -> tuple[Fraction, Fraction]:
    if slope.is_infinite:
        return (Fraction(0), Fraction(1))
    return (Fraction(1), Fraction(slope.value))
