from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from app.core.arithmetic import square_class, square_classes, to_rational, valuation
from app.core.errors import StabilizationError, ZeroArgumentError
from app.core.hilbert_symbol import hilbert
from app.models.entities import DiagonalForm, Mu8, Place, SquareClass

logger = logging.getLogger(__name__)

SNAP_TOLERANCE = 1e-6
MAGNITUDE_FLOOR = 1e-9
ODD_PRIME_MARGIN = 3
TWO_ADIC_MARGIN = 5
REAL_LEVEL_FLOOR = 3
QUADRATURE_HALF_WIDTH = 8.0
QUADRATURE_MAX_POINTS = 4_000_000
TEST_FUNCTION_WIDTH = 1.0

_LOCK = threading.Lock()
_TABLES: dict[Place, WeilTable] = {}


@dataclass(slots=True)
class OracleSample:
    value: Mu8
    level: int
    distance: float
    magnitude: float


@dataclass(slots=True)
class WeilTable:
    place: Place
    entries: dict[SquareClass, Mu8] = field(default_factory=dict)
    levels: dict[SquareClass, int] = field(default_factory=dict)

    def lookup(self, cls: SquareClass) -> Mu8:
        return self.entries[cls]


def stabilization_floor(a: int | Fraction, v: Place) -> int:
    if v.is_real:
        return REAL_LEVEL_FLOOR
    p = int(v.prime or 0)
    margin = TWO_ADIC_MARGIN if p == 2 else ODD_PRIME_MARGIN
    return (abs(valuation(a, p)) + 1) // 2 + margin


def weil_oracle(a: int | Fraction, v: Place, level: int | None = None) -> Mu8:
    return weil_oracle_sample(a, v, level).value


def weil_oracle_sample(a: int | Fraction, v: Place, level: int | None = None) -> OracleSample:
    """Phase of gamma_v(a) read off the defining Fourier identity.

    Finite places: the identity applied to the indicator of p^N Z_p reduces
    gamma_p(a) to the phase of sum_{y mod p^M} psi_p(a p^(-2N) y^2).
    Real place: both sides are integrated against a Gaussian by quadrature.
    """
    value = _nonzero(a)
    floor = stabilization_floor(value, v)
    chosen = floor if level is None else int(level)
    if chosen < floor:
        raise StabilizationError(f"安定化レベル {chosen} は下限 {floor} 未満です ({v}, a={value})。", chosen)

    if v.is_real:
        total = _gaussian_identity_ratio(value, chosen)
    else:
        total = _quadratic_character_sum(value, int(v.prime or 0), chosen)
    return _snap(total, value, v, chosen)


def weil_table(v: Place) -> WeilTable:
    table = _TABLES.get(v)
    if table is not None:
        return table
    with _LOCK:
        table = _TABLES.get(v)
        if table is None:
            table = _build_table(v)
            _TABLES[v] = table
    return table


def weil_index(a: int | Fraction, v: Place) -> Mu8:
    value = _nonzero(a)
    return weil_table(v).lookup(square_class(value, v))


def defect(a: int | Fraction, b: int | Fraction, v: Place) -> Mu8:
    ra, rb = _nonzero(a), _nonzero(b)
    return weil_index(ra, v) * weil_index(rb, v) / (weil_index(1, v) * weil_index(ra * rb, v))


def doubled_defect(a: int | Fraction, b: int | Fraction, v: Place) -> Mu8:
    """gamma(2a) gamma(2b) / (gamma(2) gamma(2ab)), the doubled-argument form of the defect."""
    ra, rb = _nonzero(a), _nonzero(b)
    return weil_index(2 * ra, v) * weil_index(2 * rb, v) / (weil_index(2, v) * weil_index(2 * ra * rb, v))


def hasse_invariant(q: DiagonalForm, v: Place) -> int:
    result = 1
    coefficients = q.coefficients
    for i in range(len(coefficients)):
        for j in range(i + 1, len(coefficients)):
            result *= hilbert(coefficients[i], coefficients[j], v)
    return result


def weil_index_of_form(q: DiagonalForm, v: Place) -> Mu8:
    return (
        weil_index(1, v) ** (q.dimension - 1)
        * weil_index(q.determinant(), v)
        * Mu8.from_sign(hasse_invariant(q, v))
    )


def orthogonal_sum_index(q: DiagonalForm, v: Place) -> Mu8:
    result = Mu8.one()
    for coefficient in q.coefficients:
        result = result * weil_index(coefficient, v)
    return result


def _build_table(v: Place) -> WeilTable:
    table = WeilTable(place=v)
    for cls in square_classes(v):
        representative = cls.representative()
        floor = stabilization_floor(representative, v)
        first = weil_oracle_sample(representative, v, floor)
        second = weil_oracle_sample(representative, v, floor + 1)
        if first.value != second.value:
            logger.error(
                "Weil oracle did not stabilize at %s for %s: %s vs %s",
                v,
                representative,
                first.value,
                second.value,
            )
            raise StabilizationError(
                f"Weil 指数が安定しません ({v}, a={representative}): {first.value} / {second.value}",
                floor,
            )
        table.entries[cls] = first.value
        table.levels[cls] = floor
    logger.info("Built Weil table at %s with %s classes", v, len(table.entries))
    return table


def _quadratic_character_sum(a: Fraction, p: int, level: int) -> complex:
    exponent = valuation(a, p)
    unit = a / Fraction(p) ** exponent
    # psi_p(a p^(-2N) y^2) only sees u y^2 mod p^m.
    m = 2 * level - exponent
    modulus = p**m
    u = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    span = m + 1 if p == 2 else m

    # Split y = s + p^k t. Summing over t kills every s with v_p(2s) < m - k,
    # leaving p^(span-k) * sum over s = p^f r of psi_p(u s^2 / p^m).
    k = (span + 1) // 2
    f = max(0, m - k - (1 if p == 2 else 0))
    step = p**f
    fractions = [(u * (step * r) ** 2 % modulus) / modulus for r in range(p ** (k - f))]
    phases = np.exp(-2j * np.pi * np.array(fractions, dtype=np.float64))
    return complex(phases.sum())


def _gaussian_identity_ratio(a: Fraction, level: int) -> complex:
    alpha = float(a)
    width = TEST_FUNCTION_WIDTH
    scale = max(1.0, 2.0 * abs(alpha), 1.0 / (2.0 * abs(alpha)))
    step = 2.0 ** -(level + 3) / scale
    points = int(2 * QUADRATURE_HALF_WIDTH / step) + 1
    if points > QUADRATURE_MAX_POINTS:
        raise StabilizationError(f"求積点数が上限を超えます (a={a}, level={level})。", level)

    x = np.linspace(-QUADRATURE_HALF_WIDTH, QUADRATURE_HALF_WIDTH, points)
    phi = np.exp(-np.pi * width * x**2)
    phi_hat = np.exp(-np.pi * x**2 / width) / math.sqrt(width)
    lhs = np.trapezoid(phi_hat * np.exp(2j * np.pi * alpha * x**2), x)
    rhs = np.trapezoid(phi * np.exp(-2j * np.pi * x**2 / (4.0 * alpha)), x)
    return complex(lhs * math.sqrt(abs(2.0 * alpha)) / rhs)


def _snap(total: complex, a: Fraction, v: Place, level: int) -> OracleSample:
    magnitude = abs(total)
    if magnitude < MAGNITUDE_FLOOR:
        logger.error("Weil oracle sum vanished at %s for %s (level %s)", v, a, level)
        raise StabilizationError(f"指標和が 0 に近すぎます ({v}, a={a}, level={level})。", level)
    phase = total / magnitude
    exponent = int(round(math.atan2(phase.imag, phase.real) / (math.pi / 4))) % 8
    distance = abs(phase - complex(np.exp(1j * np.pi * exponent / 4)))
    if distance > SNAP_TOLERANCE:
        logger.error("Weil oracle phase %s is %.3e away from zeta8^%s at %s", phase, distance, exponent, v)
        raise StabilizationError(
            f"位相が 8 乗根から離れています ({v}, a={a}, level={level}, distance={distance:.3e})。",
            level,
        )
    return OracleSample(value=Mu8(exponent), level=level, distance=distance, magnitude=magnitude)


def _nonzero(value: int | Fraction) -> Fraction:
    rational = to_rational(value)
    if rational == 0:
        raise ZeroArgumentError("Weil 指数の引数に 0 は使えません。")
    return rational
