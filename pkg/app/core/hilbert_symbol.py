from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction
from functools import lru_cache

from app.core.arithmetic import legendre, prime_factors, square_class, to_rational, valuation
from app.core.errors import ZeroArgumentError
from app.models.entities import Place, SquareClass


def hilbert(a: int | Fraction, b: int | Fraction, v: Place) -> int:
    ra, rb = _nonzero(a), _nonzero(b)
    return hilbert_on_classes(square_class(ra, v), square_class(rb, v))


@lru_cache(maxsize=4096)
def hilbert_on_classes(first: SquareClass, second: SquareClass) -> int:
    place = first.place
    if place.is_real:
        return -1 if first.unit_class < 0 and second.unit_class < 0 else 1

    p = int(place.prime or 0)
    alpha, u = first.valuation_parity, first.unit_class
    beta, w = second.valuation_parity, second.unit_class
    if p == 2:
        exponent = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if exponent % 2 else 1

    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta:
        sign *= legendre(u, p)
    if alpha:
        sign *= legendre(w, p)
    return sign


@lru_cache(maxsize=4096)
def hilbert_oracle(a: int | Fraction, b: int | Fraction, v: Place) -> int:
    """Decide solvability of z^2 = a x^2 + b y^2 over Q_v without the closed formulas.

    Finite places search primitive solutions modulo p^K, K = v_p(4ab) + 3.
    A primitive solution has x or y a unit, and scaling by that unit
    normalises it to (1, t) or (p t, 1).
    """
    ia, ib = _integral(_nonzero(a)), _integral(_nonzero(b))
    if v.is_real:
        return -1 if ia < 0 and ib < 0 else 1

    p = int(v.prime or 0)
    precision = valuation(4 * ia * ib, p) + 3
    if _takes_square_value(lambda t: ia + ib * t * t, p, precision):
        return 1
    if _takes_square_value(lambda t: ia * p * p * t * t + ib, p, precision):
        return 1
    return -1


def support(a: int | Fraction, b: int | Fraction) -> list[Place]:
    ra, rb = _nonzero(a), _nonzero(b)
    primes = {2}
    for value in (ra.numerator, ra.denominator, rb.numerator, rb.denominator):
        primes.update(prime_factors(value))
    return [Place.real()] + [Place.finite(p) for p in sorted(primes)]


def _takes_square_value(poly: Callable[[int], int], p: int, precision: int) -> bool:
    # Depth-first over the p-adic digits of t; a branch stops as soon as the
    # known digits of poly(t) decide whether it is a square mod p^precision.
    pending: list[tuple[int, int]] = [(0, 0)]
    while pending:
        t, level = pending.pop()
        modulus = p**level
        status = _square_status(poly(t) % modulus, level, p, precision)
        if status is True:
            return True
        if status is False:
            continue
        pending.extend((t + digit * modulus, level + 1) for digit in range(p))
    return False


def _square_status(residue: int, level: int, p: int, precision: int) -> bool | None:
    if level == precision:
        return _is_square_mod_prime_power(residue, p, precision)
    if residue == 0:
        return None
    exponent = _int_valuation(residue, p)
    unit = residue // p**exponent
    if p != 2:
        return exponent % 2 == 0 and legendre(unit, p) == 1
    needed = min(3, precision - exponent)
    if level - exponent < needed:
        return None
    return exponent % 2 == 0 and unit % 2**needed == 1


def _is_square_mod_prime_power(residue: int, p: int, precision: int) -> bool:
    if residue == 0:
        return True
    exponent = _int_valuation(residue, p)
    unit = residue // p**exponent
    if exponent % 2:
        return False
    if p != 2:
        return legendre(unit, p) == 1
    return unit % 2 ** min(3, precision - exponent) == 1


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def _nonzero(value: int | Fraction) -> Fraction:
    rational = to_rational(value)
    if rational == 0:
        raise ZeroArgumentError("ヒルベルト記号の引数に 0 は使えません。")
    return rational


def _integral(value: Fraction) -> int:
    # n/d and n*d share a square class.
    return value.numerator * value.denominator


def _int_valuation(n: int, p: int) -> int:
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count
