from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime

from app.core.errors import InputError, InvalidModulusError, UndefinedValuationError, ZeroArgumentError
from app.models.entities import Place, Slope, SquareClass


def to_rational(value: int | str | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"有理数として解釈できません: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    return parse_rational(str(value))


def parse_rational(text: str) -> Fraction:
    raw = (text or "").strip()
    if not raw:
        raise InputError("有理数が空です。")
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"有理数として解釈できません: {raw}") from exc
    if "." in raw or "e" in raw.lower():
        raise InputError(f"有理数は n または n/d の形式で指定してください: {raw}")
    return value


def parse_place(text: str) -> Place:
    raw = (text or "").strip().lower()
    if raw in {"inf", "infinity", "oo"}:
        return Place.real()
    try:
        prime = int(raw)
    except ValueError as exc:
        raise InputError(f"素点は inf または素数で指定してください: {text}") from exc
    if prime < 2 or not is_prime(prime):
        raise InputError(f"素点は inf または素数で指定してください: {text}")
    return Place.finite(prime)


def parse_slope(text: str) -> Slope:
    raw = (text or "").strip().lower()
    if raw in {"inf", "infinity", "oo"}:
        return Slope.infinity()
    return Slope.of(parse_rational(raw))


def is_prime(n: int) -> bool:
    # sympy.isprime is deterministic below 2**64.
    return n >= 2 and bool(isprime(n))


def prime_factors(n: int) -> list[int]:
    magnitude = abs(int(n))
    if magnitude <= 1:
        return []
    return sorted(int(p) for p in factorint(magnitude))


def valuation(a: int | Fraction, p: int) -> int:
    value = to_rational(a)
    if value == 0:
        raise UndefinedValuationError("0 の付値は定義されません。")
    if p < 2 or not is_prime(p):
        raise InvalidModulusError(f"付値の法は素数である必要があります: {p}")
    return _int_valuation(value.numerator, p) - _int_valuation(value.denominator, p)


def unit_part(a: int | Fraction, p: int) -> Fraction:
    value = to_rational(a)
    return value / Fraction(p) ** valuation(value, p)


def legendre(a: int, p: int) -> int:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidModulusError(f"ルジャンドル記号の法は奇素数である必要があります: {p}")
    residue = int(a) % p
    if residue == 0:
        return 0
    # Euler's criterion; no reciprocity law is used here.
    return 1 if pow(residue, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, c: int) -> int:
    if c < 1 or c % 2 == 0:
        raise InvalidModulusError(f"ヤコビ記号の法は正の奇数である必要があります: {c}")
    result = 1
    for prime, exponent in factorint(c).items():
        symbol = legendre(a, int(prime))
        if symbol == 0:
            return 0
        if exponent % 2 == 1:
            result *= symbol
    return result


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for candidate in range(2, p):
        if legendre(candidate, p) == -1:
            return candidate
    raise InvalidModulusError(f"非剰余が見つかりません: {p}")


def square_class(a: int | Fraction, v: Place) -> SquareClass:
    value = to_rational(a)
    if value == 0:
        raise ZeroArgumentError("0 の平方類は定義されません。")
    if v.is_real:
        return SquareClass(place=v, valuation_parity=0, unit_class=1 if value > 0 else -1)

    p = int(v.prime or 0)
    exponent = valuation(value, p)
    unit = value / Fraction(p) ** exponent
    # num/den differs from num*den by the square den^2.
    unit_integer = unit.numerator * unit.denominator
    if p == 2:
        unit_class = unit_integer % 8
    else:
        unit_class = 1 if legendre(unit_integer, p) == 1 else least_nonresidue(p)
    return SquareClass(place=v, valuation_parity=exponent % 2, unit_class=unit_class)


def square_classes(v: Place) -> list[SquareClass]:
    if v.is_real:
        return [SquareClass(v, 0, 1), SquareClass(v, 0, -1)]
    p = int(v.prime or 0)
    units = (1, 3, 5, 7) if p == 2 else (1, least_nonresidue(p))
    return [SquareClass(v, parity, unit) for parity in (0, 1) for unit in units]


def odd_primes_below(bound: int) -> list[int]:
    return [n for n in range(3, max(3, bound)) if is_prime(n)]


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count
