from __future__ import annotations

from fractions import Fraction

from app.core.arithmetic import is_prime, legendre, prime_factors, to_rational
from app.core.errors import InputError, ZeroArgumentError
from app.core.hilbert_symbol import hilbert, support
from app.core.weil_index import defect, weil_index
from app.models.dto import QuadraticReciprocityRecord, VerificationReport
from app.models.entities import Mu8, Place


def global_defect_product(a: int | Fraction, b: int | Fraction) -> Mu8:
    result = Mu8.one()
    for place in support(a, b):
        result = result * defect(a, b, place)
    return result


def hilbert_product(a: int | Fraction, b: int | Fraction) -> int:
    result = 1
    for place in support(a, b):
        result *= hilbert(a, b, place)
    return result


def local_factors(a: int | Fraction, b: int | Fraction) -> dict[Place, tuple[int, Mu8]]:
    """(hilbert, defect) at every place of the support."""
    return {place: (hilbert(a, b, place), defect(a, b, place)) for place in support(a, b)}


def quadratic_reciprocity(p: int, q: int) -> QuadraticReciprocityRecord:
    for prime in (p, q):
        if isinstance(prime, bool) or not isinstance(prime, int) or prime < 3 or not is_prime(prime):
            raise InputError(f"奇素数を指定してください: {prime}")
    if p == q:
        raise InputError(f"異なる奇素数を指定してください: {p}, {q}")

    legendre_pq, legendre_qp = legendre(p, q), legendre(q, p)
    lhs = legendre_pq * legendre_qp
    rhs = -1 if ((p - 1) * (q - 1) // 4) % 2 else 1
    places = [Place.real(), Place.finite(2), Place.finite(p), Place.finite(q)]
    factors = {str(place): hilbert(p, q, place) for place in places}
    return QuadraticReciprocityRecord(
        p=p,
        q=q,
        lhs=lhs,
        rhs=rhs,
        local_factors=factors,
        legendre_pq=legendre_pq,
        legendre_qp=legendre_qp,
    )


def global_weil_product(a: int | Fraction) -> Mu8:
    value = to_rational(a)
    if value == 0:
        raise ZeroArgumentError("Weil 指数の積の引数に 0 は使えません。")
    primes = {2}
    primes.update(prime_factors(value.numerator))
    primes.update(prime_factors(value.denominator))
    result = weil_index(value, Place.real())
    for prime in sorted(primes):
        result = result * weil_index(value, Place.finite(prime))
    return result


def factor_two_identity(a: int | Fraction, b: int | Fraction, v: Place) -> tuple[int, int]:
    """<2a, 2b>_v against <2, 2ab>_v <a, b>_v."""
    ra, rb = to_rational(a), to_rational(b)
    lhs = hilbert(2 * ra, 2 * rb, v)
    rhs = hilbert(2, 2 * ra * rb, v) * hilbert(ra, rb, v)
    return lhs, rhs


def run_suite(law: str, maximum: int | None = None, jobs: int = 1) -> VerificationReport:
    from app.core.verification_suites import run_law

    return run_law(law, maximum=maximum, jobs=jobs)
