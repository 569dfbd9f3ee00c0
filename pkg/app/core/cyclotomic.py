from __future__ import annotations

import logging
import threading
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import Poly, Symbol, divisors
from sympy.polys.domains import ZZ

from app.core.errors import IncompatibleOrderError, LimitError
from app.models.entities import Mu8

logger = logging.getLogger(__name__)

Coefficient = int | Fraction

DEFAULT_ORDER_LIMIT = 10_000

_X = Symbol("x")
_LOCK = threading.Lock()
_POLYNOMIALS: dict[int, tuple[int, ...]] = {}
_order_limit = DEFAULT_ORDER_LIMIT


def set_order_limit(limit: int) -> None:
    global _order_limit
    _order_limit = max(1, int(limit))


def order_limit() -> int:
    return _order_limit


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n in ascending degree order."""
    if n < 1 or n > _order_limit:
        raise LimitError(f"円分多項式の次数 n は 1..{_order_limit} の範囲で指定してください: {n}", _order_limit)
    cached = _POLYNOMIALS.get(n)
    if cached is not None:
        return cached

    quotient = Poly(_X**n - 1, _X, domain=ZZ)
    for d in divisors(n):
        if d == n:
            continue
        divisor = Poly(list(reversed(cyclotomic_polynomial(int(d)))), _X, domain=ZZ)
        quotient = quotient.exquo(divisor)
    coefficients = tuple(int(c) for c in reversed(quotient.all_coeffs()))

    with _LOCK:
        # First writer wins; later writers computed the same polynomial.
        return _POLYNOMIALS.setdefault(n, coefficients)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@dataclass(frozen=True, slots=True, eq=False)
class Cyclotomic:
    """Element of Q(zeta_n) in the power basis 1, zeta_n, ..., zeta_n^(phi(n)-1).

    Instances are always fully reduced modulo Phi_n; build them through the
    classmethods rather than the constructor.
    """

    order: int
    coefficients: tuple[Coefficient, ...]

    @classmethod
    def from_group_ring(cls, order: int, dense: Iterable[Coefficient]) -> Cyclotomic:
        """Reduce sum(dense[k] * zeta_n^k) with k taken mod n."""
        folded: list[Coefficient] = [0] * order
        for exponent, value in enumerate(dense):
            if value:
                folded[exponent % order] += value
        return cls(order, _reduce(order, folded))

    @classmethod
    def zero(cls, order: int = 1) -> Cyclotomic:
        return cls(order, tuple([0] * euler_phi(order)))

    @classmethod
    def rational(cls, value: int | Fraction, order: int = 1) -> Cyclotomic:
        degree = euler_phi(order)
        return cls(order, (_normalize(Fraction(value)),) + tuple([0] * (degree - 1)))

    @classmethod
    def one(cls, order: int = 1) -> Cyclotomic:
        return cls.rational(1, order)

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def is_rational(self) -> bool:
        return not any(self.coefficients[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise IncompatibleOrderError(f"{self} は有理数ではありません。")
        return Fraction(self.coefficients[0])

    def __add__(self, other: object) -> Cyclotomic:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Cyclotomic(
            self.order,
            tuple(_normalize(a + b) for a, b in zip(self.coefficients, rhs.coefficients)),
        )

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.order, tuple(-c for c in self.coefficients))

    def __sub__(self, other: object) -> Cyclotomic:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: object) -> Cyclotomic:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Cyclotomic(self.order, tuple(_normalize(c * other) for c in self.coefficients))
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        product: list[Coefficient] = [0] * (2 * self.degree - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(rhs.coefficients):
                if b:
                    product[i + j] += a * b
        return Cyclotomic(self.order, _reduce(self.order, product))

    __rmul__ = __mul__

    def __pow__(self, power: int) -> Cyclotomic:
        if power < 0:
            raise ValueError("負のべきは未対応です。")
        result = Cyclotomic.one(self.order)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coefficients[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.order, self.coefficients))

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.coefficients)
        return f"[{body}] (order {self.order})"

    def _coerce(self, other: object) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise IncompatibleOrderError(
                    f"位数の異なる元は直接演算できません: {self.order} と {other.order}（embed を使ってください）"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Cyclotomic.rational(other, self.order)
        return None


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    dense: list[Coefficient] = [0] * n
    dense[k % n] = 1
    return Cyclotomic.from_group_ring(n, dense)


def embed(x: Cyclotomic, m: int) -> Cyclotomic:
    if m < 1 or m % x.order != 0:
        raise IncompatibleOrderError(f"位数 {x.order} の元は位数 {m} に埋め込めません。")
    step = m // x.order
    dense: list[Coefficient] = [0] * m
    for exponent, value in enumerate(x.coefficients):
        dense[(exponent * step) % m] += value
    return Cyclotomic.from_group_ring(m, dense)


def conjugate(x: Cyclotomic) -> Cyclotomic:
    dense: list[Coefficient] = [0] * x.order
    for exponent, value in enumerate(x.coefficients):
        dense[(-exponent) % x.order] += value
    return Cyclotomic.from_group_ring(x.order, dense)


def approx_complex(x: Cyclotomic) -> complex:
    """Floating-point value with zeta_n = exp(2*pi*i/n); diagnostics only."""
    exponents = np.arange(x.degree)
    roots = np.exp(2j * np.pi * exponents / x.order)
    values = np.array([float(c) for c in x.coefficients], dtype=np.float64)
    return complex(np.dot(values, roots))


def mu8_to_cyclotomic(value: Mu8) -> Cyclotomic:
    return root_of_unity(8, value.exponent)


def sum_of_roots(order: int, exponents: Sequence[int]) -> Cyclotomic:
    """sum(zeta_n^e for e in exponents), accumulated in the group ring first."""
    dense = [0] * order
    for exponent in exponents:
        dense[exponent % order] += 1
    return Cyclotomic.from_group_ring(order, dense)


def _reduce(order: int, dense: Sequence[Coefficient]) -> tuple[Coefficient, ...]:
    phi = cyclotomic_polynomial(order)
    degree = len(phi) - 1
    work: list[Coefficient] = list(dense) + [0] * max(0, degree - len(dense))
    # Phi_n is monic, so subtracting lead * x^(k-deg) * Phi_n clears degree k.
    for k in range(len(work) - 1, degree - 1, -1):
        lead = work[k]
        if not lead:
            continue
        base = k - degree
        for j in range(degree):
            if phi[j]:
                work[base + j] -= lead * phi[j]
        work[k] = 0
    return tuple(_normalize(c) for c in work[:degree])


def _normalize(value: Coefficient) -> Coefficient:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value
