from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from app.core.errors import InputError, InvalidModulusError, NonTransverseError, ZeroArgumentError

REAL = "real"
FINITE = "finite"


@dataclass(frozen=True, slots=True)
class Place:
    kind: str
    prime: int | None = None

    def __post_init__(self) -> None:
        if self.kind == REAL:
            if self.prime is not None:
                raise InputError("実素点に素数は指定できません。")
            return
        if self.kind != FINITE:
            raise InputError(f"未知の素点種別です: {self.kind}")
        if self.prime is None or self.prime < 2 or not isprime(self.prime):
            raise InvalidModulusError(f"有限素点には素数が必要です: {self.prime}")

    @classmethod
    def real(cls) -> Place:
        return cls(REAL)

    @classmethod
    def finite(cls, prime: int) -> Place:
        return cls(FINITE, int(prime))

    @property
    def is_real(self) -> bool:
        return self.kind == REAL

    def sort_key(self) -> tuple[int, int]:
        return (0, 0) if self.is_real else (1, int(self.prime or 0))

    def __str__(self) -> str:
        return "inf" if self.is_real else str(self.prime)


@dataclass(frozen=True, slots=True)
class SquareClass:
    """Canonical element of Q_v^x / (Q_v^x)^2.

    At the real place only the sign survives (valuation_parity is always 0).
    At odd p the unit class is 1 or the least positive nonresidue mod p,
    at p = 2 it is the residue mod 8.
    """

    place: Place
    valuation_parity: int
    unit_class: int

    def representative(self) -> Fraction:
        if self.place.is_real:
            return Fraction(self.unit_class)
        prime = int(self.place.prime or 0)
        return Fraction(prime**self.valuation_parity * self.unit_class)

    def __str__(self) -> str:
        return f"{self.place}:{self.representative()}"


@dataclass(frozen=True, slots=True)
class Mu8:
    """An 8th root of unity zeta8^exponent, zeta8 = exp(2*pi*i/8)."""

    exponent: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", int(self.exponent) % 8)

    @classmethod
    def one(cls) -> Mu8:
        return cls(0)

    @classmethod
    def from_sign(cls, sign: int) -> Mu8:
        if sign == 1:
            return cls(0)
        if sign == -1:
            return cls(4)
        raise InputError(f"符号は ±1 で指定してください: {sign}")

    @property
    def is_sign(self) -> bool:
        return self.exponent in (0, 4)

    def sign(self) -> int:
        if not self.is_sign:
            raise InputError(f"{self} は ±1 ではありません。")
        return 1 if self.exponent == 0 else -1

    def conjugate(self) -> Mu8:
        return Mu8(-self.exponent)

    def __mul__(self, other: Mu8) -> Mu8:
        if not isinstance(other, Mu8):
            return NotImplemented
        return Mu8(self.exponent + other.exponent)

    def __truediv__(self, other: Mu8) -> Mu8:
        if not isinstance(other, Mu8):
            return NotImplemented
        return Mu8(self.exponent - other.exponent)

    def __pow__(self, power: int) -> Mu8:
        return Mu8(self.exponent * int(power))

    def __str__(self) -> str:
        return f"zeta8^{self.exponent}"


@dataclass(frozen=True, slots=True)
class Slope:
    value: Fraction | None = None

    @classmethod
    def infinity(cls) -> Slope:
        return cls(None)

    @classmethod
    def of(cls, value: int | Fraction) -> Slope:
        return cls(Fraction(value))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


@dataclass(frozen=True, slots=True)
class LagrangianTriple:
    first: Slope
    second: Slope
    third: Slope

    def __post_init__(self) -> None:
        if len({self.first, self.second, self.third}) != 3:
            raise NonTransverseError(
                f"ラグランジアン三つ組が横断的ではありません: ({self.first}, {self.second}, {self.third})"
            )

    @classmethod
    def of(cls, first: Slope | int | Fraction, second: Slope | int | Fraction, third: Slope | int | Fraction) -> LagrangianTriple:
        return cls(_as_slope(first), _as_slope(second), _as_slope(third))

    def slopes(self) -> tuple[Slope, Slope, Slope]:
        return (self.first, self.second, self.third)

    def __str__(self) -> str:
        return f"({self.first}, {self.second}, {self.third})"


@dataclass(frozen=True, slots=True)
class DiagonalForm:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        normalized = tuple(Fraction(value) for value in self.coefficients)
        if not normalized:
            raise InputError("対角形式の係数が空です。")
        if any(value == 0 for value in normalized):
            raise ZeroArgumentError("対角形式の係数に 0 は使えません。")
        object.__setattr__(self, "coefficients", normalized)

    @classmethod
    def of(cls, *coefficients: int | Fraction) -> DiagonalForm:
        return cls(tuple(Fraction(value) for value in coefficients))

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def determinant(self) -> Fraction:
        result = Fraction(1)
        for value in self.coefficients:
            result *= value
        return result

    def __str__(self) -> str:
        return "<" + ", ".join(str(value) for value in self.coefficients) + ">"


def _as_slope(value: Slope | int | Fraction) -> Slope:
    if isinstance(value, Slope):
        return value
    return Slope.of(value)
