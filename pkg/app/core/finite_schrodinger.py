from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from app.core.arithmetic import is_prime, legendre
from app.core.cyclotomic import Cyclotomic, approx_complex, conjugate, embed, sum_of_roots
from app.core.errors import InputError, InvalidModulusError, NonCoprimeError
from app.models.dto import CrtFactorizationReport, GaussEvaluationReport
from app.models.entities import Mu8

NUMERIC_TOLERANCE = 1e-6


@dataclass(frozen=True, slots=True)
class ResidueSector:
    """Span of the residue combs E_r = sum_k delta_(r + k c), r mod c."""

    modulus: int

    def __post_init__(self) -> None:
        _require_odd(self.modulus)

    def labels(self) -> range:
        return range(self.modulus)


@dataclass(slots=True, eq=False)
class FiniteOperator:
    """c^scale_exponent times an unnormalized matrix over Z[zeta_c].

    ``matrix[m, r, k]`` is the coefficient of zeta_c^k in entry (m, r); the
    group-ring form is reduced modulo Phi_c only when entries are read.
    """

    modulus: int
    matrix: np.ndarray
    scale_exponent: Fraction = Fraction(0)

    @classmethod
    def from_exponents(cls, modulus: int, exponents: dict[tuple[int, int], int], scale_exponent: Fraction = Fraction(0)) -> FiniteOperator:
        matrix = np.zeros((modulus, modulus, modulus), dtype=np.int64)
        for (row, column), exponent in exponents.items():
            matrix[row, column, exponent % modulus] += 1
        return cls(modulus, matrix, Fraction(scale_exponent))

    @classmethod
    def identity(cls, modulus: int) -> FiniteOperator:
        return cls.from_exponents(modulus, {(r, r): 0 for r in range(modulus)})

    @classmethod
    def parity_permutation(cls, modulus: int) -> FiniteOperator:
        return cls.from_exponents(modulus, {((-r) % modulus, r): 0 for r in range(modulus)})

    def is_diagonal(self) -> bool:
        off_diagonal = self.matrix.copy()
        index = np.arange(self.modulus)
        off_diagonal[index, index, :] = 0
        return not off_diagonal.any()

    def entry(self, row: int, column: int) -> Cyclotomic:
        return Cyclotomic.from_group_ring(self.modulus, self.matrix[row, column].tolist())

    def compose(self, other: FiniteOperator) -> FiniteOperator:
        """self after other."""
        if other.modulus != self.modulus:
            raise InvalidModulusError(f"法の異なる作用素は合成できません: {self.modulus} / {other.modulus}")
        shift = _shift_index(self.modulus)
        if other.is_diagonal():
            index = np.arange(self.modulus)
            diagonal = other.matrix[index, index, :][:, shift]
            product = np.einsum("mks,kst->mkt", self.matrix, diagonal)
        else:
            product = np.einsum("mrs,rkst->mkt", self.matrix, other.matrix[:, :, shift])
        return FiniteOperator(self.modulus, product, self.scale_exponent + other.scale_exponent)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Act on a column vector given in group-ring form, shape (c, c)."""
        shift = _shift_index(self.modulus)
        return np.einsum("mrs,rst->mt", self.matrix, vector[:, shift])

    def conjugate_transpose(self) -> FiniteOperator:
        negated = (-np.arange(self.modulus)) % self.modulus
        flipped = self.matrix.transpose(1, 0, 2)[:, :, negated]
        return FiniteOperator(self.modulus, np.ascontiguousarray(flipped), self.scale_exponent)

    def scaled(self, factor: int) -> FiniteOperator:
        return FiniteOperator(self.modulus, self.matrix * int(factor), self.scale_exponent)

    def matrix_equals(self, other: FiniteOperator) -> bool:
        if other.modulus != self.modulus:
            return False
        for row in range(self.modulus):
            for column in range(self.modulus):
                if self.entry(row, column) != other.entry(row, column):
                    return False
        return True


@lru_cache(maxsize=4096)
def gauss_sum(a: int, c: int) -> Cyclotomic:
    _require_odd(c)
    return sum_of_roots(c, [a * x * x % c for x in range(c)])


def quadratic_phase_operator(a: int, sector: ResidueSector) -> FiniteOperator:
    c = sector.modulus
    return FiniteOperator.from_exponents(c, {(r, r): a * r * r for r in sector.labels()})


@lru_cache(maxsize=64)
def finite_fourier(sector: ResidueSector) -> FiniteOperator:
    c = sector.modulus
    exponents = {(m, r): r * m for m in sector.labels() for r in sector.labels()}
    return FiniteOperator.from_exponents(c, exponents, Fraction(-1, 2))


def theta_comb(sector: ResidueSector) -> np.ndarray:
    """sum_r E_r, the lattice comb restricted to the sector."""
    vector = np.zeros((sector.modulus, sector.modulus), dtype=np.int64)
    vector[:, 0] = 1
    return vector


def transport_coefficient(a: int, c: int) -> Cyclotomic:
    _require_odd(c)
    if math.gcd(a, c) != 1:
        raise NonCoprimeError(f"a と c は互いに素である必要があります: a={a}, c={c}")
    sector = ResidueSector(c)
    word = finite_fourier(sector).compose(quadratic_phase_operator(a, sector))
    # Unnormalized: the c^(-1/2) scale is dropped.
    response = word.apply(theta_comb(sector))
    return Cyclotomic.from_group_ring(c, response[0].tolist())


def epsilon(c: int) -> Mu8:
    _require_odd(c)
    return Mu8(0) if c % 4 == 1 else Mu8(2)


def warm_up_sign(p: int, q: int) -> Mu8:
    return epsilon(p * q) / (epsilon(p) * epsilon(q))


def verify_gauss_evaluation(c: int) -> GaussEvaluationReport:
    _require_odd(c)
    value = gauss_sum(1, c)
    phase = epsilon(c)
    square = value * value
    expected_square = (phase * phase).sign() * c
    norm = conjugate(value) * value
    numeric = approx_complex(value)
    expected_numeric = complex(np.exp(1j * np.pi * phase.exponent / 4)) * math.sqrt(c)
    return GaussEvaluationReport(
        modulus=c,
        square_matches=square == expected_square,
        norm_matches=norm == c,
        numeric_error=abs(numeric - expected_numeric),
        witnesses={
            "gauss_sum": str(value),
            "square": str(square),
            "expected_square": str(expected_square),
            "norm": str(norm),
            "numeric": f"{numeric.real:.9f}{numeric.imag:+.9f}i",
            "epsilon": str(phase),
        },
    )


def verify_crt_factorization(p: int, q: int) -> CrtFactorizationReport:
    for prime in (p, q):
        if prime < 3 or not is_prime(prime):
            raise InputError(f"奇素数を指定してください: {prime}")
    if p == q:
        raise InputError(f"異なる奇素数を指定してください: {p}, {q}")

    order = p * q
    whole = gauss_sum(1, order)
    split = embed(gauss_sum(q, p), order) * embed(gauss_sum(p, q), order)
    quotient = warm_up_sign(p, q)
    return CrtFactorizationReport(
        p=p,
        q=q,
        factorization_matches=whole == split,
        legendre_product=legendre(p, q) * legendre(q, p),
        epsilon_quotient=quotient.sign() if quotient.is_sign else 0,
        closed_form_sign=-1 if ((p - 1) * (q - 1) // 4) % 2 else 1,
        witnesses={"G(1,pq)": str(whole), "G(q,p)G(p,q)": str(split), "epsilon_quotient": str(quotient)},
    )


@lru_cache(maxsize=64)
def _shift_index(modulus: int) -> np.ndarray:
    # index[s, t] = (t - s) mod c, the cyclic-convolution pattern.
    positions = np.arange(modulus)
    return (positions[None, :] - positions[:, None]) % modulus


def _require_odd(c: int) -> None:
    if c < 1 or c % 2 == 0:
        raise InvalidModulusError(f"法 c は正の奇数である必要があります: {c}")
