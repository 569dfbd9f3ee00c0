from __future__ import annotations

from dataclasses import dataclass, field

LAWS = (
    "bridge",
    "defect-product",
    "hilbert-reciprocity",
    "qr",
    "gauss-law",
    "transport",
    "crt",
    "cocycle",
    "factor-two",
    "oracle-agreement",
    "weil-product",
    "hasse",
)


@dataclass(frozen=True, slots=True, order=True)
class Failure:
    inputs: tuple[str, ...]
    expected: str
    got: str

    def to_dict(self) -> dict:
        return {"inputs": list(self.inputs), "expected": self.expected, "got": self.got}


@dataclass(slots=True)
class VerificationReport:
    law: str
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: VerificationReport) -> VerificationReport:
        if other.law != self.law:
            raise ValueError(f"異なる法則のレポートは結合できません: {self.law} / {other.law}")
        return VerificationReport(
            law=self.law,
            instances=self.instances + other.instances,
            failures=sorted(self.failures + other.failures),
            elapsed=self.elapsed + other.elapsed,
        )

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "instances": self.instances,
            "failures": [failure.to_dict() for failure in self.failures],
            "passed": self.passed,
            "elapsed": round(self.elapsed, 6),
        }


@dataclass(slots=True)
class QuadraticReciprocityRecord:
    p: int
    q: int
    lhs: int
    rhs: int
    local_factors: dict[str, int]
    legendre_pq: int = 0
    legendre_qp: int = 0

    @property
    def contract_holds(self) -> bool:
        return (
            self.lhs == self.rhs
            and self.local_factors.get("inf") == 1
            and self.local_factors.get("2") == self.rhs
        )


@dataclass(slots=True)
class GaussEvaluationReport:
    modulus: int
    square_matches: bool
    norm_matches: bool
    numeric_error: float
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.square_matches and self.norm_matches and self.numeric_error < 1e-6


@dataclass(slots=True)
class CrtFactorizationReport:
    p: int
    q: int
    factorization_matches: bool
    legendre_product: int
    epsilon_quotient: int
    closed_form_sign: int
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            self.factorization_matches
            and self.legendre_product == self.epsilon_quotient == self.closed_form_sign
        )
