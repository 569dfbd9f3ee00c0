from __future__ import annotations

import logging
import math
import random
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from app.core.arithmetic import is_prime, jacobi, odd_primes_below, parse_place, square_class, square_classes
from app.core.cyclotomic import conjugate, order_limit, set_order_limit
from app.core.errors import ReciprocityError, UsageError
from app.core.finite_schrodinger import (
    FiniteOperator,
    ResidueSector,
    finite_fourier,
    gauss_sum,
    transport_coefficient,
    verify_crt_factorization,
    verify_gauss_evaluation,
)
from app.core.hilbert_symbol import hilbert, hilbert_oracle, support
from app.core.maslov import kappa, kashiwara_form, triple_phase_defect
from app.core.reciprocity_engine import (
    factor_two_identity,
    global_defect_product,
    global_weil_product,
    hilbert_product,
    local_factors,
    quadratic_reciprocity,
)
from app.core.weil_index import (
    defect,
    doubled_defect,
    hasse_invariant,
    orthogonal_sum_index,
    stabilization_floor,
    weil_index,
    weil_index_of_form,
    weil_oracle,
)
from app.models.dto import LAWS, Failure, VerificationReport
from app.models.entities import DiagonalForm, LagrangianTriple, Place, Slope

logger = logging.getLogger(__name__)

Case = tuple
Check = Callable[[Case], "Failure | None"]

HASSE_SEED = 20240229
OUTSIDE_SUPPORT_SAMPLES = 20
COCYCLE_SLOPES = (None, -2, -1, 0, 1, 2, 3)
COCYCLE_MAX_HALF_WIDTH = 5


@dataclass(frozen=True, slots=True)
class LawSuite:
    law: str
    default_maximum: int
    cases: Callable[[int], list[Case]]
    check: Check


def run_law(law: str, maximum: int | None = None, jobs: int = 1) -> VerificationReport:
    suite = _suite(law)
    bound = suite.default_maximum if maximum is None else int(maximum)
    if bound < 1:
        raise UsageError(f"--max は 1 以上を指定してください: {bound}")

    logger.info("Suite %s started (max=%s, jobs=%s)", law, bound, jobs)
    started = time.perf_counter()
    cases = suite.cases(bound)
    chunks = _chunks(cases, max(1, jobs) * 4)
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=set_order_limit, initargs=(order_limit(),)) as pool:
            partials = list(pool.map(_evaluate_chunk, [law] * len(chunks), chunks))
    else:
        partials = [_evaluate_chunk(law, chunk) for chunk in chunks]

    report = VerificationReport(law=law)
    for partial in partials:
        report = report.merge(partial)
    report.elapsed = time.perf_counter() - started

    for failure in report.failures:
        logger.warning("Suite %s failure: inputs=%s expected=%s got=%s", law, failure.inputs, failure.expected, failure.got)
    logger.info(
        "Suite %s finished: instances=%s failures=%s elapsed=%.3fs",
        law,
        report.instances,
        len(report.failures),
        report.elapsed,
    )
    return report


def run_laws(law: str, maximum: int | None = None, jobs: int = 1) -> list[VerificationReport]:
    """``all`` expands to every registered law, in registry order."""
    if law == "all":
        return [run_law(name, maximum=maximum, jobs=jobs) for name in LAWS]
    return [run_law(law, maximum=maximum, jobs=jobs)]


def _evaluate_chunk(law: str, cases: list[Case]) -> VerificationReport:
    suite = _suite(law)
    failures: list[Failure] = []
    for case in cases:
        try:
            failure = suite.check(case)
        except ReciprocityError as exc:
            failure = Failure(_labels(case), "no error", f"{type(exc).__name__}: {exc}")
        if failure is not None:
            failures.append(failure)
    return VerificationReport(law=law, instances=len(cases), failures=sorted(failures))


def _suite(law: str) -> LawSuite:
    suite = _REGISTRY.get(law)
    if suite is None:
        raise UsageError(f"未知の法則です: {law}（{', '.join(LAWS)}, all から選んでください）")
    return suite


def _chunks(cases: list[Case], count: int) -> list[list[Case]]:
    if not cases:
        return [[]]
    size = max(1, math.ceil(len(cases) / count))
    return [cases[i : i + size] for i in range(0, len(cases), size)]


def _labels(case: Case) -> tuple[str, ...]:
    return tuple("inf" if item is None else str(item) for item in case)


def _mismatch(case: Case, expected: object, got: object) -> Failure | None:
    if expected == got:
        return None
    return Failure(_labels(case), str(expected), str(got))


def _places(maximum: int) -> list[Place]:
    return [Place.real()] + [Place.finite(p) for p in range(2, maximum + 1) if is_prime(p)]


def _class_pairs(maximum: int) -> list[Case]:
    cases: list[Case] = []
    for place in _places(maximum):
        representatives = [cls.representative() for cls in square_classes(place)]
        cases.extend((str(place), a, b) for a in representatives for b in representatives)
    return cases


def _nonzero_grid(maximum: int) -> Iterator[int]:
    return (n for n in range(-maximum, maximum + 1) if n != 0)


def _grid_pairs(maximum: int) -> list[Case]:
    return [(a, b) for a in _nonzero_grid(maximum) for b in _nonzero_grid(maximum)]


# bridge


def _check_bridge(case: Case) -> Failure | None:
    place_text, a, b = case
    place = parse_place(place_text)
    got = defect(a, b, place)
    if not got.is_sign:
        return Failure(_labels(case), str(hilbert(a, b, place)), str(got))
    failure = _mismatch(case, hilbert(a, b, place), got.sign())
    if failure is not None:
        return failure
    # The same scalar read off the triple phases of (inf, a, 0).
    return _mismatch(case, got, triple_phase_defect(a, b, place))


# defect-product / hilbert-reciprocity


def _check_defect_product(case: Case) -> Failure | None:
    a, b = case
    total = global_defect_product(a, b)
    if total.exponent != 0:
        return Failure(_labels(case), "zeta8^0", str(total))
    for place, (symbol, local) in local_factors(a, b).items():
        if not local.is_sign or local.sign() != symbol:
            return Failure(_labels(case) + (str(place),), str(symbol), str(local))
    return None


def _check_hilbert_reciprocity(case: Case) -> Failure | None:
    a, b = case
    product = hilbert_product(a, b)
    if product != 1:
        return Failure(_labels(case), "1", str(product))
    for place in support(a, b):
        if place.is_real or int(place.prime or 0) > 50:
            continue
        first, second = square_class(a, place), square_class(b, place)
        oracle = hilbert_oracle(first.representative(), second.representative(), place)
        symbol = hilbert(a, b, place)
        if oracle != symbol:
            return Failure(_labels(case) + (str(place),), f"oracle={oracle}", f"formula={symbol}")
    return None


# qr


def _qr_cases(maximum: int) -> list[Case]:
    primes = odd_primes_below(maximum)
    return [(p, q) for p in primes for q in primes if p != q]


def _check_qr(case: Case) -> Failure | None:
    p, q = case
    record = quadratic_reciprocity(p, q)
    if not record.contract_holds:
        got = f"lhs={record.lhs} factors={dict(sorted(record.local_factors.items()))}"
        return Failure(_labels(case), f"rhs={record.rhs}", got)
    # <p, q>_l is trivial away from 2pq.
    rng = random.Random(p * 100_003 + q)
    outside = [ell for ell in odd_primes_below(600) if ell not in (p, q)]
    for ell in rng.sample(outside, min(OUTSIDE_SUPPORT_SAMPLES, len(outside))):
        symbol = hilbert(p, q, Place.finite(ell))
        if symbol != 1:
            return Failure(_labels(case) + (str(ell),), "1", str(symbol))
    return None


# gauss-law / transport / crt


def _gauss_cases(maximum: int) -> list[Case]:
    cases: list[Case] = []
    for c in range(1, maximum + 1, 2):
        cases.append(("evaluation", c))
        cases.extend(("jacobi", a, c) for a in range(c) if math.gcd(a, c) == 1)
    return cases


def _check_gauss(case: Case) -> Failure | None:
    if case[0] == "evaluation":
        report = verify_gauss_evaluation(case[1])
        if report.passed:
            return None
        return Failure(_labels(case), f"epsilon={report.witnesses['epsilon']}", str(report.witnesses))

    _, a, c = case
    value = gauss_sum(a, c)
    failure = _mismatch(case, gauss_sum(1, c) * jacobi(a, c), value)
    if failure is not None:
        return failure
    failure = _mismatch(case + ("norm",), c, conjugate(value) * value)
    if failure is not None:
        return failure
    # x -> u x leaves the sum unchanged.
    for u in range(2, min(c, 6)):
        if math.gcd(u, c) == 1:
            failure = _mismatch(case + (f"u={u}",), value, gauss_sum(a * u * u, c))
            if failure is not None:
                return failure
    return None


def _transport_cases(maximum: int) -> list[Case]:
    cases: list[Case] = []
    for c in range(1, maximum + 1, 2):
        cases.extend(("coefficient", a, c) for a in range(c) if math.gcd(a, c) == 1)
        if c <= 25:
            cases.append(("unitarity", c))
    return cases


def _check_transport(case: Case) -> Failure | None:
    if case[0] == "coefficient":
        _, a, c = case
        return _mismatch(case, gauss_sum(a, c), transport_coefficient(a, c))

    c = case[1]
    fourier = finite_fourier(ResidueSector(c))
    if not fourier.compose(fourier.conjugate_transpose()).matrix_equals(FiniteOperator.identity(c).scaled(c)):
        return Failure(_labels(case), "F F* = c Id", "mismatch")
    if not fourier.compose(fourier).matrix_equals(FiniteOperator.parity_permutation(c).scaled(c)):
        return Failure(_labels(case), "F^2 = c P", "mismatch")
    return None


def _crt_cases(maximum: int) -> list[Case]:
    primes = odd_primes_below(maximum // 3 + 1)
    return [(p, q) for p in primes for q in primes if p < q and p * q <= maximum]


def _check_crt(case: Case) -> Failure | None:
    report = verify_crt_factorization(*case)
    if report.passed:
        return None
    expected = f"factorization=True sign={report.closed_form_sign}"
    got = (
        f"factorization={report.factorization_matches} legendre={report.legendre_product} "
        f"epsilon={report.epsilon_quotient}"
    )
    return Failure(_labels(case), expected, got)


# cocycle


def _cocycle_cases(maximum: int) -> list[Case]:
    # Slopes stay within [-5, 5] whatever --max is.
    width = min(maximum, COCYCLE_MAX_HALF_WIDTH)
    span = range(-width, width + 1)
    cases: list[Case] = [("triple", a, b, c) for a, b, c in permutations(span, 3)]
    cases.extend(("cocycle",) + quadruple for quadruple in permutations(COCYCLE_SLOPES, 4))
    return cases


def _slope(value: int | None) -> Slope:
    return Slope.infinity() if value is None else Slope.of(value)


def _tau(first: int | None, second: int | None, third: int | None) -> int:
    coefficient = kashiwara_form(LagrangianTriple(_slope(first), _slope(second), _slope(third)))
    return 1 if coefficient > 0 else -1


def _check_cocycle(case: Case) -> Failure | None:
    if case[0] == "cocycle":
        x1, x2, x3, x4 = case[1:]
        total = _tau(x1, x2, x3) - _tau(x1, x2, x4) + _tau(x1, x3, x4) - _tau(x2, x3, x4)
        return _mismatch(case, 0, total)

    _, a, b, c = case
    form = kashiwara_form(LagrangianTriple.of(a, b, c))
    failure = _mismatch(case + ("kappa",), 1 if form > 0 else -1, kappa(LagrangianTriple.of(a, b, c)))
    if failure is not None:
        return failure
    failure = _mismatch(case + ("cyclic",), form, kashiwara_form(LagrangianTriple.of(b, c, a)))
    if failure is not None:
        return failure
    return _mismatch(case + ("transposition",), -form, kashiwara_form(LagrangianTriple.of(b, a, c)))


# factor-two


def _check_factor_two(case: Case) -> Failure | None:
    place_text, a, b = case
    place = parse_place(place_text)
    lhs, rhs = factor_two_identity(a, b, place)
    failure = _mismatch(case, lhs, rhs)
    if failure is not None:
        return failure
    doubled = doubled_defect(a, b, place)
    symbol = hilbert(a, b, place)
    if not doubled.is_sign or doubled.sign() != symbol:
        return Failure(_labels(case) + ("doubled",), str(symbol), str(doubled))
    return None


# oracle-agreement


def _oracle_cases(maximum: int) -> list[Case]:
    cases: list[Case] = []
    for place in _places(maximum):
        classes = square_classes(place)
        cases.extend(("weil", str(place), cls.representative()) for cls in classes)
        representatives = [cls.representative() for cls in classes]
        cases.extend(("hilbert", str(place), a, b) for a in representatives for b in representatives)
    return cases


def _check_oracle(case: Case) -> Failure | None:
    if case[0] == "hilbert":
        _, place_text, a, b = case
        place = parse_place(place_text)
        return _mismatch(case, hilbert(a, b, place), hilbert_oracle(a, b, place))

    _, place_text, a = case
    place = parse_place(place_text)
    stored = weil_index(a, place)
    floor = stabilization_floor(a, place)
    for level in (floor, floor + 1):
        failure = _mismatch(case + (f"N={level}",), stored, weil_oracle(a, place, level))
        if failure is not None:
            return failure
    if not place.is_real and place.prime != 2 and stored.exponent % 2:
        return Failure(_labels(case), "4th root of unity", str(stored))
    return None


# weil-product / hasse


def _check_weil_product(case: Case) -> Failure | None:
    (a,) = case
    total = global_weil_product(a)
    return _mismatch(case, "zeta8^0", str(total))


def _hasse_cases(maximum: int) -> list[Case]:
    rng = random.Random(HASSE_SEED)
    entries = [n for n in range(-10, 11) if n != 0]
    return [tuple(rng.choice(entries) for _ in range(rng.randint(1, 4))) for _ in range(maximum)]


def _check_hasse(case: Case) -> Failure | None:
    form = DiagonalForm.of(*case)
    places = {Place.real(), Place.finite(2)}
    for coefficient in form.coefficients:
        places.update(support(coefficient, 1))
    product = 1
    for place in sorted(places, key=Place.sort_key):
        product *= hasse_invariant(form, place)
        failure = _mismatch(case + (str(place),), orthogonal_sum_index(form, place), weil_index_of_form(form, place))
        if failure is not None:
            return failure
    return _mismatch(case, 1, product)


_REGISTRY: dict[str, LawSuite] = {
    suite.law: suite
    for suite in (
        LawSuite("bridge", 50, _class_pairs, _check_bridge),
        LawSuite("defect-product", 50, _grid_pairs, _check_defect_product),
        LawSuite("hilbert-reciprocity", 50, _grid_pairs, _check_hilbert_reciprocity),
        LawSuite("qr", 200, _qr_cases, _check_qr),
        LawSuite("gauss-law", 99, _gauss_cases, _check_gauss),
        LawSuite("transport", 49, _transport_cases, _check_transport),
        LawSuite("crt", 200, _crt_cases, _check_crt),
        LawSuite("cocycle", 5, _cocycle_cases, _check_cocycle),
        LawSuite("factor-two", 50, _class_pairs, _check_factor_two),
        LawSuite("oracle-agreement", 50, _oracle_cases, _check_oracle),
        LawSuite("weil-product", 50, lambda bound: [(a,) for a in _nonzero_grid(bound)], _check_weil_product),
        LawSuite("hasse", 200, _hasse_cases, _check_hasse),
    )
}
