"""
Closed-form clique numbers of G(Z_n).

Every formula is guarded by its own applicability predicate and answers
"not applicable" outside it rather than guessing. When applicable, the value
equals families.omega(s).
"""
import logging
import math
from typing import Callable, List, Tuple

from .lattice import support_population
from .models import FormulaResult, Signature

logger = logging.getLogger(__name__)


def _not_applicable(name: str) -> FormulaResult:
    return FormulaResult(name=name, applicable=False)


def _all_equal(s: Signature) -> bool:
    return len(set(s.exponents)) == 1


def _count_with_min_support(s: Signature, min_size: int) -> int:
    """Vertices with at least `min_size` non-zero components."""
    return sum(
        support_population(mask, s)
        for mask in range(1, s.full_support + 1)
        if mask.bit_count() >= min_size
    )


def omega_prime_power(s: Signature) -> FormulaResult:
    name = "omega_prime_power"
    if s.m != 1:
        return _not_applicable(name)
    return FormulaResult(name, True, s[0] - 1)


def omega_two_primes(s: Signature) -> FormulaResult:
    name = "omega_two_primes"
    if s.m != 2:
        return _not_applicable(name)
    n1, n2 = s.exponents
    return FormulaResult(name, True, n2 * (n1 + 1) - 1)


def omega_squarefree(s: Signature) -> FormulaResult:
    name = "omega_squarefree"
    if any(e != 1 for e in s):
        return _not_applicable(name)
    return FormulaResult(name, True, 2 ** (s.m - 1) - 1)


def omega_field_product(s: Signature) -> FormulaResult:
    # A product of m fields has the ideal lattice of a squarefree n with m primes.
    name = "omega_field_product"
    if any(e != 1 for e in s):
        return _not_applicable(name)
    return FormulaResult(name, True, 2 ** (s.m - 1) - 1, {"fields": s.m})


def omega_dominant(s: Signature) -> FormulaResult:
    """The largest exponent dominates the product of all the others."""
    name = "omega_dominant"
    head, top = s.exponents[:-1], s.exponents[-1]
    if top < math.prod(head):
        return _not_applicable(name)
    return FormulaResult(name, True, top * math.prod(e + 1 for e in head) - 1)


def omega_odd_m(s: Signature) -> FormulaResult:
    name = "omega_odd_m"
    m = s.m
    if m <= 1 or m % 2 == 0:
        return _not_applicable(name)
    half = m // 2
    largest = math.prod(s.exponents[m - half:])
    smallest = math.prod(s.exponents[:m - half])
    if largest > smallest:
        return _not_applicable(name)
    return FormulaResult(name, True, _count_with_min_support(s, m - half))


def odd_equal_value(alpha: int, m: int) -> int:
    return sum(math.comb(m, i) * alpha ** (m - i) for i in range(m // 2 + 1)) - 1


def omega_odd_equal(s: Signature) -> FormulaResult:
    name = "omega_odd_equal"
    if s.m % 2 == 0 or not _all_equal(s):
        return _not_applicable(name)
    return FormulaResult(name, True, odd_equal_value(s[0], s.m), {"alpha": s[0], "m": s.m})


def _half_size_pairs(s: Signature) -> List[Tuple[int, int]]:
    full = s.full_support
    half = s.m // 2
    return [
        (mask, full ^ mask)
        for mask in range(1, full)
        if mask.bit_count() == half and mask < full ^ mask
    ]


def omega_even_m(s: Signature) -> FormulaResult:
    """
    Vertices with at most m/2 - 1 zero components, plus for each complementary
    pair of half-size supports the heavier family (either one on a tie).
    """
    name = "omega_even_m"
    m = s.m
    if m <= 2 or m % 2 == 1:
        return _not_applicable(name)
    largest = math.prod(s.exponents[m - (m // 2 - 1):])
    smallest = math.prod(s.exponents[:m // 2 + 1])
    if largest > smallest:
        return _not_applicable(name)

    tie_weight = 0
    half_weight = 0
    for mask, other in _half_size_pairs(s):
        w, w_other = support_population(mask, s), support_population(other, s)
        half_weight += max(w, w_other)
        if w == w_other:
            tie_weight += w
    value = _count_with_min_support(s, m // 2 + 1) + half_weight
    if tie_weight != half_weight:
        logger.debug(f"[{s}]: half-size strict winners add {half_weight - tie_weight} beyond the tie set")
    return FormulaResult(name, True, value, {"tie_weight": tie_weight, "half_size_weight": half_weight})


def even_equal_value(alpha: int, m: int) -> int:
    head = sum(math.comb(m, i) * alpha ** (m - i) for i in range(m // 2))
    return head + math.comb(m, m // 2) * alpha ** (m // 2) // 2 - 1


def omega_even_equal(s: Signature) -> FormulaResult:
    name = "omega_even_equal"
    if s.m % 2 == 1 or not _all_equal(s):
        return _not_applicable(name)
    return FormulaResult(name, True, even_equal_value(s[0], s.m), {"alpha": s[0], "m": s.m})


FORMULAS: Tuple[Callable[[Signature], FormulaResult], ...] = (
    omega_prime_power,
    omega_two_primes,
    omega_squarefree,
    omega_field_product,
    omega_dominant,
    omega_odd_m,
    omega_odd_equal,
    omega_even_m,
    omega_even_equal,
)


def evaluate_all(s: Signature) -> List[FormulaResult]:
    return [formula(s) for formula in FORMULAS]
