import itertools

import pytest

from ideal_graphs.families import omega
from ideal_graphs.formulas import (
    even_equal_value,
    evaluate_all,
    odd_equal_value,
    omega_dominant,
    omega_even_equal,
    omega_even_m,
    omega_field_product,
    omega_odd_equal,
    omega_odd_m,
    omega_prime_power,
    omega_squarefree,
    omega_two_primes,
)
from ideal_graphs.models import ContractViolation, FormulaResult, Signature

def _value(formula, *exps):
    result = formula(Signature(exps))
    assert result.applicable, (formula.__name__, exps)
    return result.value

def test_prime_power():
    assert _value(omega_prime_power, 5) == 4
    assert not omega_prime_power(Signature((1, 2))).applicable

def test_two_primes():
    assert _value(omega_two_primes, 1, 2) == 3
    assert _value(omega_two_primes, 2, 2) == 5
    assert not omega_two_primes(Signature((1, 1, 1))).applicable

def test_squarefree_and_fields():
    assert _value(omega_squarefree, 1, 1, 1) == 3
    assert _value(omega_squarefree, 1, 1, 1, 1) == 7
    field = omega_field_product(Signature((1, 1, 1, 1)))
    assert field.value == 7
    assert field.detail == {"fields": 4}
    assert not omega_squarefree(Signature((1, 2))).applicable

def test_dominant():
    assert _value(omega_dominant, 1, 1, 2) == 7
    assert _value(omega_dominant, 2, 2, 5) == 44
    assert _value(omega_dominant, 1, 1, 1, 3) == 23
    assert _value(omega_dominant, 1, 2, 3) == 17
    assert not omega_dominant(Signature((2, 2, 3))).applicable

def test_odd_m():
    assert _value(omega_odd_m, 1, 1, 1) == 3
    assert _value(omega_odd_m, 2, 2, 3) == 27
    # 3 > 1 * 2
    assert not omega_odd_m(Signature((1, 2, 3))).applicable
    assert not omega_odd_m(Signature((1, 2))).applicable

def test_odd_equal():
    assert _value(omega_odd_equal, 2, 2, 2) == 19
    assert odd_equal_value(1, 3) == 3
    assert odd_equal_value(3, 1) == 2
    assert not omega_odd_equal(Signature((1, 2, 2))).applicable

def test_even_m_adds_strict_half_size_winner():
    result = omega_even_m(Signature((1, 1, 2, 2)))
    assert result.applicable
    assert result.value == 23
    assert result.detail == {"tie_weight": 4, "half_size_weight": 8}
    assert omega(Signature((1, 1, 2, 2))) == 23

def test_even_m_predicate():
    assert _value(omega_even_m, 1, 1, 1, 1) == 7
    assert not omega_even_m(Signature((1, 1, 1, 3))).applicable
    assert not omega_even_m(Signature((1, 2))).applicable

def test_even_equal_as_written():
    assert _value(omega_even_equal, 2, 2, 2, 2) == 59
    assert omega(Signature((2, 2, 2, 2))) == 59
    assert even_equal_value(1, 4) == 7
    assert even_equal_value(2, 2) == 5

def test_formula_result_contract():
    with pytest.raises(ContractViolation):
        FormulaResult("broken", True)
    with pytest.raises(ContractViolation):
        FormulaResult("broken", False, 3)

def test_evaluate_all_names_are_stable():
    names = [f.name for f in evaluate_all(Signature((1, 2)))]
    assert names == [
        "omega_prime_power", "omega_two_primes", "omega_squarefree", "omega_field_product",
        "omega_dominant", "omega_odd_m", "omega_odd_equal", "omega_even_m", "omega_even_equal",
    ]

def test_applicable_formulas_agree_with_construction():
    for m in range(1, 6):
        for exps in itertools.combinations_with_replacement(range(1, 5), m):
            s = Signature(exps)
            expected = omega(s)
            for result in evaluate_all(s):
                if result.applicable:
                    assert result.value == expected, (exps, result)
