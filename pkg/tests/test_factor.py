import pytest

from ideal_graphs.factor import MAX_N, factorize, is_prime, parse_signature, signature_of
from ideal_graphs.models import DomainError, Factorization, PrimePower, Signature

def _as_pairs(f: Factorization):
    return [(pp.prime, pp.exponent) for pp in f]

def test_is_prime_small():
    primes = [n for n in range(50) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

def test_is_prime_carmichael_and_mersenne():
    assert not is_prime(561)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert is_prime(2 ** 61 - 1)

def test_factorize_small():
    assert _as_pairs(factorize(360)) == [(2, 3), (3, 2), (5, 1)]
    assert _as_pairs(factorize(2)) == [(2, 1)]
    assert factorize(900).value == 900

def test_factorize_needs_rho():
    n = 1_000_000_007 * 998_244_353
    assert _as_pairs(factorize(n)) == [(998_244_353, 1), (1_000_000_007, 1)]
    assert _as_pairs(factorize(600851475143)) == [(71, 1), (839, 1), (1471, 1), (6857, 1)]

def test_factorize_large_prime_square():
    p = 4_294_967_291  # largest prime below 2**32
    assert _as_pairs(factorize(p * p)) == [(p, 2)]

def test_factorize_rejects():
    for bad in (0, 1, -12, MAX_N + 1):
        with pytest.raises(DomainError):
            factorize(bad)
    with pytest.raises(DomainError):
        factorize(True)
    with pytest.raises(DomainError):
        factorize(12.0)

def test_no_proper_ideals_message():
    with pytest.raises(DomainError, match="no proper ideals"):
        factorize(1)

def test_signature_of_sorts_exponents():
    assert signature_of(factorize(12)) == Signature((1, 2))
    assert signature_of(factorize(18)) == Signature((1, 2))
    assert signature_of(factorize(60)) == Signature((1, 1, 2))

def test_primes_by_position_follow_signature():
    # 12 = 2^2 * 3: the exponent-1 prime comes first
    assert factorize(12).primes_by_position() == (3, 2)
    assert factorize(30).primes_by_position() == (2, 3, 5)

def test_factorization_validation():
    with pytest.raises(DomainError):
        Factorization((PrimePower(3, 1), PrimePower(2, 1)))
    with pytest.raises(DomainError):
        Factorization(())

def test_parse_signature():
    assert parse_signature("2,1") == Signature((1, 2))
    assert parse_signature("[1, 2, 2]") == Signature((1, 2, 2))
    assert parse_signature("5") == Signature((5,))
    for bad in ("", "a,b", "0,1", "-1", "[]"):
        with pytest.raises(DomainError):
            parse_signature(bad)

def test_signature_validation():
    with pytest.raises(DomainError):
        Signature((2, 1))
    with pytest.raises(DomainError):
        Signature(())
    assert str(Signature((1, 1, 2))) == "1,1,2"
    assert Signature.of([3, 1]).exponents == (1, 3)
