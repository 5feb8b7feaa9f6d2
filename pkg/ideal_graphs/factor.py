import logging
import math
from typing import Dict, List

from .models import DomainError, Factorization, PrimePower, Signature

logger = logging.getLogger(__name__)

MAX_N = 2 ** 64 - 1

# Deterministic Miller-Rabin for every n < 3.3 * 10**24 with these bases.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

TRIAL_LIMIT = 1000


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for the 64-bit range."""
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """
    Find a non-trivial factor of the odd composite n with Brent's variant of
    Pollard rho. Polynomial constants are tried in order, so the result is
    deterministic.
    """
    root = math.isqrt(n)
    if root * root == n:
        return root
    for c in range(1, n):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            # Backtrack one step at a time from the last saved point.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise DomainError(f"rho failed to split {n}")


def _split(n: int, out: Dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """
    Factor 2 <= n < 2**64 into prime powers, primes increasing.
    Trial division strips small primes; Pollard rho handles the cofactor.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 2:
        raise DomainError(f"n={n}: no proper ideals to analyze")
    if n > MAX_N:
        raise DomainError(f"n={n} does not fit in 64 bits; pass a signature instead")

    counts: Dict[int, int] = {}
    rest = n
    p = 2
    while p <= TRIAL_LIMIT and p * p <= rest:
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
        p += 1 if p == 2 else 2
    if rest > 1:
        _split(rest, counts)

    factors = tuple(PrimePower(q, counts[q]) for q in sorted(counts))
    logger.debug(f"factorize({n}) = {factors}")
    return Factorization(factors)


def signature_of(f: Factorization) -> Signature:
    """Discard the primes and sort the exponents."""
    return Signature.of(pp.exponent for pp in f)


def parse_signature(text: str) -> Signature:
    """Parse "1,2,2" (brackets and spaces tolerated) into a Signature."""
    cleaned = text.strip().strip("[]()")
    parts: List[str] = [p.strip() for p in cleaned.split(",") if p.strip()]
    if not parts:
        raise DomainError(f"empty signature: {text!r}")
    try:
        exponents = [int(p) for p in parts]
    except ValueError:
        raise DomainError(f"signature entries must be integers: {text!r}") from None
    if any(e < 1 for e in exponents):
        raise DomainError(f"signature entries must be >= 1: {text!r}")
    return Signature.of(exponents)
