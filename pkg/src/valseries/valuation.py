"""q-adic valuations computed along independent routes.

``nu`` divides directly; ``nu_arithmetic_term`` evaluates the closed
gcd/mod/floor term; ``nu_uniform_series`` reads the value off the binary
expansion of the generating series at 2^-n. All three must agree.
"""

from __future__ import annotations

import contextlib
import enum
from fractions import Fraction
from math import comb, gcd

from .core.rings import is_prime
from .errors import DomainError, UsageError

__all__ = [
    "ValuationMethod",
    "nu",
    "nu_arithmetic_term",
    "nu_uniform_series",
    "hamming_weight",
    "hamming_weight_kummer",
    "valuation",
    "tampered",
]


class ValuationMethod(enum.Enum):
    DIRECT = "direct"
    TERM = "term"
    SERIES = "series"


# fault-injection hook for the verification harness; empty in normal use
_OVERRIDES: dict[tuple[int, int], int] = {}


@contextlib.contextmanager
def tampered(q: int, n: int, value: int):
    """Temporarily make ``nu(q, n)`` return ``value``."""
    _OVERRIDES[(q, n)] = value
    try:
        yield
    finally:
        _OVERRIDES.pop((q, n), None)


def _check_args(q, n):
    if q < 2:
        raise UsageError(f"base must be >= 2, got {q}")
    if n == 0:
        raise DomainError("valuation of zero undefined")
    if n < 0:
        raise DomainError(f"valuation defined for n >= 1, got {n}")


def _check_prime(p):
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")


def nu(q: int, n: int) -> int:
    """Largest k with q^k | n."""
    _check_args(q, n)
    if _OVERRIDES:
        hit = _OVERRIDES.get((q, n))
        if hit is not None:
            return hit
    if q == 2:
        return (n & -n).bit_length() - 1
    k = 0
    while n % q == 0:
        n //= q
        k += 1
    return k


def nu_arithmetic_term(p: int, n: int) -> int:
    _check_args(p, n)
    _check_prime(p)
    # gcd(n, p^n) == gcd(n, p^m) for the least m with p^m >= n
    pm = 1
    while pm < n:
        pm *= p
    g = gcd(n, pm)
    modulus = p ** (n + 1) - 1
    return pow(g, n + 1, modulus * modulus) // modulus


def _uniform_tail(n: int, p: int, k_next: int) -> Fraction:
    # sum_{k >= k_next} 1/(2^{n p^k} - 1) <= 2 * sum_k 2^{-n p^k} <= 4 * 2^{-n p^k_next}
    return Fraction(4, 2 ** (n * p**k_next))


def nu_uniform_series(p: int, n: int) -> int:
    """floor(2^(n^2) V_p(2^-n)) mod 2^n with a certified truncation of the series.

    V_p(2^-n) is the sum over k >= 1 of 1/(2^(n p^k) - 1). Terms are added until
    n p^k exceeds n^2 + n + 2; more are added only if the tail bound could still
    move the floor.
    """
    _check_args(p, n)
    _check_prime(p)
    scale = 2 ** (n * n)
    s = Fraction(0)
    k = 1
    while True:
        e = n * p**k
        if e > n * n + n + 2:
            lo = s * scale
            hi = (s + _uniform_tail(n, p, k)) * scale
            if lo.__floor__() == hi.__floor__():
                break
        s += Fraction(1, 2**e - 1)
        k += 1
    return (s * scale).__floor__() % 2**n


def hamming_weight(n: int) -> int:
    """Number of ones in the binary expansion of n."""
    if n < 1:
        raise DomainError(f"Hamming weight taken for n >= 1, got {n}")
    return bin(n).count("1")


def hamming_weight_kummer(n: int) -> int:
    """The 2-adic valuation of C(2n, n); equals the Hamming weight by Kummer's theorem."""
    if n < 1:
        raise DomainError(f"Hamming weight taken for n >= 1, got {n}")
    return nu(2, comb(2 * n, n))


_DISPATCH = {
    ValuationMethod.DIRECT: nu,
    ValuationMethod.TERM: nu_arithmetic_term,
    ValuationMethod.SERIES: nu_uniform_series,
}


def valuation(q: int, n: int, method: ValuationMethod | str = ValuationMethod.DIRECT) -> int:
    try:
        method = ValuationMethod(method)
    except ValueError:
        raise UsageError(f"unknown method {method!r}") from None
    return _DISPATCH[method](q, n)
