from math import comb, log

import pytest
from hypothesis import given, strategies as st

from valseries.errors import DomainError, UsageError
from valseries.valuation import (
    hamming_weight,
    hamming_weight_kummer,
    nu,
    nu_arithmetic_term,
    nu_uniform_series,
    tampered,
    valuation,
)


@pytest.mark.parametrize("q,n,v", [(2, 8, 3), (2, 12, 2), (3, 81, 4), (3, 2, 0),
                                   (5, 2024, 0), (10, 1000, 3), (6, 72, 2)])
def test_known_values(q, n, v):
    assert nu(q, n) == v


def test_arithmetic_term_examples():
    assert nu_arithmetic_term(2, 8) == 3
    assert nu_arithmetic_term(3, 54) == 3
    assert nu_arithmetic_term(5, 2024) == nu(5, 2024)


def test_uniform_series_by_hand():
    # 2^16 * (1/255 + 1/65535 + ...) floors to 258, and 258 mod 16 = 2
    assert nu_uniform_series(2, 4) == 2
    assert nu_uniform_series(2, 1) == 0
    assert nu_uniform_series(3, 2) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_three_routes_agree(p):
    for n in range(1, 301):
        assert nu_arithmetic_term(p, n) == nu(p, n)
    for n in range(1, 17):
        assert nu_uniform_series(p, n) == nu(p, n)


def test_methods_by_name():
    assert {valuation(2, 8, m) for m in ("direct", "term", "series")} == {3}
    with pytest.raises(UsageError):
        valuation(2, 8, "abacus")


def test_errors():
    with pytest.raises(DomainError, match="zero"):
        nu(2, 0)
    with pytest.raises(DomainError):
        nu(2, -4)
    with pytest.raises(UsageError):
        nu(1, 5)
    with pytest.raises(UsageError):
        nu_arithmetic_term(4, 8)
    with pytest.raises(UsageError):
        nu_uniform_series(6, 8)


@given(st.integers(2, 12), st.integers(1, 10**4))
def test_multiplying_by_base_adds_one(q, n):
    assert nu(q, q * n) == 1 + nu(q, n)


def test_log_bound_with_equality_at_powers():
    for q in (2, 3, 5, 10):
        powers = {q**k for k in range(20)}
        for n in range(1, 10**4 + 1):
            v = nu(q, n)
            assert q**v <= n
            assert (q**v == n) == (n in powers)
            assert v <= log(n) / log(q) + 1e-9


def test_hamming_weight():
    assert hamming_weight(7) == 3 and hamming_weight(8) == 1
    assert comb(14, 7) == 3432 and hamming_weight_kummer(7) == 3
    for n in range(1, 10**4 + 1):
        assert hamming_weight(2 * n) == hamming_weight(n)
        assert hamming_weight(2 * n + 1) == hamming_weight(n) + 1
    for n in range(1, 400):
        assert hamming_weight_kummer(n) == hamming_weight(n)


def test_tamper_hook_is_scoped():
    with tampered(2, 12, 5):
        assert nu(2, 12) == 5
        assert nu(2, 24) == 3
    assert nu(2, 12) == 2
