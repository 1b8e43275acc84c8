import random
from fractions import Fraction

import pytest

from valseries.errors import DomainError, UsageError
from valseries.series import (
    SeriesSpec,
    TailBound,
    block_value,
    coeffs,
    enclosure,
    eval_partial,
    partial_fraction_sum,
    positive_segments_check,
    segment_terms,
    specialize,
    twist_difference,
    twist_difference_check,
)
from valseries.valuation import nu


def test_coefficient_examples():
    assert coeffs(SeriesSpec(2), 13)[12] == 2
    assert list(coeffs(SeriesSpec(2, 2), 9))[1:] == [0, 1, 0, 0, 0, 1, 0, 1]
    c = coeffs(SeriesSpec(3), 10)
    assert c.nonzero_terms() == [(3, 1), (6, 1), (9, 2)]


@pytest.mark.parametrize("spec", [SeriesSpec(2), SeriesSpec(3), SeriesSpec(5),
                                  SeriesSpec(2, 2), SeriesSpec(2, 3), SeriesSpec(3, 2),
                                  SeriesSpec(3, 4), SeriesSpec(4, 3), SeriesSpec(6)])
def test_partial_fractions_reproduce_coefficients(spec):
    assert coeffs(spec, 1500) == partial_fraction_sum(spec, 1500)


def test_partial_fractions_small_cases():
    for spec in (SeriesSpec(2), SeriesSpec(3, 2)):
        assert partial_fraction_sum(spec, 2).nonzero_terms() == []
    s = partial_fraction_sum(SeriesSpec(3, 2), 82)
    # weights alternate 1, 1-k = -1 for k = 2
    assert s[81] == 0 == 1 + (1 - 2) + 1 + (1 - 2)


@pytest.mark.parametrize("q,k", [(2, 2), (2, 3), (3, 2), (3, 4), (5, 3)])
def test_telescoping_coefficient(q, k):
    spec = SeriesSpec(q, k)
    N = 4000
    pf = partial_fraction_sum(spec, N)
    r = 0
    while q**r < N:
        # only blocks j <= r divide m q^r when q does not divide m
        assembled = sum(spec.weight(j) for j in range(1, r + 1))
        assert assembled == r % k
        for m in range(1, N // q**r + 1):
            if m % q and m * q**r < N:
                assert pf[m * q**r] == r % k
        r += 1


def test_weights():
    spec = SeriesSpec(2, 3)
    assert [spec.weight(j) for j in range(1, 7)] == [1, 1, -2, 1, 1, -2]
    assert all(abs(spec.weight(j)) <= 2 for j in range(1, 50))
    with pytest.raises(UsageError):
        SeriesSpec(2, 1)


def test_eval_examples():
    v, tail = eval_partial(SeriesSpec(3), Fraction(1, 2024), 1)
    assert v == Fraction(1, 2024**3 - 1)
    assert tail.bound == 4 * Fraction(1, 2024) ** 9
    v, _ = eval_partial(SeriesSpec(2), Fraction(1, 2), 1)
    assert v == Fraction(1, 3)


def test_eval_precondition():
    with pytest.raises(DomainError, match="increase n"):
        TailBound.build(2, Fraction(9, 10), 1, 1)
    with pytest.raises(DomainError):
        eval_partial(SeriesSpec(2), Fraction(3, 2), 2)


def _truncated_value(spec, x, N):
    # exact sum of c_n x^n for n < N by integer Horner in (a, b)
    a, b = x.numerator, x.denominator
    c = coeffs(spec, N)
    acc, bp = 0, 1
    for n in range(N - 1, -1, -1):
        acc = c[n] * bp + a * acc
        bp *= b
    return Fraction(acc, b ** (N - 1))


def test_mod_k_enclosure_contains_long_truncation():
    spec = SeriesSpec(2, 2)
    x = Fraction(1, 4)
    v, tail = eval_partial(spec, x, 3)
    lo, hi = enclosure(spec, v, tail)
    assert lo <= _truncated_value(spec, x, 2**16) <= hi


def test_enclosures_contain_deeper_sums():
    rng = random.Random(7)
    done = 0
    while done < 50:
        q = rng.choice([2, 3, 5])
        spec = SeriesSpec(q, rng.choice([None, 2, 3]))
        b = rng.randint(2, 40)
        a = rng.randint(1, b - 1)
        x = Fraction(a, b)
        n = rng.randint(1, 4)
        try:
            v, tail = eval_partial(spec, x, n)
        except DomainError:
            continue
        if q ** (n + 3) * b.bit_length() > 4 * 10**5:
            continue
        lo, hi = enclosure(spec, v, tail)
        deep, _ = eval_partial(spec, x, n + 3)
        assert lo <= deep <= hi
        assert 0 < tail.bound
        done += 1


def test_twist_examples():
    lhs, rhs = twist_difference(2, 1, 256)
    assert lhs.nonzero_terms() == [] and rhs.nonzero_terms() == []
    assert twist_difference_check(2, 2, 256).passed
    assert twist_difference_check(3, 3, 243).passed
    lhs, _ = twist_difference(2, 2, 64)
    image = specialize(lhs, 4)
    assert image == [(-2, 0) if n % 4 == 2 else (0, 0) for n in range(64)]


@pytest.mark.parametrize("q,ell", [(q, e) for q in (2, 3, 5) for e in (1, 2, 3)])
def test_twist_identity(q, ell):
    r = twist_difference_check(q, ell, max(64, 8 * q**ell))
    assert r.passed, r.witness


def test_twist_failure_carries_witness():
    from valseries import valuation
    with valuation.tampered(2, 6, 4):
        r = twist_difference_check(2, 2, 32)
    assert not r.passed
    assert r.witness["exponent"] == 6


def test_segment_terms():
    assert segment_terms(SeriesSpec(2), 4) == [(1, 4)]
    assert segment_terms(SeriesSpec(2, 3), 1) == [(1, 4), (1, 5), (-2, 6)]


def test_full_segments_are_the_blocks():
    r = positive_segments_check(SeriesSpec(2), Fraction(1, 2), 5)
    assert r.passed and r.witness["direction"] == "decreasing"
    vals = [block_value(Fraction(1, 2), 2**j) for j in range(1, 6)]
    assert all(v > 0 for v in vals) and vals == sorted(vals, reverse=True)


def test_mod_k_segments():
    r = positive_segments_check(SeriesSpec(2, 3), Fraction(1, 3), 4)
    assert all(r.witness["positive"])
    for x in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)):
        r = positive_segments_check(SeriesSpec(2, 2), x, 10)
        assert r.passed and r.witness["direction"] == "decreasing"


def test_segments_small_exact_agreement():
    # segment values from plain Fractions match the unreduced route's ordering
    spec, x = SeriesSpec(3, 2), Fraction(1, 2)
    vals = [sum((w * block_value(x, 3**r) for w, r in segment_terms(spec, j)), Fraction(0))
            for j in range(1, 4)]
    r = positive_segments_check(spec, x, 3)
    assert r.witness["positive"] == [v > 0 for v in vals]
    expected = "decreasing" if vals[0] > vals[1] > vals[2] else "increasing"
    assert r.witness["direction"] == expected


def test_segments_guard():
    with pytest.raises(UsageError):
        positive_segments_check(SeriesSpec(2, 5), Fraction(1, 2), 10)
    with pytest.raises(UsageError):
        positive_segments_check(SeriesSpec(2), Fraction(1, 2), 1)


def test_nu_used_by_series_is_the_same():
    c = coeffs(SeriesSpec(7), 400)
    assert all(c[n] == nu(7, n) for n in range(1, 400))
