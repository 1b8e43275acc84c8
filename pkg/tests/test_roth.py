import random
from fractions import Fraction
from math import gcd, log

import pytest
from hypothesis import given, settings, strategies as st

from valseries.errors import DomainError, UsageError
from valseries.roth import (
    DELTA_GRID,
    RothInstance,
    admissible,
    convergent,
    least_n0,
    q_threshold,
    roth_inequality_check,
    scan,
)


@pytest.mark.parametrize("a,b,q", [(1, 2024, 3), (1, 2, 3), (2, 3, 6), (2, 5, 4)])
def test_threshold_examples(a, b, q):
    assert q_threshold(a, b) == q


def test_threshold_domain():
    with pytest.raises(DomainError):
        q_threshold(3, 2)
    with pytest.raises(DomainError):
        q_threshold(2, 4)


def test_threshold_matches_logarithms():
    rng = random.Random(3)
    for _ in range(200):
        b = rng.randint(2, 10**4)
        a = rng.randint(1, b - 1)
        if gcd(a, b) != 1:
            continue
        q = q_threshold(a, b)
        assert admissible(q, a, b) and not admissible(q - 1, a, b)
        assert all(admissible(q + i, a, b) for i in range(1, 4))
        real = 2 * log(b) / (log(b) - log(a))
        # least integer strictly above the real bound, up to float rounding at ties
        assert abs(q - (int(real) + 1)) <= 1


def test_first_convergents():
    r = convergent(RothInstance(3, 1, 2024), 1)
    assert (r.A, r.B) == (1, 2024**3 - 1)
    assert r.error_hi <= 4 * Fraction(1, 2024) ** 9
    r = convergent(RothInstance(3, 1, 2), 1)
    assert (r.A, r.B) == (1, 7)


def test_mod_k_convergent():
    inst = RothInstance(2, 1, 3, k=2)
    r = convergent(inst, 2)
    assert r.B == 80
    # a_1 = 1, a_2 = 1 - 2: 1/8 - 1/80
    assert Fraction(r.A, r.B) == Fraction(1, 8) - Fraction(1, 80)


def test_roth_example_rows():
    inst = RothInstance(3, 1, 2024)
    for n in (1, 2):
        assert roth_inequality_check(inst, n, Fraction(1, 2))
    # delta = 0 is the plain B^-2 comparison
    r = convergent(RothInstance(2, 1, 3), 1)
    assert r.roth_ok(0) == (r.error_hi * r.B**2 <= 1)


def test_beats_uses_exact_powers():
    r = convergent(RothInstance(3, 1, 2024), 1)
    e, B = r.error_hi, r.B
    assert r.roth_ok(Fraction(1, 2)) == (e**2 * B**5 <= 1)
    assert r.roth_ok(Fraction(1, 4)) == (e**4 * B**9 <= 1)
    with pytest.raises(UsageError):
        r.roth_ok(-1)


def test_index_guard():
    inst = RothInstance(2, 9, 10)
    with pytest.raises(DomainError, match="index too small"):
        convergent(inst, 1)
    assert inst.first_index() > 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(2, 30), st.data(),
       st.sampled_from([None, 2, 3]))
def test_integrality_and_sandwich(q, b, data, k):
    a = data.draw(st.integers(1, b - 1))
    if gcd(a, b) != 1:
        return
    inst = RothInstance(q, a, b, k)
    n = inst.first_index()
    if q ** (n + 2) * b.bit_length() > 2 * 10**5:
        return
    r = convergent(inst, n)  # raises if B_n times the partial sum is not an integer
    assert r.B >= 1
    assert 0 <= r.error_lo <= r.error_hi <= r.bound_rhs


def test_scan_examples():
    res = scan(RothInstance(3, 1, 2024), 3, Fraction(1, 2))
    assert len(res.rows) == 3 and all(res.verdicts)
    assert res.B_increasing and res.error_decreasing and res.n0 == 1
    flagged = scan(RothInstance(2, 1, 2), 3)
    assert not flagged.condition_ok and flagged.rows
    assert "q_threshold=3" in flagged.flags[0]
    low = scan(RothInstance(5, 2, 5), 2)
    assert low.rows and low.condition_ok == (5 >= q_threshold(2, 5))
    with pytest.raises(UsageError):
        scan(RothInstance(3, 1, 2), 0)


@pytest.mark.parametrize("a,b", [(1, 2), (1, 3), (2, 3), (2, 5), (1, 10), (3, 7)])
def test_roth_chain_at_threshold(a, b):
    q = q_threshold(a, b)
    inst = RothInstance(q, a, b)
    n_max = 2 if q >= 5 else 3
    found = least_n0(inst, n_max)
    assert found is not None, (q, a, b)
    delta, n0 = found
    assert delta in DELTA_GRID and n0 <= 4
    for n in range(n0, n_max + 1):
        if inst.index_ok(n):
            assert roth_inequality_check(inst, n, delta)


def test_roth_chain_mod_k():
    inst = RothInstance(3, 1, 2, k=2)
    assert least_n0(inst, 3) is not None
