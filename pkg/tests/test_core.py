import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from valseries.core import (
    CycElem,
    IntegerEchelon,
    Poly,
    PrimeFieldElem,
    TruncSeries,
    cyclotomic_polynomial,
    nullspace_mod_p,
    rat_from_str,
    rat_nullspace,
    rat_to_str,
    series_inv_geometric,
    series_mul,
)
from valseries.errors import UsageError

small = st.integers(-50, 50)


def cyc(m):
    return st.lists(small, min_size=m, max_size=m).map(lambda c: CycElem(m, c))


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_rat_roundtrip_is_canonical(n, d):
    x = Fraction(n, d)
    s = rat_to_str(x)
    assert rat_from_str(s) == x
    num, den = map(int, s.split("/"))
    assert den > 0 and Fraction(num, den).denominator == den


@pytest.mark.parametrize("bad", ["", "1/0", "a/2", "1.5"])
def test_rat_from_str_rejects(bad):
    with pytest.raises(UsageError):
        rat_from_str(bad)


@settings(max_examples=60)
@given(cyc(6), cyc(6), cyc(6))
def test_cyc_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycElem(6)
    assert a * 1 == a


@settings(max_examples=40)
@given(st.integers(1, 8).flatmap(lambda m: st.tuples(st.just(m), cyc(m), cyc(m))))
def test_reduction_mod_cyclotomic_is_a_homomorphism(args):
    m, a, b = args
    for d in (d for d in range(1, m + 1) if m % d == 0):
        phi = cyclotomic_polynomial(d)
        ra, rb = Poly(a.reduce_cyclotomic(d)), Poly(b.reduce_cyclotomic(d))
        _, prod = (ra * rb).divmod_monic(phi)
        assert Poly((a * b).reduce_cyclotomic(d)) == prod
        # numeric oracle: evaluation at a primitive d-th root of unity
        w = cmath.exp(2j * cmath.pi / d)
        lhs = sum(c * w**i for i, c in enumerate((a * b).coeffs))
        rhs = sum(c * w**i for i, c in enumerate(a.coeffs)) * sum(
            c * w**i for i, c in enumerate(b.coeffs))
        assert abs(lhs - rhs) < 1e-6 * (1 + abs(rhs))


def test_cyclotomic_polynomials_match_known_values():
    assert cyclotomic_polynomial(1).coeffs == (-1, 1)
    assert cyclotomic_polynomial(4).coeffs == (1, 0, 1)
    assert cyclotomic_polynomial(6).coeffs == (1, -1, 1)
    assert cyclotomic_polynomial(12).coeffs == (1, 0, -1, 0, 1)


def test_cyc_json_roundtrip_and_mixing():
    a = CycElem(4, [1, -2, 0, 10**40])
    assert CycElem.from_json(a.to_json()) == a
    with pytest.raises(UsageError):
        a + CycElem(3)
    assert CycElem.monomial(4, 1) ** 4 == 1


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7, 101]), small, small, small)
def test_prime_field_axioms(p, x, y, z):
    a, b, c = (PrimeFieldElem(p, v) for v in (x, y, z))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if int(a) % p:
        assert a * a.inverse() == PrimeFieldElem(p, 1)
        assert (b / a) * a == b


def test_prime_field_rejects_zero_inverse():
    with pytest.raises((UsageError, ZeroDivisionError)):
        PrimeFieldElem(5, 10).inverse()


@settings(max_examples=50)
@given(st.lists(small, min_size=1, max_size=20), st.lists(small, min_size=1, max_size=20))
def test_series_mul_matches_numpy_convolution(a, b):
    N = max(len(a), len(b))
    a = a + [0] * (N - len(a))
    b = b + [0] * (N - len(b))
    got = series_mul(TruncSeries(a), TruncSeries(b))
    want = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))[:N]
    assert list(got) == list(want)


def test_geometric_block_times_denominator_is_numerator():
    N, e = 40, 3
    u = Fraction(2, 3)
    g = series_inv_geometric(u, e, N)
    denom = [Fraction(0)] * N
    denom[0], denom[e] = Fraction(1), -u
    prod = series_mul(g, TruncSeries(denom))
    expected = [Fraction(0)] * N
    expected[e] = u
    assert list(prod) == expected


def test_series_guards():
    with pytest.raises(UsageError):
        TruncSeries([])
    with pytest.raises(UsageError):
        TruncSeries([1, 2]) + TruncSeries([1, 2, 3])
    with pytest.raises(UsageError):
        TruncSeries([1, CycElem(2)])
    with pytest.raises(UsageError):
        series_inv_geometric(1, 0, 5)


def test_series_csv_roundtrip():
    s = TruncSeries([0, 1, Fraction(-3, 7), 0, 5])
    assert TruncSeries.from_csv(s.to_csv(), 5) == s
    assert s.to_csv().splitlines()[0] == "exponent,coefficient"


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_rat_nullspace_is_a_kernel_of_the_right_size(rows, cols, data):
    mat = [[data.draw(st.integers(-4, 4)) for _ in range(cols)] for _ in range(rows)]
    basis = rat_nullspace(mat)
    for v in basis:
        assert any(v)
        assert all(sum(Fraction(a) * x for a, x in zip(r, v)) == 0 for r in mat)
    rank = np.linalg.matrix_rank(np.array(mat, dtype=float))
    assert len(basis) == cols - rank


def test_integer_echelon_kernel_is_primitive():
    ech = IntegerEchelon(3)
    ech.add_row([2, 4, 6])
    (v,) = [k for k in ech.kernel() if k[1]]
    assert all(x.denominator == 1 for x in v)


def test_nullspace_mod_p():
    mat = [[1, 1, 0], [0, 1, 1]]
    (v,) = nullspace_mod_p(mat, 2)
    assert all(sum(a * x for a, x in zip(r, v)) % 2 == 0 for r in mat)
    assert any(v)


def test_kernel_entries_stay_exact_when_pivot_row_is_sparse():
    assert rat_nullspace([[0, 1]]) == [[Fraction(1), Fraction(0)]]
    assert rat_nullspace([[1, 0], [0, 0]]) == [[Fraction(0), Fraction(1)]]
