"""The generating series of nu_q(n) and of nu_q(n) mod k.

Both are built two ways: directly from valuations, and as sums of the
geometric blocks f_r(X) = X^(q^r) / (1 - X^(q^r)) with weights a_r
(a_r = 1 for the full series; 1 or 1-k for the mod-k series). Values at
rational points come with a certified tail bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .core.rings import CycElem
from .core.series import TruncSeries, series_inv_geometric
from .errors import DomainError, UsageError
from .report import FAIL, PASS, Report
from .valuation import nu

__all__ = [
    "SeriesSpec",
    "TailBound",
    "coeffs",
    "geometric_block",
    "partial_fraction_sum",
    "block_value",
    "eval_partial",
    "enclosure",
    "twist_difference",
    "twist_difference_check",
    "specialize",
    "segment_terms",
    "positive_segments_check",
]


@dataclass(frozen=True)
class SeriesSpec:
    q: int
    k: int | None = None

    def __post_init__(self):
        if self.q < 2:
            raise UsageError(f"q must be >= 2, got {self.q}")
        if self.k is not None and self.k < 2:
            raise UsageError(f"k must be >= 2, got {self.k}")

    @classmethod
    def full(cls, q: int) -> "SeriesSpec":
        return cls(q)

    @classmethod
    def mod_k(cls, q: int, k: int) -> "SeriesSpec":
        return cls(q, k)

    @property
    def is_full(self) -> bool:
        return self.k is None

    @property
    def coefficient_bound(self) -> int:
        """M with |a_j| <= M; 1 for the full series, k for the reduced one."""
        return 1 if self.k is None else self.k

    def coefficient(self, n: int) -> int:
        v = nu(self.q, n)
        return v if self.k is None else v % self.k

    def weight(self, j: int) -> int:
        if j < 1:
            raise UsageError("block index starts at 1")
        if self.k is None or j % self.k:
            return 1
        return 1 - self.k

    def label(self) -> str:
        return f"V_{self.q}" if self.k is None else f"V_{self.q},{self.k}"


def coeffs(spec: SeriesSpec, N: int) -> TruncSeries:
    if N < 1:
        raise UsageError("N must be >= 1")
    return TruncSeries([0] + [spec.coefficient(n) for n in range(1, N)])


def geometric_block(q: int, r: int, N: int, u=1) -> TruncSeries:
    """f_r(uX) modulo X^N when u is a root-of-unity symbol; plain f_r for u = 1."""
    return series_inv_geometric(u, q**r, N)


def partial_fraction_sum(spec: SeriesSpec, N: int) -> TruncSeries:
    if N < 1:
        raise UsageError("N must be >= 1")
    out = TruncSeries.zero(N)
    j = 1
    while spec.q**j < N:
        out = out + spec.weight(j) * geometric_block(spec.q, j, N)
        j += 1
    return out


def block_value(x: Fraction, Q: int) -> Fraction:
    """x^Q / (1 - x^Q) for rational x = a/b, written as a^Q / (b^Q - a^Q)."""
    a, b = x.numerator, x.denominator
    aq = a**Q
    return Fraction(aq, b**Q - aq)


@dataclass(frozen=True)
class TailBound:
    """|E| <= 4 M x^(q^(n+1)) for the omitted blocks n+1, n+2, ..., valid once x^(q^n) < 1/2."""

    q: int
    a: int
    b: int
    n: int
    M: int
    bound: Fraction

    @classmethod
    def build(cls, q: int, x: Fraction, n: int, M: int) -> "TailBound":
        a, b = x.numerator, x.denominator
        Q = q**n
        if not 2 * a**Q < b**Q:
            raise DomainError(
                f"tail bound needs (a/b)^(q^n) < 1/2; increase n (got n={n})"
            )
        return cls(q, a, b, n, M, 4 * M * x ** (Q * q))

    def to_dict(self):
        return {"q": self.q, "a": self.a, "b": self.b, "n": self.n, "M": self.M,
                "bound": self.bound}


def _check_point(x) -> Fraction:
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"evaluation point must lie in (0, 1), got {x}")
    return x


def eval_partial(spec: SeriesSpec, x, n: int) -> tuple[Fraction, TailBound]:
    """Exact sum of the first n weighted blocks at x, with a bound on the rest."""
    x = _check_point(x)
    if n < 1:
        raise UsageError("need at least one block")
    tail = TailBound.build(spec.q, x, n, spec.coefficient_bound)
    value = sum(
        (spec.weight(j) * block_value(x, spec.q**j) for j in range(1, n + 1)),
        Fraction(0),
    )
    return value, tail


def enclosure(spec: SeriesSpec, value: Fraction, tail: TailBound) -> tuple[Fraction, Fraction]:
    """Interval that provably contains the full series value."""
    if spec.is_full:
        # every omitted block is positive
        return value, value + tail.bound
    return value - tail.bound, value + tail.bound


def twist_difference(q: int, ell: int, N: int) -> tuple[TruncSeries, TruncSeries]:
    """Both sides of V_q(YX) - V_q(X) = sum_{j<ell} [f_j(YX) - f_j(X)] over Z[Y]/(Y^(q^ell) - 1)."""
    if ell < 1 or N < 1:
        raise UsageError("need ell >= 1 and N >= 1")
    m = q**ell
    zero = CycElem(m)
    lhs = [zero] * N
    for n in range(1, N):
        v = nu(q, n)
        if v:
            lhs[n] = (CycElem.monomial(m, n) - 1) * v
    rhs = TruncSeries.zero(N, zero)
    one = CycElem.const(m, 1)
    for j in range(1, ell):
        e = q**j
        if e >= N:
            break
        rhs = rhs + series_inv_geometric(CycElem.monomial(m, e), e, N)
        rhs = rhs - series_inv_geometric(one, e, N)
    return TruncSeries(lhs), rhs


def specialize(s: TruncSeries, d: int) -> list[tuple]:
    """Image of each coefficient under Y -> primitive d-th root of unity (mod Phi_d)."""
    return [c.reduce_cyclotomic(d) for c in s.coeffs]


def twist_difference_check(q: int, ell: int, N: int) -> Report:
    lhs, rhs = twist_difference(q, ell, N)
    params = {"q": q, "ell": ell, "N": N}
    if lhs == rhs:
        nonzero = len(lhs.nonzero_terms())
        return Report("twist_difference", params, PASS,
                      {"nonzero_coefficients": nonzero})
    i = next(i for i in range(N) if lhs[i] != rhs[i])
    return Report("twist_difference", params, FAIL,
                  {"exponent": i, "lhs": lhs[i], "rhs": rhs[i]})


# positive segments ---------------------------------------------------------

_MAX_BITS = 1 << 31


def segment_terms(spec: SeriesSpec, j: int) -> list[tuple[int, int]]:
    """(weight, block index) pairs making up segment B_j."""
    if spec.is_full:
        return [(1, j)]
    k = spec.k
    return [(1, k * j + i) for i in range(1, k)] + [(1 - k, k * (j + 1))]


def _segment_values(spec: SeriesSpec, x: Fraction, J: int):
    """B_1..B_J as unreduced exact fractions (num, den), den > 0.

    The block values have denominators with millions of digits, so sums are
    formed by cross-multiplication and never reduced; signs and comparisons
    stay exact.
    """
    a, b = x.numerator, x.denominator
    top = max(r for j in range(1, J + 1) for _, r in segment_terms(spec, j))
    need = spec.q**top * max(b.bit_length(), 1)
    if need > _MAX_BITS:
        raise UsageError(
            f"exact segment values need ~2^{need.bit_length()} bits; lower J or use k=2"
        )
    pa, pb = gmpy2.mpz(a), gmpy2.mpz(b)
    blocks = {}
    for r in range(1, top + 1):
        pa, pb = pa**spec.q, pb**spec.q
        blocks[r] = (pa, pb - pa)
    out = []
    for j in range(1, J + 1):
        num, den = gmpy2.mpz(0), gmpy2.mpz(1)
        for w, r in segment_terms(spec, j):
            n2, d2 = blocks[r]
            num, den = num * d2 + w * n2 * den, den * d2
        out.append((num, den))
    return out


def positive_segments_check(spec: SeriesSpec, x, J: int) -> Report:
    """Signs of B_1..B_J and the direction of B_j -> B_(j+1).

    Passes when every segment is positive and the sequence is strictly
    monotone; which way it moves is reported, not assumed.
    """
    x = _check_point(x)
    if J < 2:
        raise UsageError("need J >= 2")
    vals = _segment_values(spec, x, J)
    positive = [bool(n > 0) for n, _ in vals]
    steps = []
    for (n1, d1), (n2, d2) in zip(vals, vals[1:]):
        c = n1 * d2 - n2 * d1
        steps.append("down" if c > 0 else "up" if c < 0 else "flat")
    kinds = set(steps)
    direction = {frozenset({"down"}): "decreasing",
                 frozenset({"up"}): "increasing"}.get(frozenset(kinds), "mixed")
    log2 = [int(n.bit_length()) - int(d.bit_length()) if n > 0 else None
            for n, d in vals]
    params = {"series": spec.label(), "x": x, "J": J}
    witness = {"positive": positive, "direction": direction,
               "approx_log2": log2}
    ok = all(positive) and direction != "mixed"
    if not ok:
        witness["first_nonpositive"] = next(
            (j + 1 for j, p in enumerate(positive) if not p), None)
        witness["steps"] = steps
    return Report("positive_segments", params, PASS if ok else FAIL, witness)
