"""Truncated formal power series over a commutative coefficient ring."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from ..errors import UsageError
from .rings import CycElem, PrimeFieldElem, rat_to_str, ring_key

__all__ = ["TruncSeries", "series_mul", "series_inv_geometric"]


class TruncSeries:
    """A power series known modulo X^N; ``coeffs[i]`` multiplies X^i.

    Coefficients may be ints, Fractions, :class:`CycElem` or
    :class:`PrimeFieldElem`, all from one ring.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise UsageError("truncation order must be positive")
        key = ring_key(coeffs[0])
        for c in coeffs:
            if ring_key(c) != key:
                raise UsageError("coefficients from different rings")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, N: int, zero=0) -> "TruncSeries":
        if N < 1:
            raise UsageError("truncation order must be positive")
        return cls((zero,) * N)

    @classmethod
    def one(cls, N: int, one=1) -> "TruncSeries":
        z = one - one
        return cls((one,) + (z,) * (N - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def ring(self):
        return ring_key(self.coeffs[0])

    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise UsageError("expected a TruncSeries")
        if other.order != self.order:
            raise UsageError(f"truncation orders differ: {self.order} vs {other.order}")
        if other.ring != self.ring:
            raise UsageError(f"coefficient rings differ: {self.ring} vs {other.ring}")

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        self._check(other)
        return TruncSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return TruncSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return TruncSeries(-a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return TruncSeries(a * other for a in self.coeffs)

    def __rmul__(self, other):
        return TruncSeries(other * a for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def map(self, fn) -> "TruncSeries":
        return TruncSeries(fn(c) for c in self.coeffs)

    def nonzero_terms(self):
        z = self.coeffs[0] - self.coeffs[0]
        return [(i, c) for i, c in enumerate(self.coeffs) if c != z]

    def to_csv(self, include_zero: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "coefficient"])
        z = self.coeffs[0] - self.coeffs[0]
        for i, c in enumerate(self.coeffs):
            if include_zero or c != z:
                w.writerow([i, _coeff_str(c)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, N: int) -> "TruncSeries":
        """Inverse of :meth:`to_csv` for integer or rational coefficients."""
        coeffs = [0] * N
        rows = csv.reader(io.StringIO(text))
        next(rows, None)
        for exp, c in rows:
            v = Fraction(c)
            coeffs[int(exp)] = int(v) if v.denominator == 1 else v
        return cls(coeffs)

    def __repr__(self):
        head = ", ".join(map(repr, self.coeffs[:8]))
        more = ", ..." if self.order > 8 else ""
        return f"TruncSeries([{head}{more}], N={self.order})"


def _coeff_str(c) -> str:
    if isinstance(c, CycElem):
        return c.to_json()
    if isinstance(c, PrimeFieldElem):
        return str(c.value)
    if isinstance(c, Fraction) and c.denominator != 1:
        return rat_to_str(c)
    return str(int(c))


def series_mul(s: TruncSeries, t: TruncSeries) -> TruncSeries:
    """Cauchy product modulo X^N. Quadratic, skips zero coefficients."""
    s._check(t)
    N = s.order
    z = s.coeffs[0] - s.coeffs[0]
    out = [z] * N
    sa = s.nonzero_terms()
    tb = t.nonzero_terms()
    for i, a in sa:
        for j, b in tb:
            if i + j >= N:
                break
            out[i + j] = out[i + j] + a * b
    return TruncSeries(out)


def series_inv_geometric(u, e: int, N: int) -> TruncSeries:
    """u X^e / (1 - u X^e) expanded modulo X^N, i.e. sum of u^m X^(m e) for m >= 1."""
    if e < 1:
        raise UsageError("exponent must be >= 1: 1 - u has no inverse in general")
    if N < 1:
        raise UsageError("truncation order must be positive")
    z = u - u
    out = [z] * N
    power = u
    for pos in range(e, N, e):
        out[pos] = power
        power = power * u
    return TruncSeries(out)
