"""Rational approximations A_n/B_n to the series value at a/b and the exponent-(2+delta) test.

Every verdict compares an exact rational *enclosure* of |alpha - A_n/B_n|
against B_n^-(2+delta); alpha itself is never approximated by a float.
Fractional exponents are cleared by raising both sides to the power of
delta's denominator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import DomainError, InvariantViolation, UsageError
from .series import SeriesSpec, TailBound, block_value, enclosure, eval_partial

__all__ = [
    "q_threshold",
    "admissible",
    "RothInstance",
    "ConvergentReport",
    "convergent",
    "roth_inequality_check",
    "RothScan",
    "scan",
    "least_n0",
    "DELTA_GRID",
]

DELTA_GRID = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))


def _check_pair(a: int, b: int):
    if a < 1 or b < 2:
        raise DomainError(f"need 1 <= a < b, got a={a}, b={b}")
    if a >= b:
        raise DomainError(f"a/b must be < 1, got {a}/{b}")
    if gcd(a, b) != 1:
        raise DomainError(f"a and b must be coprime, got gcd={gcd(a, b)}")


def admissible(q: int, a: int, b: int) -> bool:
    """b^2 a^q < b^q, the exact form of q > 2 log b / (log b - log a)."""
    return b * b * a**q < b**q


def q_threshold(a: int, b: int) -> int:
    """Least q >= 2 with b^2 a^q < b^q; every larger q qualifies too."""
    _check_pair(a, b)
    # admissibility is monotone in q (b^2 < (b/a)^q), so bracket then bisect
    lo, hi = 1, 2
    while not admissible(hi, a, b):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if admissible(mid, a, b):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class RothInstance:
    q: int
    a: int
    b: int
    k: int | None = None

    def __post_init__(self):
        _check_pair(self.a, self.b)
        if self.q < 2:
            raise UsageError(f"q must be >= 2, got {self.q}")

    @property
    def spec(self) -> SeriesSpec:
        return SeriesSpec(self.q, self.k)

    @property
    def M(self) -> int:
        return self.spec.coefficient_bound

    @property
    def x(self) -> Fraction:
        return Fraction(self.a, self.b)

    def index_ok(self, n: int) -> bool:
        Q = self.q**n
        return 2 * self.a**Q < self.b**Q

    def first_index(self) -> int:
        n = 1
        while not self.index_ok(n):
            n += 1
        return n


@dataclass(frozen=True)
class ConvergentReport:
    n: int
    A: int
    B: int
    error_lo: Fraction
    error_hi: Fraction
    bound_rhs: Fraction
    depth: int

    def roth_ok(self, delta) -> bool:
        return _beats(self.error_hi, self.B, Fraction(delta))

    def to_dict(self) -> dict:
        return {
            "n": self.n, "A": self.A, "B": self.B,
            "error_lo": self.error_lo, "error_hi": self.error_hi,
            "bound_rhs": self.bound_rhs, "depth": self.depth,
        }


def _beats(err: Fraction, B: int, delta: Fraction) -> bool:
    """err <= B^-(2+delta), decided on the d-th powers where delta = s/d."""
    if delta < 0:
        raise UsageError("delta must be >= 0")
    s, d = delta.numerator, delta.denominator
    # err^d * B^(2d+s) <= 1
    return err.numerator**d * B ** (2 * d + s) <= err.denominator**d


def convergent(inst: RothInstance, n: int, depth: int = 2) -> ConvergentReport:
    if n < 1:
        raise UsageError("n must be >= 1")
    if not inst.index_ok(n):
        raise DomainError(
            f"index too small: (a/b)^(q^n) >= 1/2 at n={n}; first valid index is {inst.first_index()}"
        )
    spec, x = inst.spec, inst.x
    Q = inst.q**n
    B = inst.b**Q - inst.a**Q
    partial = sum(
        (spec.weight(j) * block_value(x, inst.q**j) for j in range(1, n + 1)),
        Fraction(0),
    )
    scaled = partial * B
    if scaled.denominator != 1:
        raise InvariantViolation(
            f"B_n * partial sum is not an integer for {inst} at n={n}: {scaled}"
        )
    A = scaled.numerator
    deep, tail = eval_partial(spec, x, n + depth)
    lo, hi = enclosure(spec, deep, tail)
    d_lo, d_hi = lo - partial, hi - partial
    if d_lo >= 0:
        err_lo, err_hi = d_lo, d_hi
    elif d_hi <= 0:
        err_lo, err_hi = -d_hi, -d_lo
    else:
        err_lo, err_hi = Fraction(0), max(-d_lo, d_hi)
    bound = TailBound.build(inst.q, x, n, inst.M).bound
    return ConvergentReport(n, A, B, err_lo, err_hi, bound, depth)


def roth_inequality_check(inst: RothInstance, n: int, delta) -> bool:
    return convergent(inst, n).roth_ok(delta)


@dataclass
class RothScan:
    instance: RothInstance
    delta: Fraction
    threshold: int
    condition_ok: bool
    rows: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    B_increasing: bool = True
    error_decreasing: bool = True
    flags: list = field(default_factory=list)

    @property
    def n0(self):
        """Least index from which every scanned row passes, or None."""
        n0 = None
        for row, ok in zip(reversed(self.rows), reversed(self.verdicts)):
            if not ok:
                break
            n0 = row.n
        return n0

    def to_dict(self) -> dict:
        inst = self.instance
        return {
            "q": inst.q, "a": inst.a, "b": inst.b, "k": inst.k,
            "delta": self.delta, "q_threshold": self.threshold,
            "condition_ok": self.condition_ok, "flags": self.flags,
            "B_increasing": self.B_increasing,
            "error_decreasing": self.error_decreasing, "n0": self.n0,
            "rows": [dict(r.to_dict(), roth_ok=ok)
                     for r, ok in zip(self.rows, self.verdicts)],
        }


def scan(inst: RothInstance, n_max: int, delta=Fraction(1, 2), depth: int = 2) -> RothScan:
    """Reports for each admissible n <= n_max, plus monotonicity and threshold flags."""
    if n_max < 1:
        raise UsageError("n_max must be >= 1")
    delta = Fraction(delta)
    thr = q_threshold(inst.a, inst.b)
    out = RothScan(inst, delta, thr, inst.q >= thr)
    if not out.condition_ok:
        out.flags.append(f"condition on q unsatisfied: q={inst.q} < q_threshold={thr}")
    for n in range(1, n_max + 1):
        if not inst.index_ok(n):
            continue
        r = convergent(inst, n, depth)
        out.rows.append(r)
        out.verdicts.append(r.roth_ok(delta))
    rows = out.rows
    out.B_increasing = all(r1.B < r2.B for r1, r2 in zip(rows, rows[1:]))
    out.error_decreasing = all(r1.error_hi > r2.error_hi for r1, r2 in zip(rows, rows[1:]))
    return out


def least_n0(inst: RothInstance, n_max: int, deltas=DELTA_GRID, n0_max: int = 4):
    """First delta on the grid (largest first) with some n0 <= n0_max such that
    every admissible n in [n0, n_max] passes. Returns (delta, n0) or None."""
    rows = [convergent(inst, n) for n in range(1, n_max + 1) if inst.index_ok(n)]
    for delta in deltas:
        ok = [r.roth_ok(delta) for r in rows]
        n0 = None
        for r, v in zip(reversed(rows), reversed(ok)):
            if not v:
                break
            n0 = r.n
        if n0 is not None and n0 <= n0_max:
            return delta, n0
    return None
