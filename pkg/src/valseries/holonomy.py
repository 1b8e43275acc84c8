"""Exact structure guessers: P-recursive, C-recursive and algebraic over F_p.

A guess is fitted on the first half of the prefix and must then hold on the
whole prefix; a survivor is empirical evidence, never a proof. The collision
witnesses are the finite pattern that rules out any constant-coefficient
recurrence of a given order for nu_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from functools import reduce

import numpy as np

from .core.linalg import IntegerEchelon, ModPEchelon
from .core.rings import Poly, is_prime
from .errors import InvariantViolation, UsageError
from .valuation import nu

__all__ = [
    "Recurrence",
    "guess_recurrence",
    "guess_cfinite",
    "search_box",
    "CollisionWitness",
    "collision_witness",
    "collision_witness_modk",
    "refutes",
    "AlgebraicRelation",
    "guess_algebraic_over_fp",
]


# recurrences ---------------------------------------------------------------

@dataclass(frozen=True)
class Recurrence:
    """sum_{i=0..r} a_i(n) c(n+i) = 0 with integer polynomial coefficients."""

    polys: tuple  # a_0 .. a_r as Poly

    def __post_init__(self):
        if not self.polys or self.polys[-1].is_zero():
            raise UsageError("leading coefficient polynomial must be nonzero")

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.polys if not p.is_zero())

    def residual(self, seq, n: int):
        return sum(p(n) * seq[n + i] for i, p in enumerate(self.polys))

    def satisfied(self, seq, start: int = 0, stop: int | None = None) -> bool:
        """Holds for every n in [start, stop) with n + order inside seq."""
        last = len(seq) - self.order
        stop = last if stop is None else min(stop, last)
        return all(self.residual(seq, n) == 0 for n in range(start, stop))

    def to_dict(self) -> dict:
        return {"order": self.order, "degree": self.degree,
                "coefficients": [list(p.coeffs) for p in self.polys],
                "text": str(self)}

    def __str__(self):
        terms = []
        for i, p in enumerate(self.polys):
            if p.is_zero():
                continue
            shift = f"c(n+{i})" if i else "c(n)"
            terms.append(f"({_poly_str(p)})*{shift}")
        return " + ".join(terms) + " = 0"


def _poly_str(p: Poly) -> str:
    parts = []
    for e, c in enumerate(p.coeffs):
        if c:
            parts.append(str(c) if e == 0 else f"{c}*n" if e == 1 else f"{c}*n^{e}")
    return " + ".join(parts) or "0"


def search_box(r_max: int, d_max: int):
    """(r, d) cells by increasing r + d, then increasing r."""
    cells = [(r, d) for r in range(r_max + 1) for d in range(d_max + 1)]
    return sorted(cells, key=lambda c: (c[0] + c[1], c[0]))


def _row(seq, n, r, d):
    # unknown a_{i,e} multiplies n^e c(n+i); column order i-major
    return [n**e * seq[n + i] for i in range(r + 1) for e in range(d + 1)]


def _to_recurrence(vec, r, d) -> Recurrence | None:
    ints = [int(x) for x in vec]
    polys = [Poly(ints[i * (d + 1):(i + 1) * (d + 1)]) for i in range(r + 1)]
    while polys and polys[-1].is_zero():
        polys.pop()
    if not polys:
        return None
    g = reduce(gcd, (c for p in polys for c in p.coeffs), 0)
    lead = polys[-1].coeffs[-1]
    sign = -1 if lead < 0 else 1
    return Recurrence(tuple(Poly(c // (sign * g) for c in p.coeffs) for p in polys))


def guess_recurrence(seq, r_max: int, d_max: int) -> Recurrence | None:
    """Smallest recurrence of order <= r_max and degree <= d_max fitting seq.

    Returns None when nothing in the box survives validation on the full prefix.
    """
    seq = [Fraction(x) for x in seq]
    need = 2 * (r_max + 1) * (d_max + 1) + r_max
    if len(seq) < need:
        raise UsageError(f"prefix too short: need >= {need} terms, got {len(seq)}")
    fit = len(seq) // 2
    for r, d in search_box(r_max, d_max):
        ech = IntegerEchelon((r + 1) * (d + 1))
        for n in range(fit - r):
            ech.add_row(_row(seq, n, r, d))
            if ech.full:
                break
        if ech.full:
            continue
        for vec in ech.kernel():
            rec = _to_recurrence(vec, r, d)
            if rec is not None and rec.order == r and rec.satisfied(seq):
                return rec
    return None


def guess_cfinite(seq, r_max: int) -> Recurrence | None:
    return guess_recurrence(seq, r_max, 0)


# collision witnesses -------------------------------------------------------

@dataclass(frozen=True)
class CollisionWitness:
    """Two indices whose d preceding valuations agree while their own differ."""

    q: int
    d: int
    m1: int
    m2: int
    k: int
    k_mod: int | None = None

    def _val(self, n):
        v = nu(self.q, n)
        return v if self.k_mod is None else v % self.k_mod

    def windows(self):
        w1 = [self._val(self.m1 - i) for i in range(1, self.d + 1)]
        w2 = [self._val(self.m2 - i) for i in range(1, self.d + 1)]
        return w1, w2

    def verify(self) -> bool:
        w1, w2 = self.windows()
        return w1 == w2 and self._val(self.m1) != self._val(self.m2)

    def to_dict(self) -> dict:
        w1, w2 = self.windows()
        return {"q": self.q, "d": self.d, "k_mod": self.k_mod, "m1": self.m1,
                "m2": self.m2, "k": self.k, "window_m1": w1, "window_m2": w2,
                "value_m1": self._val(self.m1), "value_m2": self._val(self.m2)}


def _smallest_with_valuation(q, v, above):
    """Least m > above with nu_q(m) == v exactly."""
    step = q**v
    m = (above // step + 1) * step
    while m % (step * q) == 0:
        m += step
    return m


def _build_witness(q, d, k_mod, guard):
    if q < 2 or d < 1:
        raise UsageError("need q >= 2 and d >= 1")
    k = 0
    while q**k <= d:
        k += 1
    m2 = _smallest_with_valuation(q, k + 1, guard)
    m1 = _smallest_with_valuation(q, k, max(m2, guard))
    w = CollisionWitness(q, d, m1, m2, k, k_mod)
    if not w.verify():
        raise InvariantViolation(f"constructed witness does not verify: {w.to_dict()}")
    return w


def collision_witness(q: int, d: int, guard: int = 0) -> CollisionWitness:
    """m2 carries valuation k+1 and m1 valuation k, with q^k > d and both > guard."""
    return _build_witness(q, d, None, guard)


def collision_witness_modk(q: int, k_mod: int, d: int, guard: int = 0) -> CollisionWitness:
    if k_mod < 2:
        raise UsageError("k_mod must be >= 2")
    return _build_witness(q, d, k_mod, guard)


def refutes(w: CollisionWitness, coeffs) -> bool:
    """True if the constant recurrence sum_i coeffs[i] c(m - r + i) = 0 (coeffs[r] != 0)
    fails at m1 or at m2. Order must be <= d for the argument to apply."""
    r = len(coeffs) - 1
    if r > w.d or coeffs[-1] == 0:
        raise UsageError("need order <= d and a nonzero leading coefficient")

    def res(m):
        return sum(c * w._val(m - r + i) for i, c in enumerate(coeffs))

    return res(w.m1) != 0 or res(w.m2) != 0


# algebraic relations over F_p ----------------------------------------------

def _powers_mod_p(seq, p, deg_f, N):
    f = np.asarray(seq[:N], dtype=np.int64) % p
    out = [np.zeros(N, dtype=np.int64), f.copy()]
    out[0][0] = 1
    for _ in range(2, deg_f + 1):
        out.append(np.convolve(out[-1], f)[:N] % p)
    return out[: deg_f + 1]


@dataclass(frozen=True)
class AlgebraicRelation:
    """G(X, F) = sum_{j,i} coeffs[j][i] X^i F^j over F_p."""

    p: int
    coeffs: tuple  # coeffs[j][i]

    @property
    def deg_f(self) -> int:
        return max(j for j, row in enumerate(self.coeffs) if any(row))

    @property
    def deg_x(self) -> int:
        return max((i for row in self.coeffs for i, c in enumerate(row) if c), default=0)

    def residual(self, seq, N: int) -> np.ndarray:
        """Coefficients of G(X, F) modulo X^N."""
        if len(seq) < N:
            raise UsageError(f"need {N} terms to evaluate modulo X^{N}")
        powers = _powers_mod_p(seq, self.p, len(self.coeffs) - 1, N)
        acc = np.zeros(N, dtype=np.int64)
        for j, row in enumerate(self.coeffs):
            for i, c in enumerate(row):
                if c and i < N:
                    acc[i:] = (acc[i:] + c * powers[j][: N - i]) % self.p
        return acc

    def annihilates(self, seq, N: int) -> bool:
        return not self.residual(seq, N).any()

    def __str__(self):
        terms = []
        for j, row in enumerate(self.coeffs):
            xs = [_mono(c, i) for i, c in enumerate(row) if c]
            if xs:
                fpow = "" if j == 0 else "*F" if j == 1 else f"*F^{j}"
                terms.append(f"({' + '.join(xs)}){fpow}")
        return " + ".join(terms) + f" = 0 over F_{self.p}"

    def to_dict(self) -> dict:
        return {"p": self.p, "deg_F": self.deg_f, "deg_X": self.deg_x,
                "coefficients": [list(r) for r in self.coeffs], "text": str(self)}


def _mono(c, i):
    if i == 0:
        return str(c)
    return ("" if c == 1 else f"{c}*") + ("X" if i == 1 else f"X^{i}")


def guess_algebraic_over_fp(p: int, seq, deg_f_max: int, deg_x_max: int,
                            n_verify: int, fit: int | None = None):
    """Search a nonzero G with deg_F <= deg_f_max, deg_X <= deg_x_max and
    G(X, F) = 0 mod X^n_verify, where F = sum seq[n] X^n over F_p.

    Boxes are tried by increasing deg_F + deg_X, then deg_F; in each box a kernel
    vector fitted on the first ``fit`` coefficients must survive to n_verify.
    The result is scaled so its first nonzero coefficient (F-degree major,
    then X-degree) is 1. Returns None if nothing in the box survives.
    """
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if len(seq) < n_verify:
        raise UsageError(f"prefix has {len(seq)} terms, need n_verify={n_verify}")
    unknowns = (deg_f_max + 1) * (deg_x_max + 1)
    fit = fit or min(max(4 * unknowns, 64), n_verify // 2)
    if fit >= n_verify:
        raise UsageError("fit window must be shorter than the verification order")
    powers = _powers_mod_p(seq, p, deg_f_max, fit)
    cells = [(jf, ix) for jf in range(1, deg_f_max + 1) for ix in range(deg_x_max + 1)]
    cells.sort(key=lambda c: (c[0] + c[1], c[0]))
    for jf, ix in cells:
        cols = [(j, i) for j in range(jf + 1) for i in range(ix + 1)]
        ech = ModPEchelon(len(cols), p)
        for t in range(fit):
            # coefficient of X^t in X^i F^j
            ech.add_row([powers[j][t - i] if t >= i else 0 for j, i in cols])
            if ech.full:
                break
        if ech.full:
            continue
        for vec in ech.kernel():
            grid = [[0] * (ix + 1) for _ in range(jf + 1)]
            for (j, i), c in zip(cols, vec):
                grid[j][i] = c
            if not any(any(row) for row in grid[1:]):
                continue
            lead = next(c for row in grid for c in row if c)
            inv = pow(lead, -1, p)
            grid = tuple(tuple(c * inv % p for c in row) for row in grid)
            rel = AlgebraicRelation(p, grid)
            if rel.annihilates(seq, n_verify):
                return rel
    return None
