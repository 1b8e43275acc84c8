"""Exact kernels: fraction-free elimination over Q and plain elimination over F_p."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from ..errors import UsageError
from .rings import is_prime

__all__ = ["IntegerEchelon", "rat_nullspace", "ModPEchelon", "nullspace_mod_p"]


def _primitive(row):
    g = reduce(gcd, row, 0)
    if g > 1:
        row = [x // g for x in row]
    return row


def _integer_row(row):
    row = [Fraction(x) for x in row]
    den = reduce(lcm, (x.denominator for x in row), 1)
    return [int(x * den) for x in row]


class IntegerEchelon:
    """Row echelon form built one row at a time, entries kept as primitive integer rows.

    Elimination is fraction-free: ``row <- p*row - row[c]*pivot_row`` followed by
    division by the row content. Rows may be fed lazily, which lets callers stop
    as soon as the rank saturates.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def add_row(self, row) -> bool:
        """Insert a row; return True if it raised the rank."""
        if len(row) != self.ncols:
            raise UsageError(f"row has {len(row)} entries, expected {self.ncols}")
        row = _integer_row(row)
        for c in range(self.ncols):
            x = row[c]
            if x == 0:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                row = _primitive(row)
                if row[c] < 0:
                    row = [-v for v in row]
                self.pivots[c] = row
                return True
            p = piv[c]
            g = gcd(p, x)
            a, b = p // g, x // g
            row = _primitive([a * r - b * s for r, s in zip(row, piv)])
        return False

    def kernel(self) -> list[list[Fraction]]:
        """Basis of the right kernel, one primitive integer vector per free column."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        order = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for c in order:
                row = self.pivots[c]
                s = sum((row[j] * v[j] for j in range(c + 1, self.ncols) if row[j]), Fraction(0))
                v[c] = -s / row[c]
            den = reduce(lcm, (x.denominator for x in v), 1)
            ints = _primitive([int(x * den) for x in v])
            basis.append([Fraction(x) for x in ints])
        return basis


def rat_nullspace(mat) -> list[list[Fraction]]:
    """Basis of {v : mat v = 0} over Q. Empty matrix or trivial kernel gives []."""
    mat = [list(r) for r in mat]
    if not mat or not mat[0]:
        return []
    ech = IntegerEchelon(len(mat[0]))
    for r in mat:
        ech.add_row(r)
        if ech.full:
            break
    return ech.kernel()


class ModPEchelon:
    """Same interface as :class:`IntegerEchelon` over the prime field F_p."""

    def __init__(self, ncols: int, p: int):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        self.ncols = ncols
        self.p = p
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def add_row(self, row) -> bool:
        p = self.p
        row = [int(x) % p for x in row]
        for c in range(self.ncols):
            x = row[c]
            if x == 0:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                inv = pow(x, -1, p)
                self.pivots[c] = [v * inv % p for v in row]
                return True
            row = [(r - x * s) % p for r, s in zip(row, piv)]
        return False

    def kernel(self) -> list[list[int]]:
        p = self.p
        free = [c for c in range(self.ncols) if c not in self.pivots]
        order = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            v = [0] * self.ncols
            v[f] = 1
            for c in order:
                row = self.pivots[c]
                v[c] = -sum(row[j] * v[j] for j in range(c + 1, self.ncols)) % p
            basis.append(v)
        return basis


def nullspace_mod_p(mat, p: int) -> list[list[int]]:
    mat = [list(r) for r in mat]
    if not mat or not mat[0]:
        return []
    ech = ModPEchelon(len(mat[0]), p)
    for r in mat:
        ech.add_row(r)
        if ech.full:
            break
    return ech.kernel()
