"""Scalar rings: exact rationals, dense polynomials, Z[Y]/(Y^m - 1) and F_p.

Integers are Python ints and rationals are :class:`fractions.Fraction`;
both are already canonical (Fraction keeps gcd(num, den) = 1 and den > 0),
so this module only adds the rings Python does not ship.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational

from ..errors import UsageError

__all__ = [
    "Rat",
    "rat",
    "rat_to_str",
    "rat_from_str",
    "is_prime",
    "Poly",
    "cyclotomic_polynomial",
    "CycElem",
    "PrimeFieldElem",
    "ring_key",
]

Rat = Fraction


def rat(x, den=1) -> Fraction:
    if isinstance(x, str):
        return rat_from_str(x)
    return Fraction(x, den)


def rat_to_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise UsageError(f"not a rational: {s!r}") from None
        if d == 0:
            raise UsageError("zero denominator")
        return Fraction(n, d)
    try:
        return Fraction(int(s))
    except ValueError:
        raise UsageError(f"not a rational: {s!r}") from None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Poly:
    """Dense univariate polynomial, ``coeffs[i]`` is the coefficient of X^i.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Poly) else Poly([other])))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod_monic(self, divisor: "Poly"):
        """Quotient and remainder by a monic divisor; exact over any ring."""
        if divisor.is_zero() or divisor.coeffs[-1] != 1:
            raise UsageError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        quo = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            quo[i - dd] = c
            for j, b in enumerate(divisor.coeffs):
                rem[i - dd + j] -= c * b
        return Poly(quo), Poly(rem[:dd])

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Poly:
    if d < 1:
        raise UsageError("cyclotomic index must be positive")
    num = Poly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            num, rem = num.divmod_monic(cyclotomic_polynomial(e))
            assert rem.is_zero()
    return num


class CycElem:
    """Element of Z[Y]/(Y^m - 1), stored as the m coefficients of 1, Y, ..., Y^(m-1).

    An identity that holds here holds after substituting any complex w with
    w^m = 1 for Y; :meth:`reduce_cyclotomic` gives the image in Z[Y]/(Phi_d),
    i.e. the evaluation at a primitive d-th root of unity, kept symbolic.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=None):
        if m < 1:
            raise UsageError("ring modulus order must be positive")
        if coeffs is None:
            coeffs = (0,) * m
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != m:
            raise UsageError(f"expected {m} coefficients, got {len(coeffs)}")
        self.m = m
        self.coeffs = coeffs

    @classmethod
    def monomial(cls, m: int, exponent: int, c: int = 1) -> "CycElem":
        v = [0] * m
        v[exponent % m] = c
        return cls(m, v)

    @classmethod
    def const(cls, m: int, c: int) -> "CycElem":
        return cls.monomial(m, 0, c)

    def _coerce(self, other):
        if isinstance(other, CycElem):
            if other.m != self.m:
                raise UsageError(f"mixing Z[Y]/(Y^{self.m}-1) with Z[Y]/(Y^{other.m}-1)")
            return other
        if isinstance(other, int):
            return CycElem.const(self.m, other)
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElem(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElem(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def _support(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def __mul__(self, other):
        if isinstance(other, int):
            return CycElem(self.m, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self.m
        sa, sb = self._support(), o._support()
        if len(sa) > len(sb):
            sa, sb = sb, sa
        out = [0] * m
        for i, a in sa:
            for j, b in sb:
                out[(i + j) % m] += a * b
        return CycElem(m, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise UsageError("negative powers are not defined in Z[Y]/(Y^m-1)")
        result, base = CycElem.const(self.m, 1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except UsageError:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def reduce_cyclotomic(self, d: int) -> tuple:
        """Remainder modulo Phi_d(Y), for d dividing m; length phi(d) tuple."""
        if self.m % d:
            raise UsageError(f"{d} does not divide {self.m}")
        phi = cyclotomic_polynomial(d)
        _, rem = Poly(self.coeffs).divmod_monic(phi)
        return rem.coeffs + (0,) * (phi.degree - len(rem.coeffs))

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "CycElem":
        vals = [int(c) for c in json.loads(text)]
        return cls(len(vals), vals)

    def __repr__(self):
        terms = [f"{c}*Y^{i}" if i else str(c) for i, c in self._support()]
        return f"CycElem[{self.m}]({' + '.join(terms) or '0'})"


class PrimeFieldElem:
    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        self.p = p
        self.value = int(value) % p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise UsageError(f"mixing F_{self.p} with F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return None

    def _new(self, v):
        out = object.__new__(PrimeFieldElem)
        out.p = self.p
        out.value = v % self.p
        return out

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(v - self.value)

    def __neg__(self):
        return self._new(-self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(self.value * v)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeFieldElem":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return self._new(pow(self.value, -1, self.p))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * self._new(v).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.value, e, self.p))

    def __eq__(self, other):
        try:
            v = self._coerce(other)
        except UsageError:
            return False
        return NotImplemented if v is None else self.value == v

    def __hash__(self):
        return hash((self.p, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def ring_key(x):
    """Identify the coefficient ring of a scalar; Z is treated as part of Q."""
    if isinstance(x, CycElem):
        return ("Z[Y]/(Y^m-1)", x.m)
    if isinstance(x, PrimeFieldElem):
        return ("F_p", x.p)
    if isinstance(x, Rational):
        return ("Q",)
    raise UsageError(f"unsupported coefficient type {type(x).__name__}")
