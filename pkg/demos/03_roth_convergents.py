"""Rational approximations to V_q(a/b) that beat exponent 2 + delta."""

from fractions import Fraction

from valseries.roth import RothInstance, convergent, least_n0, q_threshold, scan

# %% which q are admissible for a given a/b
for a, b in [(1, 2024), (1, 2), (2, 3), (2, 5), (99, 100)]:
    print(f"{a}/{b}: q >= {q_threshold(a, b)}")

# %% q = 3, x = 1/2024
inst = RothInstance(3, 1, 2024)
for n in (1, 2, 3):
    r = convergent(inst, n)
    print(n, "A =", r.A, " B has", r.B.bit_length(), "bits",
          " roth_ok(1/2) =", r.roth_ok(Fraction(1, 2)))

# %% the whole table, with monotonicity flags
res = scan(inst, 3, Fraction(1, 2))
print(res.B_increasing, res.error_decreasing, res.n0)

# %% below the threshold the scan still runs but says so
print(scan(RothInstance(2, 1, 2), 3).flags)

# %% mod-k series work the same way
print(least_n0(RothInstance(3, 1, 2, k=2), 3))
