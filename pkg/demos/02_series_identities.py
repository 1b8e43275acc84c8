"""Generating series of nu_q(n): coefficients, block sums, twists, segments."""

from fractions import Fraction

from valseries.series import (SeriesSpec, coeffs, enclosure, eval_partial,
                              partial_fraction_sum, positive_segments_check,
                              specialize, twist_difference, twist_difference_check)

# %% V_2 and V_{2,2}, first terms
full, mod2 = SeriesSpec(2), SeriesSpec(2, 2)
print(list(coeffs(full, 17)))
print(list(coeffs(mod2, 17)))

# %% same series rebuilt from X^(q^j)/(1 - X^(q^j)) blocks
for spec in (full, mod2, SeriesSpec(3, 4)):
    print(spec.label(), coeffs(spec, 2000) == partial_fraction_sum(spec, 2000))

# %% weights for the mod-k sum: 1 except 1-k at multiples of k
spec = SeriesSpec(3, 4)
print([spec.weight(j) for j in range(1, 9)])

# %% exact partial sums with a certified tail
v, tail = eval_partial(SeriesSpec(3), Fraction(1, 2024), 2)
lo, hi = enclosure(SeriesSpec(3), v, tail)
print("value", v)
print("width", float(hi - lo))

# %% twisting X by a q^l-th root of unity, kept symbolic in Z[Y]/(Y^(q^l) - 1)
print(twist_difference_check(2, 2, 64).verdict)
lhs, _ = twist_difference(2, 2, 16)
print("Y -> i:", specialize(lhs, 4))  # -2 at every exponent = 2 mod 4

# %% grouped blocks stay positive; the direction is measured
for spec in (full, mod2):
    r = positive_segments_check(spec, Fraction(1, 3), 6)
    print(spec.label(), r.witness["positive"], r.witness["direction"])
