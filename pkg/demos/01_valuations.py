"""Three ways to get nu_q(n), and the Kummer route to the binary weight."""

from math import comb

from valseries.valuation import (hamming_weight, hamming_weight_kummer, nu,
                                 nu_arithmetic_term, nu_uniform_series)

# %% direct division
for q, n in [(2, 8), (3, 81), (5, 2024), (10, 1000)]:
    print(f"nu_{q}({n}) = {nu(q, n)}")

# %% the closed term uses only gcd, a power, a mod and a floor
print([nu_arithmetic_term(3, n) for n in range(1, 28)])
print([nu(3, n) for n in range(1, 28)])

# %% the series route: floor(2^(n^2) V_p(2^-n)) mod 2^n
for n in range(1, 9):
    print(n, nu_uniform_series(2, n), nu(2, n))

# %% popcount vs the 2-adic valuation of C(2n, n)
n = 7
print(bin(n), hamming_weight(n), comb(2 * n, n), hamming_weight_kummer(n))
bad = [n for n in range(1, 2001) if hamming_weight(n) != hamming_weight_kummer(n)]
print("disagreements up to 2000:", bad)
