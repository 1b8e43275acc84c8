"""The 2k-state machine for nu_w(n) mod k."""

from valseries.automata import (build_valuation_dfao, export, minimize,
                                period_doubling, run)
from valseries.valuation import nu

# %% w = 2, k = 2 gives the period-doubling sequence
d = build_valuation_dfao(2, 2)
print([run(d, n) for n in range(1, 21)])
print(period_doubling(20))

# %% other bases
d = build_valuation_dfao(3, 3)
print(all(run(d, n) == nu(3, n) % 3 for n in range(1, 10**4)))

# %% already minimal
print(d.state_count, minimize(d).state_count)

# %% graphviz source
print(export(build_valuation_dfao(2, 2), "dot"))
