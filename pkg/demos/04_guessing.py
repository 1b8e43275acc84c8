"""Looking for recurrences and algebraic relations, and failing where expected."""

from math import comb

from valseries import automata
from valseries.holonomy import (collision_witness, guess_algebraic_over_fp,
                                guess_recurrence, refutes)
from valseries.valuation import nu

# %% sanity: things that do satisfy recurrences
fib = [0, 1]
while len(fib) < 40:
    fib.append(fib[-1] + fib[-2])
print(guess_recurrence(fib, 2, 0))
print(guess_recurrence([comb(2 * n, n) for n in range(30)], 1, 1))

# %% nu_2(n) fits nothing with order <= 3, degree <= 3
seq = [nu(2, n) for n in range(1, 2049)]
print(guess_recurrence(seq, 3, 3))

# %% why no constant-coefficient recurrence can work
w = collision_witness(2, 3)
print(w.to_dict())
print(refutes(w, [1, -1, 2, 1]))

# %% mod 2 it becomes automatic, hence algebraic over F_2
pd = [0] + automata.period_doubling(4095)
rel = guess_algebraic_over_fp(2, pd, 2, 2, 4096)
print(rel)
