"""The acceptance harness: every computable claim checked at a chosen scale.

``verify_all("desk")`` runs the full bounds; ``"quick"`` shrinks each bound
about tenfold. Failures come back as data (a Report with a witness), never
as exceptions.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import comb, gcd

from . import automata, holonomy, roth, series, valuation
from .errors import InvariantViolation
from .report import FAIL, PASS, Report
from .series import SeriesSpec

__all__ = ["CHECKS", "LEVELS", "PERIOD_DOUBLING_20", "run_check", "verify_all"]

LEVELS = ("quick", "desk")

PERIOD_DOUBLING_20 = (0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0)


def _scale(level, desk, quick):
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    return desk if level == "desk" else quick


def _result(name, params, failures, extra=None):
    if failures:
        witness = {"failures": failures[:5], "failure_count": len(failures)}
        witness.update(extra or {})
        return Report(name, params, FAIL, witness)
    return Report(name, params, PASS, extra or None)


def check_valuation_agreement(level):
    n_term = _scale(level, 2000, 200)
    n_series = _scale(level, 16, 8)
    bad = []
    for p in (2, 3, 5):
        for n in range(1, n_term + 1):
            a, b = valuation.nu(p, n), valuation.nu_arithmetic_term(p, n)
            if a != b:
                bad.append({"p": p, "n": n, "direct": a, "term": b})
        for n in range(1, n_series + 1):
            a, b = valuation.nu(p, n), valuation.nu_uniform_series(p, n)
            if a != b:
                bad.append({"p": p, "n": n, "direct": a, "series": b})
    return _result("01_valuation_agreement",
                   {"primes": [2, 3, 5], "n_term": n_term, "n_series": n_series}, bad)


def check_hamming_kummer(level):
    n_max = _scale(level, 2000, 200)
    bad = []
    for n in range(1, n_max + 1):
        a, b = valuation.hamming_weight(n), valuation.hamming_weight_kummer(n)
        if a != b:
            bad.append({"n": n, "popcount": a, "nu2_central_binomial": b})
    return _result("02_hamming_kummer", {"n_max": n_max}, bad)


def check_partial_fractions(level):
    N = _scale(level, 10**4, 10**3)
    specs = [SeriesSpec(q) for q in (2, 3, 5)]
    specs += [SeriesSpec(q, k) for q, k in ((2, 2), (2, 3), (3, 2), (3, 4))]
    bad = []
    for spec in specs:
        direct = series.coeffs(spec, N)
        summed = series.partial_fraction_sum(spec, N)
        if direct != summed:
            i = next(i for i in range(N) if direct[i] != summed[i])
            bad.append({"series": spec.label(), "exponent": i,
                        "direct": direct[i], "partial_fractions": summed[i]})
    return _result("03_partial_fractions",
                   {"N": N, "series": [s.label() for s in specs]}, bad)


def check_twist_identity(level):
    base = _scale(level, 256, 64)
    bad = []
    for q in (2, 3, 5):
        for ell in (1, 2, 3):
            N = max(base, 8 * q**ell)
            r = series.twist_difference_check(q, ell, N)
            if not r.passed:
                bad.append(r.to_dict(with_timing=False))
    # Y -> i for q = 2, ell = 2 gives -2X^2/(1 - X^4)
    lhs, _ = series.twist_difference(2, 2, base)
    image = series.specialize(lhs, 4)
    expected = [(-2, 0) if n % 4 == 2 else (0, 0) for n in range(base)]
    if image != expected:
        i = next(i for i in range(base) if image[i] != expected[i])
        bad.append({"specialization": "Y->i", "exponent": i,
                    "got": list(image[i]), "expected": list(expected[i])})
    return _result("04_twist_identity",
                   {"q": [2, 3, 5], "ell": [1, 2, 3], "N_min": base}, bad)


def check_roth_example(level):
    inst = roth.RothInstance(3, 1, 2024)
    delta = Fraction(1, 2)
    bad = []
    rows = []
    for n in (1, 2, 3):
        r = roth.convergent(inst, n)
        bound = 4 * Fraction(1, 2024) ** (3 ** (n + 1))
        ok_roth = r.roth_ok(delta)
        ok_bound = r.error_hi <= bound
        rows.append({"n": n, "B_bits": r.B.bit_length(),
                     "roth_ok": ok_roth, "within_tail_bound": ok_bound})
        if not (ok_roth and ok_bound):
            bad.append({"n": n, "error_hi": r.error_hi, "B": r.B,
                        "roth_ok": ok_roth, "within_tail_bound": ok_bound})
    thr = roth.q_threshold(1, 2024)
    if thr != 3:
        bad.append({"q_threshold": thr, "expected": 3})
    return _result("05_roth_example", {"q": 3, "a": 1, "b": 2024, "delta": delta},
                   bad, {"rows": rows, "q_threshold": thr})


def check_threshold_law(level):
    count = _scale(level, 200, 20)
    rng = random.Random(20241016)
    bad = []
    pairs = []
    while len(pairs) < count:
        b = rng.randint(2, 10**4)
        a = rng.randint(1, b - 1)
        if gcd(a, b) == 1:
            pairs.append((a, b))
    for a, b in pairs:
        q = roth.q_threshold(a, b)
        if not roth.admissible(q, a, b) or roth.admissible(q - 1, a, b):
            bad.append({"a": a, "b": b, "q_threshold": q})
    return _result("06_threshold_law", {"pairs": count, "b_max": 10**4, "seed": 20241016},
                   bad, {"largest_threshold": max(roth.q_threshold(a, b) for a, b in pairs)})


def check_holonomy_evidence(level):
    prefix = _scale(level, 2048, 205)
    bad = []
    for q in (2, 3):
        base = [valuation.nu(q, n) for n in range(1, prefix + 1)]
        for k in (None, 2, 3):
            seq = base if k is None else [v % k for v in base]
            rec = holonomy.guess_recurrence(seq, 3, 3)
            if rec is not None:
                bad.append({"q": q, "k": k, "unexpected_recurrence": str(rec)})
    fib = [0, 1]
    while len(fib) < 40:
        fib.append(fib[-1] + fib[-2])
    rec = holonomy.guess_recurrence(fib, 2, 0)
    if rec is None or [p.coeffs for p in rec.polys] != [(-1,), (-1,), (1,)]:
        bad.append({"sequence": "fibonacci", "found": str(rec)})
    cb = [comb(2 * n, n) for n in range(30)]
    rec = holonomy.guess_recurrence(cb, 1, 1)
    if rec is None or [p.coeffs for p in rec.polys] != [(-2, -4), (1, 1)]:
        bad.append({"sequence": "central_binomial", "found": str(rec)})
    witnesses = 0
    for q in (2, 3):
        for d in range(1, 9):
            for km in (None, 2, 3):
                witnesses += 1
                try:
                    if km is None:
                        w = holonomy.collision_witness(q, d)
                    else:
                        w = holonomy.collision_witness_modk(q, km, d)
                except InvariantViolation as exc:
                    bad.append({"q": q, "d": d, "k_mod": km, "witness_error": str(exc)})
                    continue
                if not w.verify():
                    bad.append({"witness": w.to_dict()})
    return _result("07_holonomy_evidence",
                   {"prefix": prefix, "r_max": 3, "d_max": 3}, bad,
                   {"witnesses_checked": witnesses})


def check_christol_evidence(level):
    n_verify = _scale(level, 4096, 410)
    seq = [0] + automata.period_doubling(2 * n_verify - 1)
    rel = holonomy.guess_algebraic_over_fp(2, seq, 2, 2, n_verify)
    if rel is None:
        return Report("08_christol_evidence", {"n_verify": n_verify}, FAIL,
                      {"failures": ["no relation within deg_F <= 2, deg_X <= 2"]})
    machine = automata.build_valuation_dfao(2, 2)
    fresh = [0] + [automata.run(machine, n) for n in range(1, 2 * n_verify)]
    ok = rel.annihilates(fresh, 2 * n_verify)
    params = {"p": 2, "n_verify": n_verify, "reverify_order": 2 * n_verify}
    if not ok:
        return Report("08_christol_evidence", params, FAIL,
                      {"relation": rel.to_dict(), "failures": ["fresh prefix not annihilated"]})
    return Report("08_christol_evidence", params, PASS, {"relation": rel.to_dict()})


def check_automaton(level):
    n_max = _scale(level, 10**5, 10**4)
    n_min = _scale(level, 10**4, 10**3)
    bad = []
    sizes = {}
    for w in (2, 3, 4):
        for k in (2, 3):
            d = automata.build_valuation_dfao(w, k)
            for n in range(1, n_max + 1):
                got, want = automata.run(d, n), valuation.nu(w, n) % k
                if got != want:
                    bad.append({"w": w, "k": k, "n": n, "dfao": got, "nu_mod_k": want})
                    break
            m = automata.minimize(d)
            sizes[f"{w},{k}"] = [d.state_count, m.state_count]
            if m.state_count > d.state_count:
                bad.append({"w": w, "k": k, "minimized_grew": sizes[f"{w},{k}"]})
            for n in range(1, n_min + 1):
                if automata.run(m, n) != automata.run(d, n):
                    bad.append({"w": w, "k": k, "n": n, "minimize_changed_output": True})
                    break
    pd = tuple(automata.period_doubling(20))
    if pd != PERIOD_DOUBLING_20:
        bad.append({"period_doubling_20": list(pd), "expected": list(PERIOD_DOUBLING_20)})
    return _result("09_automaton", {"n_max": n_max, "minimize_n_max": n_min}, bad,
                   {"state_counts": sizes})


def check_positive_segments(level):
    J = _scale(level, 10, 4)
    points = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))
    bad = []
    directions = {}
    for spec in (SeriesSpec(2), SeriesSpec(2, 2)):
        seen = set()
        for x in points:
            r = series.positive_segments_check(spec, x, J)
            seen.add(r.witness["direction"])
            if not r.passed:
                bad.append(r.to_dict(with_timing=False))
        directions[spec.label()] = sorted(seen)
        if len(seen) != 1:
            bad.append({"series": spec.label(), "unstable_direction": sorted(seen)})
    return _result("10_positive_segments",
                   {"J": J, "x": list(points), "series": ["V_2", "V_2,2"]}, bad,
                   {"directions": directions})


CHECKS = {
    "01_valuation_agreement": check_valuation_agreement,
    "02_hamming_kummer": check_hamming_kummer,
    "03_partial_fractions": check_partial_fractions,
    "04_twist_identity": check_twist_identity,
    "05_roth_example": check_roth_example,
    "06_threshold_law": check_threshold_law,
    "07_holonomy_evidence": check_holonomy_evidence,
    "08_christol_evidence": check_christol_evidence,
    "09_automaton": check_automaton,
    "10_positive_segments": check_positive_segments,
}


def run_check(name: str, level: str = "desk") -> Report:
    fn = CHECKS[name]
    t0 = time.perf_counter()
    try:
        rep = fn(level)
    except Exception as exc:  # a crash inside a check is a failed check
        rep = Report(name, {"level": level}, FAIL,
                     {"exception": f"{type(exc).__name__}: {exc}"})
    rep.check = name
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_all(level: str = "desk", threads: int = 1, names=None) -> list[Report]:
    _scale(level, None, None)
    names = sorted(names or CHECKS)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda n: run_check(n, level), names))
    else:
        reports = [run_check(n, level) for n in names]
    return sorted(reports, key=lambda r: r.check)
