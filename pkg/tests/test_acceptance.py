"""Acceptance criteria 1-11 at full (desk) scale.

The desk run goes through the command line front end once; each criterion
then reads its own report and prints a PASS/FAIL line, including the time
it took against its budget. Also runnable directly:
``python tests/test_acceptance.py``.
"""

import io
import json
import sys
import time

import pytest

from valseries.cli import dispatch

# criterion number -> (check name, time budget in seconds)
CRITERIA = {
    1: ("01_valuation_agreement", 30),
    2: ("02_hamming_kummer", 30),
    3: ("03_partial_fractions", 60),
    4: ("04_twist_identity", 60),
    5: ("05_roth_example", 120),
    6: ("06_threshold_law", 30),
    7: ("07_holonomy_evidence", 120),
    8: ("08_christol_evidence", 60),
    9: ("09_automaton", 60),
    10: ("10_positive_segments", 10),
}
TOTAL_BUDGET = 15 * 60


def desk_run():
    out = io.StringIO()
    t0 = time.perf_counter()
    code = dispatch(["verify-all", "--level", "desk"], out)
    wall = time.perf_counter() - t0
    return code, json.loads(out.getvalue()), wall


def judge(number, reports):
    name, budget = CRITERIA[number]
    rep = next((r for r in reports if r["check"] == name), None)
    if rep is None:
        return False, f"criterion {number:2d} FAIL  {name}: no report"
    t = float(rep["elapsed_s"])
    ok = rep["verdict"] == "pass" and t < budget
    why = "" if ok else f"  witness={json.dumps(rep.get('witness'))[:300]}"
    return ok, (f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {name}  "
                f"{t:.2f}s (budget {budget}s){why}")


def judge_aggregate(code, reports, wall):
    ok = (code == 0 and len(reports) == len(CRITERIA)
          and all(r["verdict"] == "pass" for r in reports) and wall < TOTAL_BUDGET)
    return ok, (f"criterion 11 {'PASS' if ok else 'FAIL'}  verify-all --level desk  "
                f"exit={code}  {wall:.2f}s (budget {TOTAL_BUDGET}s)")


@pytest.fixture(scope="module")
def desk():
    return desk_run()


def _emit(capsys, line):
    with capsys.disabled():
        print("\n" + line)


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, desk, capsys):
    _, reports, _ = desk
    ok, line = judge(number, reports)
    _emit(capsys, line)
    assert ok, line


@pytest.mark.slow
def test_criterion_11_aggregate(desk, capsys):
    code, reports, wall = desk
    ok, line = judge_aggregate(code, reports, wall)
    _emit(capsys, line)
    assert ok, line
    assert [r["check"] for r in reports] == sorted(r["check"] for r in reports)


if __name__ == "__main__":
    code, reports, wall = desk_run()
    results = [judge(n, reports) for n in sorted(CRITERIA)]
    results.append(judge_aggregate(code, reports, wall))
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
