"""Acceptance gate: criteria 1-9, each at its exact tolerance and runtime target.

Prints one PASS/FAIL line per criterion.  Run alone with
``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from thetagroups.suites import Limits, run_suite

SEED = 0

CRITERIA = [
    (1, "counting theorem: prod gcd(n,d_i)^2 classes of dimension D_n", ["counting"], 60),
    (2, "G' conjugacy classes match the gcd sum", ["gprime"], 10),
    (3, "character norms 1, k-fold sums k^2, cross products 0", ["irreducibility"], 30),
    (4, "induced module isomorphic to W_{y,chi} via verified intertwiner", ["induction"], 30),
    (5, "50 conjugated direct sums per type decompose to their labels", ["decomposition"], 60),
    (6, "reconstruction, |H|^2 = |K| and descent order law", ["structure", "descent"], 60),
    (7, "equivalent extensions iff equal commutator forms (200 pairs)", ["cocycle"], 30),
    (8, "adelic pairing, supp clauses, bridge and Weil relation", ["adelic", "supp", "weil"], 60),
    (9, "weight 1 has one class of dimension sqrt|K|", ["uniqueness"], 5),
]


def evaluate(number, suites, limit):
    results = [run_suite(name, SEED, Limits()) for name in suites]
    seconds = sum(r.seconds for r in results)
    failures = [(r.suite, c) for r in results for c in r.checks if not c.passed]
    checks = sum(len(r.checks) for r in results)
    passed = not failures and seconds < limit
    return passed, seconds, checks, failures


def report_line(number, title, passed, seconds, checks, limit):
    status = "PASS" if passed else "FAIL"
    return f"[{status}] criterion {number}: {title} ({checks} checks, {seconds:.1f}s / {limit}s)"


@pytest.mark.parametrize("number, title, suites, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, suites, limit, capsys):
    passed, seconds, checks, failures = evaluate(number, suites, limit)
    with capsys.disabled():
        print("\n" + report_line(number, title, passed, seconds, checks, limit))
    assert not failures, "; ".join(f"{s}: {c.name}: {c.detail}" for s, c in failures)
    assert seconds < limit, f"took {seconds:.1f}s, target {limit}s"


if __name__ == "__main__":
    ok = True
    for number, title, suites, limit in CRITERIA:
        passed, seconds, checks, failures = evaluate(number, suites, limit)
        print(report_line(number, title, passed, seconds, checks, limit))
        for suite, c in failures:
            print(f"    {suite}: {c.name}: {c.detail}")
        ok &= passed
    sys.exit(0 if ok else 1)
