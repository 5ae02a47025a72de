from fractions import Fraction
from itertools import permutations

import pytest

from divsym.poly import Polynomial, evaluate


def naive_ds(f, g, pt=None):
    """Direct permutation sum with per-term Fraction arithmetic.

    Independent of the engine's integer/monomial-table path.
    """
    m = g.m
    pt = [Fraction(k + 1) for k in range(m)] if pt is None else [Fraction(v) for v in pt]
    total = Fraction(0)
    for pi in permutations(range(m)):
        vals = [pt[pi[i]] for i in range(m)]
        den = Fraction(1)
        for i, j in g.edges:
            den *= vals[i] - vals[j]
        total += evaluate(f, vals) / den
    return total


def xs(m):
    return [Polynomial.variable(i, m) for i in range(m)]


@pytest.fixture
def x3():
    return xs(3)


_REPORT = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def _record(label, ok, detail=""):
        _REPORT.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for line in _REPORT:
            terminalreporter.write_line(line)
