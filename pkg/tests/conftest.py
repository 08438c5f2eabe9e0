from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("default")


def bernoulli_recurrence(k):
    """B_0..B_k from sum_{j<=m} C(m+1, j) B_j = 0, independent of the library table."""
    b = [Fraction(1)]
    for m in range(1, k + 1):
        b.append(-sum(comb(m + 1, j) * b[j] for j in range(m)) / (m + 1))
    return b


def bernoulli_poly_oracle(k, x):
    b = bernoulli_recurrence(k)
    x = Fraction(x)
    return sum((comb(k, j) * b[j] * x ** (k - j) for j in range(k + 1)), Fraction(0))


def mpf_of(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


@pytest.fixture
def oracle_prec():
    """Run mpmath oracles well above the precision under test."""
    with mpmath.workprec(600):
        yield 600


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion, printed at the end of the run."""

    def record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
