from fractions import Fraction

from hypothesis import strategies as st

from degstirling.core import LambdaPoly, XPoly

small_fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
lambda_polys = st.lists(small_fractions, max_size=5).map(LambdaPoly)
x_polys = st.lists(lambda_polys, max_size=4).map(XPoly)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def brute_stirling2(n, k):
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == k)


def classical_bernoulli_polynomials(n_max):
    """x-coefficient lists of B_n(x) from t/(e^t - 1) e^{xt}, in plain Fractions."""
    from math import comb

    numbers = [Fraction(1)]
    for m in range(1, n_max + 1):
        numbers.append(-sum(comb(m + 1, k) * numbers[k] for k in range(m)) / (m + 1))
    return [[comb(n, j) * numbers[n - j] for j in range(n + 1)] for n in range(n_max + 1)]


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
