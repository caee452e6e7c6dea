import pytest

from gensine.params import from_conjugate

# integer-p' pairs with p < n, plus the classical (2, 2)
ACCEPTANCE_PAIRS = [(2, 2)] + [
    (m, n) for m in (2, 3, 4) for n in (2, 3, 4, 5) if n * (m - 1) > m
]


@pytest.fixture(params=ACCEPTANCE_PAIRS, ids=lambda mn: f"m{mn[0]}n{mn[1]}")
def pair_params(request):
    return from_conjugate(*request.param)


# acceptance criteria record one PASS/FAIL line each; printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
