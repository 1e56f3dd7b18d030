import numpy as np

ALPHA_GRID = np.round(np.arange(16) * 0.1, 10)
RATIO_GRID = np.round(np.arange(-12, 13) * 0.25, 10)


ACCEPTANCE_LINES = []


def record(criterion, passed, detail):
    """Log one acceptance criterion; printed again in the terminal summary."""
    line = f"{'PASS' if passed else 'FAIL'}  [{criterion}] {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
