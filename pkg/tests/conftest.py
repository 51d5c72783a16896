import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stopwalk import ExplicitRegion, LinearRegion  # noqa: E402
from stopwalk.trial_design import TrialDesign  # noqa: E402

# stop at 2 successes or 2 failures
CURTAILED = ExplicitRegion(points=frozenset({(0, 0), (1, 0), (0, 1), (1, 1)}))
# stop after exactly two trials
STOP_AFTER_2 = LinearRegion(coeffs=(1, 1), target=2, max_order=2)
# trinomial: stop on the 2nd outcome-1, the 2nd outcome-3, or after 3 trials
TRINOMIAL = ExplicitRegion(points=frozenset(
    (a, b, c) for a in range(2) for b in range(4) for c in range(2) if a + b + c < 3))
HOLE = ExplicitRegion(points=frozenset({(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)}))

EXAMPLE_DESIGN_JSON = {
    "stages": [
        {"n": 3, "promising": {"r_min": 3, "e_max": 0}, "ineffective": {"r_max": 0, "e_min": 2}},
        {"n": 3, "final": {"promising": {"r_min": 4, "e_max": 1}}},
    ]
}


def nullstep(b, horizon=40):
    return LinearRegion(coeffs=(1, 0, -1), target=b, max_order=horizon)


def lattice2d(b, horizon=40):
    return LinearRegion(coeffs=(1, 0, -1, 0), target=b, max_order=horizon)


@pytest.fixture
def example_design():
    return TrialDesign.from_json(EXAMPLE_DESIGN_JSON)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
