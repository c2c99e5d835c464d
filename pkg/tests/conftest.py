import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sparsenull.sparsepoly import SparsePolynomial, parse_infix  # noqa: E402

CORPUS = Path(__file__).parent.parent / "corpus"

_ACCEPTANCE_LINES = []


def poly(text, n=2):
    return parse_infix(text, [f"z{i + 1}" for i in range(n)])


def random_poly(rng, points, coeffs=range(-3, 4), density=0.6):
    terms = {p: rng.choice(coeffs) for p in points if rng.random() < density}
    n = len(points[0])
    return SparsePolynomial(n, terms)


@pytest.fixture
def corpus():
    return CORPUS


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture
def acceptance_report(request):
    seen = []

    def record(number, ok, text):
        seen.append(number)
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")

    yield record
    if not seen:
        _ACCEPTANCE_LINES.append(f"[FAIL] {request.node.name}: raised before reporting")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
