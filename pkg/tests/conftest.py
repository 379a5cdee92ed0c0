import random

import pytest

from planeaut.fields import QQ, F
from planeaut.poly2 import Poly2

FIELDS = [F(2), F(5), QQ]

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((criterion, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def rng():
    return random.Random(0)


def random_poly(field, rng, max_deg=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        i = rng.randint(0, max_deg)
        j = rng.randint(0, max_deg - i)
        if field.p is None:
            terms[(i, j)] = field(rng.randint(-4, 4)) / rng.randint(1, 3)
        else:
            terms[(i, j)] = rng.randrange(field.p)
    return Poly2(field, terms)
