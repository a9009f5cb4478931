import random
from fractions import Fraction

import pytest

from plcq.polyhedra import HPolyhedron

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_rational(rng, lo=-4, hi=4, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_point(rng, dim):
    return tuple(random_rational(rng) for _ in range(dim))


def random_polyhedron(rng: random.Random, dim: int, kind: str = "mixed") -> HPolyhedron:
    """Small random polyhedron: 'polytope' (box-capped), 'cone' (zero offsets)
    or 'mixed' (anything goes)."""
    rows = []
    n_rows = rng.randint(1, dim + 2)
    for _ in range(n_rows):
        a = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
        if all(q == 0 for q in a):
            continue
        if kind == "cone":
            b = Fraction(0)
        else:
            b = random_rational(rng, -2, 3, 2)
        rows.append((a, b))
    if kind == "polytope":
        for i in range(dim):
            e = tuple(Fraction(1 if j == i else 0) for j in range(dim))
            bound = Fraction(rng.randint(1, 3))
            rows.append((e, bound))
            rows.append((tuple(-q for q in e), bound))
    if not rows:
        rows = [(tuple(Fraction(1 if j == 0 else 0) for j in range(dim)), Fraction(1))]
    return HPolyhedron(dim, rows)


@pytest.fixture
def rng():
    return random.Random(20240817)
