import random
from fractions import Fraction

import pytest

from eigenscheme_kit.poly import HomogeneousPoly, monomials

# the thirteen eigenpoints of x0^4+x1^4+x2^4, labeled p0..p12
FERMAT4_POINTS = [
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (1, 1, 0), (1, 0, 1), (0, 1, 1),
    (1, -1, 0), (1, 0, -1), (0, 1, -1),
    (1, 1, -1), (1, -1, 1), (-1, 1, 1), (1, 1, 1),
]
FERMAT4_QUADRUPLES = [
    {0, 1, 3, 6}, {0, 2, 4, 7}, {0, 5, 11, 12}, {0, 8, 9, 10}, {1, 2, 5, 8},
    {1, 4, 10, 12}, {1, 7, 9, 11}, {2, 3, 9, 12}, {2, 6, 10, 11},
]


def random_form(rng: random.Random, d: int, lo: int = -9, hi: int = 9) -> HomogeneousPoly:
    while True:
        f = HomogeneousPoly(d, {e: rng.randint(lo, hi) for e in monomials(d)})
        if not f.is_zero():
            return f


def random_points(rng: random.Random, n: int, bound: int = 20):
    out = set()
    while len(out) < n:
        P = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(3))
        if any(P):
            lead = next(x for x in P if x)
            out.add(tuple(x / lead for x in P))
    return sorted(out)


def random_invertible(rng: random.Random, bound: int = 5):
    from eigenscheme_kit.algebra import ExactMatrix, determinant

    while True:
        M = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        if determinant(ExactMatrix.from_rows(M)) != 0:
            return M


@pytest.fixture
def rng():
    return random.Random(20261014)


# one line per acceptance criterion, shown after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
