import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from horolift.perm import Permutation, irreducible_permutations, is_irreducible

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# verdict lines of tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


_IRREDUCIBLE = {d: list(irreducible_permutations(d)) for d in range(2, 8)}


def irreducible_perms(dmin=2, dmax=6):
    return st.integers(dmin, dmax).flatmap(lambda d: st.sampled_from(_IRREDUCIBLE[d]))


@st.composite
def rational_lengths(draw, d, denom=30):
    return tuple(Fraction(draw(st.integers(1, 4 * denom)), draw(st.integers(1, denom))) for _ in range(d))


def random_irreducible(rng, d):
    while True:
        sigma = list(range(1, d + 1))
        rng.shuffle(sigma)
        p = Permutation(tuple(sigma))
        if is_irreducible(p):
            return p


@pytest.fixture
def rng():
    return random.Random(12345)
