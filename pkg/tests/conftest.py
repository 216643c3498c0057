import itertools
import random

import pytest

from stu_families import ChargeVector

SIGN_PATTERNS = list(itertools.product((1, -1), repeat=4))

_acceptance_lines = []


def record_acceptance(line: str):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def with_signs(mags, signs):
    return ChargeVector(*(m * s for m, s in zip(mags, signs)))


def random_signs(rng):
    return tuple(rng.choice((1, -1)) for _ in range(4))


def _family_magnitudes(family, rng, hi):
    """Magnitudes (p1, p2, p3, q0) built to satisfy one family's defining
    equalities; inequality side conditions are enforced by rejection."""
    r = lambda: rng.randint(1, hi)  # noqa: E731
    while True:
        if family == 1:
            m = r()
            mags = (m, m, m, m)
        elif family == 2:
            x, y = r(), r()
            mags = (x, y, x, y)
        elif family == 3:
            x, y = r(), r()
            mags = (x, y, y, x)
        elif family == 4:
            x, y = r(), r()
            mags = (x, x, y, y)
        elif family == 5:
            # |p1 p3| = |p2 q0| via p1 = ac, p3 = bd, p2 = ad, q0 = bc
            a, b, c, d = r(), r(), r(), r()
            mags = (a * c, a * d, b * d, b * c)
        elif family == 6:
            # |p2 p3| = |p1 q0| via p2 = ac, p3 = bd, p1 = ad, q0 = bc
            a, b, c, d = r(), r(), r(), r()
            mags = (a * d, a * c, b * d, b * c)
        else:
            mags = (r(), r(), r(), r())
        p1, p2, p3, q0 = mags
        s1, s2, s3, s0 = p1 * p1, p2 * p2, p3 * p3, q0 * q0
        ok = {
            1: True,
            2: s1 != s2,
            3: s1 != s2,
            4: s1 != s3,
            5: s1 != s0 and s2 != s3 and s3 != s0,
            6: s2 != s0 and s1 != s3 and s3 != s0,
            7: p1 * p3 != p2 * q0 and p2 * p3 != p1 * q0,
        }[family]
        if ok:
            return mags


def family_charges(family, n, seed=0, hi=12):
    rng = random.Random(seed * 100 + family)
    return [with_signs(_family_magnitudes(family, rng, hi), random_signs(rng)) for _ in range(n)]


def random_charges(n, seed=0, hi=100):
    rng = random.Random(seed)
    return [
        ChargeVector(*(rng.randint(1, hi) * rng.choice((1, -1)) for _ in range(4))) for _ in range(n)
    ]


@pytest.fixture
def rng():
    return random.Random(12345)
