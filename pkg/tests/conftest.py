import random

import pytest
from hypothesis import HealthCheck, settings

from olext import catalog
from olext.arrangement import Arrangement, remove_line

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def shuffled(A, seed):
    """A copy of A with lines permuted and points renamed at random."""
    rng = random.Random(seed)
    order = list(range(len(A)))
    rng.shuffle(order)
    pts = list(A.points)
    fresh = [f"q{i}" for i in range(len(pts))]
    rng.shuffle(fresh)
    return A.relabel(dict(zip(pts, fresh)), order)


@pytest.fixture(scope="session")
def census5():
    from olext.extend import enumerate_census
    return enumerate_census(5)


@pytest.fixture(scope="session")
def small_corpus():
    """Arrangements with at most eight lines, each with a shuffled copy."""
    fano = catalog.lookup("fano")
    out = [fano, remove_line(fano, 6), remove_line(remove_line(fano, 6), 5)]
    for name in ("(9_3)_1", "(9_3)_2", "(9_3)_3"):
        A = catalog.lookup(name)
        out.append(remove_line(A, 0))
        out.append(remove_line(remove_line(A, 8), 0))
    out.append(Arrangement((("1", "2", "3"), ("1", "4", "5"), ("2", "4", "6"), ("3", "5", "6"))))
    return out + [shuffled(A, i) for i, A in enumerate(out)]
