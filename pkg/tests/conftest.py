import numpy as np
import pytest
from hypothesis import strategies as st

from premia import kernels
from premia.dist import DiscreteDist

ACCEPTANCE_LINES = []


def random_dist(rng, max_points=50, family=None):
    """Random distribution on one of three kinds of support.

    ``int``: small integers (many colliding sums); ``grid``: three-decimal
    amounts (sums collide up to float noise); ``real``: continuous amounts.
    """
    family = family or rng.choice(["int", "grid", "real"])
    n = int(rng.integers(1, max_points + 1))
    if family == "int":
        support = rng.choice(np.arange(0, 3 * max_points), size=n, replace=False).astype(float)
    elif family == "grid":
        support = rng.choice(np.arange(0, 20_000), size=n, replace=False) / 1000.0
    else:
        support = rng.uniform(0.0, 100.0, size=n)
    support = np.sort(support)
    w = rng.uniform(0.01, 1.0, size=n)
    w /= w.sum()
    return DiscreteDist(support, w)


@st.composite
def dists(draw, max_points=12, max_loss=40):
    steps = draw(st.lists(st.integers(0, 4 * max_loss), min_size=1, max_size=max_points, unique=True))
    weights = draw(st.lists(st.floats(0.01, 1.0), min_size=len(steps), max_size=len(steps)))
    support = np.sort(np.array(steps, dtype=float) / 4.0)
    w = np.array(weights)
    return DiscreteDist(support, w / w.sum())


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return kernels.BACKENDS[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
