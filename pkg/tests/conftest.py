import numpy as np
import pytest

from msclust.engine import RunConfig


def two_far_groups(seed=0, spread=0.1, n=5):
    """Two tight groups of n points centered at 0 and 10 (per coordinate)."""
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, spread, size=(n, 2))
    b = rng.normal(10.0, spread, size=(n, 2))
    return np.vstack([a, b])


def partition_of(assignments):
    """Order-free view of a labeling: frozenset of member-index frozensets."""
    groups = {}
    for j, c in enumerate(np.asarray(assignments).tolist()):
        groups.setdefault(c, set()).add(j)
    return frozenset(frozenset(g) for g in groups.values())


@pytest.fixture
def small_config():
    return RunConfig(h=1.0, th1=1e-3, th2=1.0)
