import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from msclust.geometry import LabeledDataset, as_dataset, centroid, euclidean_distance

finite = st.floats(-1e6, 1e6, allow_nan=False)
point3 = st.tuples(finite, finite, finite)


def test_distance_identity():
    assert euclidean_distance([0, 0], [0, 0]) == 0.0


def test_distance_3_4_5():
    assert euclidean_distance([0, 0], [3, 4]) == 5.0


def test_distance_matches_sum_of_squares_oracle():
    rng = np.random.default_rng(42)
    for _ in range(20):
        a, b = rng.normal(size=(2, 3))
        oracle = sum((x - y) ** 2 for x, y in zip(a, b)) ** 0.5
        assert abs(euclidean_distance(a, b) - oracle) < 1e-12


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        euclidean_distance([0, 0], [0, 0, 0])


def test_distance_rejects_nan():
    with pytest.raises(ValueError):
        euclidean_distance([np.nan, 0], [0, 0])


@given(point3, point3, point3)
def test_triangle_inequality(a, b, c):
    ab = euclidean_distance(a, b)
    bc = euclidean_distance(b, c)
    ac = euclidean_distance(a, c)
    assert ac <= ab + bc + 1e-9


@given(point3, point3)
def test_distance_symmetric(a, b):
    assert euclidean_distance(a, b) == euclidean_distance(b, a)


def test_centroid_midpoint():
    np.testing.assert_allclose(centroid([[0, 0], [2, 0]]), [1, 0])


def test_centroid_singleton():
    np.testing.assert_allclose(centroid([[1, 1]]), [1, 1])


def test_centroid_matches_per_coordinate_oracle():
    rng = np.random.default_rng(7)
    pts = rng.normal(size=(10, 2))
    oracle = [sum(p[k] for p in pts) / len(pts) for k in range(2)]
    np.testing.assert_allclose(centroid(pts), oracle, atol=1e-12)


def test_centroid_empty_rejected():
    with pytest.raises(ValueError):
        centroid(np.empty((0, 2)))


def test_centroid_inside_bounding_box():
    rng = np.random.default_rng(3)
    for _ in range(50):
        pts = rng.normal(size=(rng.integers(1, 9), 3))
        c = centroid(pts)
        assert (c >= pts.min(axis=0) - 1e-12).all()
        assert (c <= pts.max(axis=0) + 1e-12).all()


def test_dataset_validation():
    with pytest.raises(ValueError):
        as_dataset(np.empty((0, 2)))
    with pytest.raises(ValueError):
        as_dataset([[np.inf, 0]])


def test_labeled_dataset_checks_length_and_density():
    data = np.zeros((3, 2))
    ds = LabeledDataset(data, [0, 1, 0])
    assert ds.n_classes == 2 and len(ds) == 3 and ds.dim == 2
    with pytest.raises(ValueError):
        LabeledDataset(data, [0, 1])  # wrong length
    with pytest.raises(ValueError):
        LabeledDataset(data, [0, 2, 0])  # class 1 missing
