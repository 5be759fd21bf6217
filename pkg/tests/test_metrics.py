import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from msclust.metrics import (
    ContingencyTable,
    build_contingency,
    g_criterion,
    k_criterion,
    multiclass_gini,
)


def random_table(rng, max_q=6, max_r=6):
    while True:
        q = rng.integers(1, max_q + 1)
        r = rng.integers(1, max_r + 1)
        counts = rng.integers(0, 20, size=(q, r))
        if (counts.sum(axis=1) > 0).all() and (counts.sum(axis=0) > 0).all():
            return ContingencyTable(counts)


def test_build_diagonal():
    t = build_contingency([0, 0, 1], [0, 0, 1])
    assert t.counts.tolist() == [[2, 0], [0, 1]]


def test_build_single_row():
    t = build_contingency([0, 0], [0, 1])
    assert t.counts.tolist() == [[1, 1]]


def test_build_matches_counting_oracle():
    rng = np.random.default_rng(5)
    pred = rng.integers(0, 4, 100)
    true = rng.integers(0, 3, 100)
    pred[:4] = [0, 1, 2, 3]
    true[:3] = [0, 1, 2]
    t = build_contingency(pred, true)
    for q in range(4):
        for r in range(3):
            assert t.counts[q, r] == sum(
                1 for p, c in zip(pred, true) if p == q and c == r
            )


def test_build_length_mismatch():
    with pytest.raises(ValueError):
        build_contingency([0, 1], [0])


def test_g_perfect_partition():
    s = g_criterion(ContingencyTable([[2, 0], [0, 3]]))
    assert s.pur_c == s.pur_d == s.g == 1.0


def test_g_single_cluster_3_plus_1():
    s = g_criterion(ContingencyTable([[3, 1]]))
    assert s.pur_c == 0.75
    assert s.pur_d == 1.0
    assert abs(s.g - math.sqrt(0.75)) < 1e-12


def test_g_all_singletons_trivial_solution():
    # N=4 points, 2 equal classes, every point its own cluster
    t = build_contingency([0, 1, 2, 3], [0, 0, 1, 1])
    s = g_criterion(t)
    assert s.pur_c == 1.0
    assert s.pur_d == 0.5
    assert abs(s.g - math.sqrt(0.5)) < 1e-12


def test_k_diagonal_is_one():
    s = k_criterion(ContingencyTable([[5, 0], [0, 2]]))
    assert s.acp == s.asp == s.k == 1.0


def test_k_hand_fixture():
    s = k_criterion(ContingencyTable([[2, 0], [1, 1]]))
    assert abs(s.acp - 0.75) < 1e-12
    assert abs(s.asp - 7 / 9) < 1e-12
    assert abs(s.k - math.sqrt(0.75 * 7 / 9)) < 1e-12
    np.testing.assert_allclose(s.cluster_purities, [1.0, 0.5])
    np.testing.assert_allclose(s.class_purities, [5 / 9, 1.0])


def test_k_one_cluster_two_singleton_classes():
    s = k_criterion(ContingencyTable([[1, 1]]))
    assert abs(s.acp - 0.5) < 1e-12
    assert s.asp == 1.0
    assert abs(s.k - math.sqrt(0.5)) < 1e-12


def test_gini_fixtures():
    assert multiclass_gini([1.0, 0.0]) == 0.0
    assert multiclass_gini([0.5, 0.5]) == 0.5
    with pytest.raises(ValueError):
        multiclass_gini([0.5, 0.2])


def test_gini_identity_with_purities():
    rng = np.random.default_rng(17)
    for _ in range(50):
        t = random_table(rng)
        s = k_criterion(t)
        for q in range(t.n_clusters):
            row = t.counts[q] / t.counts[q].sum()
            assert abs(s.cluster_purities[q] - (1 - multiclass_gini(row))) < 1e-12
        for r in range(t.n_classes):
            col = t.counts[:, r] / t.counts[:, r].sum()
            assert abs(s.class_purities[r] - (1 - multiclass_gini(col))) < 1e-12


def test_all_scores_in_unit_interval_fuzz():
    rng = np.random.default_rng(23)
    for _ in range(200):
        t = random_table(rng)
        g = g_criterion(t)
        k = k_criterion(t)
        for v in (g.pur_c, g.pur_d, g.g, k.acp, k.asp, k.k):
            assert 0.0 <= v <= 1.0


def test_perfect_scores_iff_partitions_equal():
    rng = np.random.default_rng(29)
    for _ in range(100):
        t = random_table(rng)
        g = g_criterion(t)
        k = k_criterion(t)
        # partitions equal <=> exactly one nonzero per row and per column
        perfect = ((t.counts > 0).sum(axis=1) == 1).all() and (
            (t.counts > 0).sum(axis=0) == 1
        ).all()
        assert (g.g == 1.0) == perfect
        assert (k.k == 1.0) == perfect


def test_pur_c_one_when_every_cluster_pure():
    # classes split across clusters, every cluster single-class
    t = ContingencyTable([[3, 0], [2, 0], [0, 4]])
    assert g_criterion(t).pur_c == 1.0
    # symmetric statement: every class inside a single cluster
    assert g_criterion(ContingencyTable(t.counts.T)).pur_d == 1.0


def test_relabeling_invariance():
    rng = np.random.default_rng(31)
    for _ in range(30):
        t = random_table(rng)
        pq = rng.permutation(t.n_clusters)
        pr = rng.permutation(t.n_classes)
        t2 = ContingencyTable(t.counts[np.ix_(pq, pr)])
        assert g_criterion(t) == g_criterion(t2)
        a, b = k_criterion(t), k_criterion(t2)
        np.testing.assert_allclose(
            (a.acp, a.asp, a.k), (b.acp, b.asp, b.k), rtol=1e-12
        )


@given(arrays(np.int64, (3, 3), elements=st.integers(0, 50)))
def test_scores_bounded_hypothesis(counts):
    counts = counts + np.eye(3, dtype=np.int64)  # no empty rows/columns
    t = ContingencyTable(counts)
    g = g_criterion(t)
    k = k_criterion(t)
    assert 0 < g.g <= 1 and 0 < k.k <= 1


def test_table_validation():
    with pytest.raises(ValueError):
        ContingencyTable([[0, 0], [1, 1]])  # empty cluster
    with pytest.raises(ValueError):
        ContingencyTable([[1, 0], [1, 0]])  # empty class
    with pytest.raises(ValueError):
        ContingencyTable([[-1, 2]])
