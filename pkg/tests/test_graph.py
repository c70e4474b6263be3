import numpy as np
import pytest

from netsize.generators import Family, sample_graph
from netsize.graph import (
    MultiGraph,
    ReferralForest,
    cross_seed_matches,
    free_ends,
    free_neighborhood,
    harmonic_mean_degree,
    matches,
    mean_degree,
)

K3 = MultiGraph(3, [(0, 1), (1, 2), (0, 2)])
STAR = MultiGraph(4, [(0, 1), (0, 2), (0, 3)])  # center 0
# vertices 1..4 in a ring, implemented 0-based as 0-1-2-3-0
CYCLE4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_degree_triangle_and_star():
    assert all(K3.degree(v) == 2 for v in range(3))
    assert STAR.degree(0) == 3
    assert STAR.degree(2) == 1


def test_degree_self_loop_counts_twice():
    g = MultiGraph(2, [(0, 0)])
    assert g.degree(0) == 2
    assert g.degree(1) == 0
    assert g.neighbors(0).as_sorted_items() == [(0, 2)]


def test_degree_out_of_range():
    with pytest.raises(ValueError):
        K3.degree(3)


def test_mean_degree():
    assert mean_degree(STAR, [0, 1, 2, 3]) == pytest.approx(1.5)
    assert mean_degree(K3, [0, 1, 2]) == pytest.approx(2.0)
    assert mean_degree(STAR, [0]) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        mean_degree(K3, [])


def test_harmonic_mean_degree():
    # 4 / (1/3 + 1 + 1 + 1) = 1.2
    assert harmonic_mean_degree(STAR, [0, 1, 2, 3]) == pytest.approx(1.2)
    assert harmonic_mean_degree(K3, [0, 1, 2]) == pytest.approx(2.0)
    lonely = MultiGraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        harmonic_mean_degree(lonely, [0, 1])


FOREST3 = ((0, 1), (0, 3), (1, 2))  # referral edges of the forced single-seed trace


def test_free_neighborhood_cycle_traces():
    # both of vertex 0's edges are referral edges
    assert free_neighborhood(CYCLE4, 0, [(0, 1), (0, 3)]).as_sorted_items() == []
    # one referral edge at vertex 3 leaves the tie to 2
    assert free_neighborhood(CYCLE4, 3, [(0, 3)]).as_sorted_items() == [(2, 1)]
    # no removals: the full bag, one entry per incident edge
    bag = free_neighborhood(CYCLE4, 1, [])
    assert bag.cardinality() == CYCLE4.degree(1)


def test_free_neighborhood_rejects_absent_edge():
    with pytest.raises(ValueError):
        free_neighborhood(CYCLE4, 0, [(0, 2)])


def test_free_ends_cycle():
    assert free_ends(CYCLE4, [0, 1, 2, 3], FOREST3).cardinality() == 2
    assert free_ends(CYCLE4, [], FOREST3).cardinality() == 0
    # no forest: every edge contributes both end occurrences
    assert free_ends(CYCLE4, [0, 1, 2, 3], []).cardinality() == 2 * CYCLE4.num_edges


def test_matches_examples():
    assert matches(CYCLE4, [0, 1, 2, 3], FOREST3).cardinality() == 2
    assert matches(K3, [0, 1], []).cardinality() == 2
    # in-sample matches come in pairs on a loop-free simple graph
    rng = np.random.default_rng(3)
    g = sample_graph(Family.ERDOS_RENYI, 4.0, 60, rng)
    for r in (10, 25, 60):
        subjects = list(rng.choice(60, size=r, replace=False))
        assert matches(g, subjects, []).cardinality() % 2 == 0


def test_matches_cap_parallel_edges():
    # 0 and 1 joined twice: the neighbor occurs twice in the bag but the
    # sample carries multiplicity 1
    g = MultiGraph(2, [(0, 1), (0, 1)])
    assert free_ends(g, [0, 1], []).cardinality() == 4
    assert matches(g, [0, 1], []).cardinality() == 2


def test_cross_seed_matches_cycle():
    seed_of = {0: 0, 1: 0, 3: 0, 2: 2}
    forest = [(0, 1), (0, 3)]
    x_seed0 = cross_seed_matches(CYCLE4, [0, 1, 2, 3], forest, seed_of, 0)
    x_seed2 = cross_seed_matches(CYCLE4, [0, 1, 2, 3], forest, seed_of, 2)
    assert x_seed0.cardinality() == 2
    assert x_seed2.cardinality() == 2
    with pytest.raises(ValueError):
        cross_seed_matches(CYCLE4, [0, 1, 2, 3], forest, seed_of, 1)


def test_cross_seed_no_edges_between_components():
    g = MultiGraph(4, [(0, 1), (2, 3)])
    seed_of = {0: 0, 1: 0, 2: 2, 3: 2}
    forest = [(0, 1), (2, 3)]
    assert cross_seed_matches(g, range(4), forest, seed_of, 0).cardinality() == 0
    assert cross_seed_matches(g, range(4), forest, seed_of, 2).cardinality() == 0


@pytest.mark.parametrize("family,lam", [(Family.CONFIG_POISSON, 5.0), (Family.ERDOS_RENYI, 6.0)])
def test_handshake_on_generated_graphs(family, lam):
    for seed in range(5):
        g = sample_graph(family, lam, 300, np.random.default_rng(seed))
        assert int(np.sum(g.degrees())) == 2 * g.num_edges


def test_pooled_quantities_consistency():
    rng = np.random.default_rng(11)
    g = sample_graph(Family.CONFIG_POISSON, 5.0, 200, rng)
    subjects = [int(v) for v in rng.choice(200, size=60, replace=False)]
    r_bag = free_ends(g, subjects, [])
    m_bag = matches(g, subjects, [])
    # R(S, empty) pools exactly the degrees
    assert r_bag.cardinality() == sum(g.degree(v) for v in subjects)
    # matches are a sub-multiset of the free ends
    assert r_bag.contains(m_bag)


def test_cross_seed_matches_bounded_by_matches():
    rng = np.random.default_rng(12)
    g = sample_graph(Family.CONFIG_POISSON, 5.0, 200, rng)
    subjects = [int(v) for v in rng.choice(200, size=50, replace=False)]
    half = len(subjects) // 2
    seed_of = {v: subjects[0] if i < half else subjects[half] for i, v in enumerate(subjects)}
    total_cross = sum(
        cross_seed_matches(g, subjects, [], seed_of, s).cardinality()
        for s in (subjects[0], subjects[half])
    )
    assert total_cross <= matches(g, subjects, []).cardinality()


def test_referral_forest_validation():
    ReferralForest(edges=((0, 1),), seeds=(0,), seed_of={0: 0, 1: 0})
    with pytest.raises(ValueError):  # recruited twice
        ReferralForest(edges=((0, 1), (2, 1)), seeds=(0, 2), seed_of={0: 0, 1: 0, 2: 2})
    with pytest.raises(ValueError):  # seed maps elsewhere
        ReferralForest(edges=(), seeds=(0,), seed_of={0: 1})
    with pytest.raises(ValueError):  # forest identity broken
        ReferralForest(edges=(), seeds=(0,), seed_of={0: 0, 1: 0})
