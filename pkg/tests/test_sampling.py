import numpy as np
import pytest

from netsize.generators import Family, sample_graph
from netsize.graph import MultiGraph, harmonic_mean
from netsize.multiset import Multiset
from netsize.sampling import (
    RdsConfig,
    as_sample_view,
    rds_capture,
    read_sample_dump,
    rows_to_sample,
    sample_to_rows,
    uniform_sample,
    write_sample_dump,
)

CYCLE4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_uniform_sample_extremes():
    g = sample_graph(Family.ERDOS_RENYI, 3.0, 25, np.random.default_rng(0))
    assert sorted(uniform_sample(g, 25, np.random.default_rng(1))) == list(range(25))
    assert uniform_sample(g, 0, np.random.default_rng(1)) == ()
    with pytest.raises(ValueError):
        uniform_sample(g, 26, np.random.default_rng(1))


def test_uniform_sample_is_uniform():
    g = MultiGraph(10, [(i, (i + 1) % 10) for i in range(10)])
    rng = np.random.default_rng(7)
    counts = np.zeros(10)
    draws = 100_000
    for _ in range(draws):
        counts[uniform_sample(g, 1, rng)[0]] += 1
    freqs = counts / draws
    assert np.all(np.abs(freqs - 0.1) < 0.01)


def test_rds_forced_single_seed_trace():
    cfg = RdsConfig(target_size=4, num_seeds=1, recruit_law=((2, 1.0),), seeds=(0,))
    sample = rds_capture(CYCLE4, cfg, np.random.default_rng(3))
    assert sample.order in ((0, 1, 3, 2), (0, 3, 1, 2))
    assert len(sample.forest.edges) == 3
    assert sample.seeds == (0,)
    assert all(sample.seed_of[v] == 0 for v in sample.order)


def test_rds_isolated_graph_pure_reseeding():
    g = MultiGraph(5, [])
    cfg = RdsConfig(target_size=3, num_seeds=2)
    sample = rds_capture(g, cfg, np.random.default_rng(0))
    assert sample.size == 3
    assert len(sample.forest.edges) == 0
    assert len(sample.seeds) == 3  # third vertex entered via reseed
    assert all(sample.seed_of[v] == v for v in sample.order)


def test_rds_forest_identity_and_no_repeats():
    g = sample_graph(Family.CONFIG_POISSON, 5.0, 500, np.random.default_rng(1))
    cfg = RdsConfig(target_size=150)
    for seed in range(5):
        sample = rds_capture(g, cfg, np.random.default_rng(seed))
        assert len(set(sample.order)) == len(sample.order)
        assert len(sample.forest.edges) == sample.size - len(sample.seeds)
        # components partition the sample; recruiters stay in their component
        comps = sample.components()
        assert sum(len(c) for c in comps.values()) == sample.size
        for recruiter, recruit in sample.forest.edges:
            assert sample.seed_of[recruiter] == sample.seed_of[recruit]


def test_rds_alter_bags_exclude_referral_ties():
    cfg = RdsConfig(target_size=4, num_seeds=1, recruit_law=((2, 1.0),), seeds=(0,))
    sample = rds_capture(CYCLE4, cfg, np.random.default_rng(3))
    tree_degree = Multiset()
    for a, b in sample.forest.edges:
        tree_degree[a] += 1
        tree_degree[b] += 1
    for v in sample.order:
        assert sample.alters[v].cardinality() == sample.degrees[v] - tree_degree[v]


def test_rds_overshoot_bounded():
    g = sample_graph(Family.CONFIG_POISSON, 8.0, 400, np.random.default_rng(2))
    cfg = RdsConfig(target_size=101)
    sample = rds_capture(g, cfg, np.random.default_rng(5))
    assert 101 <= sample.size <= 102  # max recruit count is 2


def test_rds_determinism():
    g = sample_graph(Family.CONFIG_POISSON, 5.0, 300, np.random.default_rng(4))
    cfg = RdsConfig(target_size=80)
    a = rds_capture(g, cfg, np.random.default_rng(9))
    b = rds_capture(g, cfg, np.random.default_rng(9))
    assert a.order == b.order
    assert a.forest.edges == b.forest.edges


def test_rds_target_exceeds_population():
    with pytest.raises(ValueError):
        rds_capture(CYCLE4, RdsConfig(target_size=5, num_seeds=1), np.random.default_rng(0))


def test_rds_config_validation():
    with pytest.raises(ValueError):
        RdsConfig(target_size=5, num_seeds=6)
    with pytest.raises(ValueError):
        RdsConfig(target_size=5, recruit_law=((2, 0.5), (1, 0.4)))


def test_harmonic_degree_assumption_on_configuration_graph():
    # over many referral samples the harmonic mean of sampled degrees tracks
    # the population mean degree
    g = sample_graph(Family.CONFIG_POISSON, 5.0, 10_000, np.random.default_rng(10))
    pop_mean = 2 * g.num_edges / g.n
    cfg = RdsConfig(target_size=500)
    ratios = []
    for seed in range(100):
        sample = rds_capture(g, cfg, np.random.default_rng(seed))
        harm = harmonic_mean(sample.degrees[v] for v in sample.order)
        ratios.append(harm / pop_mean)
    med = sorted(ratios)[len(ratios) // 2]
    assert abs(med - 1.0) < 0.10


def test_sample_view_wraps_uniform_sample():
    g = sample_graph(Family.CONFIG_POISSON, 4.0, 50, np.random.default_rng(0))
    subjects = uniform_sample(g, 12, np.random.default_rng(1))
    view = as_sample_view(g, subjects)
    assert view.order == subjects
    assert len(view.forest.edges) == 0
    assert all(view.alters[v].cardinality() == g.degree(v) for v in subjects)


def test_dump_round_trip(tmp_path):
    g = sample_graph(Family.CONFIG_POISSON, 5.0, 200, np.random.default_rng(6))
    sample = rds_capture(g, RdsConfig(target_size=60), np.random.default_rng(7))
    path = tmp_path / "sample.csv"
    write_sample_dump(sample_to_rows(sample), path, header_comment="round trip")
    back = rows_to_sample(read_sample_dump(path))
    assert back.order == sample.order
    assert back.degrees == sample.degrees
    assert back.seed_of == sample.seed_of
    assert all(back.alters[v] == sample.alters[v] for v in sample.order)
    assert back.forest is not None
    assert sorted(back.forest.edges) == sorted(sample.forest.edges)
