import itertools

import numpy as np
import pytest

from netsize.generators import Family, sample_graph
from netsize.graph import MultiGraph
from netsize.ingest import EdgeListSpec, clustering_stats, load_edge_list, write_edge_list


def _write(tmp_path, text, name="edges.txt"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_symmetrize_dedupe_collapses_reciprocal(tmp_path):
    path = _write(tmp_path, "0 1\n1 0\n")
    g, id_map, report = load_edge_list(EdgeListSpec(path, directed=True, dedupe=True))
    assert g.n == 2 and g.num_edges == 1
    assert report.duplicates_collapsed == 1
    assert id_map == {0: 0, 1: 1}


def test_drop_loops(tmp_path):
    path = _write(tmp_path, "0 1\n2 2\n")
    g, _, report = load_edge_list(EdgeListSpec(path, drop_loops=True))
    assert g.num_edges == 1
    assert report.loops_dropped == 1
    # vertex 2 had only the loop, so it is gone entirely
    assert g.n == 2


def test_malformed_line_reports_number(tmp_path):
    path = _write(tmp_path, "0 1\nnonsense\n")
    with pytest.raises(ValueError, match=":2"):
        load_edge_list(EdgeListSpec(path))
    path2 = _write(tmp_path, "0 1\n2 3 4\n", name="e2.txt")
    with pytest.raises(ValueError, match=":2"):
        load_edge_list(EdgeListSpec(path2))


def test_comments_and_relabeling(tmp_path):
    path = _write(tmp_path, "# header\n10 30\n30 20\n")
    g, id_map, _ = load_edge_list(EdgeListSpec(path))
    assert g.n == 3
    assert id_map == {10: 0, 20: 1, 30: 2}
    assert sorted(map(tuple, g.edge_array.tolist())) == [(0, 2), (1, 2)]


def test_node_filter_drops_edges_to_excluded(tmp_path):
    edges = _write(tmp_path, "0 1\n1 2\n2 3\n")
    keep = _write(tmp_path, "0\n1\n2\n", name="keep.txt")
    g, id_map, report = load_edge_list(EdgeListSpec(edges, node_filter=keep))
    assert g.n == 3 and g.num_edges == 2
    assert report.filtered_out == 1
    assert 3 not in id_map


def test_empty_graph_rejected(tmp_path):
    path = _write(tmp_path, "# nothing\n")
    with pytest.raises(ValueError):
        load_edge_list(EdgeListSpec(path))


def test_round_trip_generated_graph(tmp_path):
    g = sample_graph(Family.CONFIG_POISSON, 5.0, 120, np.random.default_rng(0))
    path = tmp_path / "gen.txt"
    write_edge_list(g, path, comments=["generated for round trip"])
    loaded, id_map, _ = load_edge_list(EdgeListSpec(path))
    # compare edge multisets through the persisted id map
    original = sorted(
        tuple(sorted((id_map[int(u)], id_map[int(v)]))) for u, v in g.edge_array
        if int(u) in id_map and int(v) in id_map
    )
    loaded_edges = sorted(tuple(sorted((int(u), int(v)))) for u, v in loaded.edge_array)
    assert original == loaded_edges
    # all vertices with at least one edge survive
    assert loaded.n == len(id_map)


def test_clustering_stats_triangle_and_star():
    k3 = MultiGraph(3, [(0, 1), (1, 2), (0, 2)])
    assert clustering_stats(k3) == (1.0, 1.0)
    star = MultiGraph(4, [(0, 1), (0, 2), (0, 3)])
    assert clustering_stats(star) == (0.0, 0.0)


def test_clustering_stats_requires_simple_graph():
    with pytest.raises(ValueError):
        clustering_stats(MultiGraph(2, [(0, 1), (0, 1)]))
    with pytest.raises(ValueError):
        clustering_stats(MultiGraph(2, [(0, 0)]))


def _brute_force_stats(g: MultiGraph):
    adj = [set() for _ in range(g.n)]
    for u, v in g.edge_array.tolist():
        adj[u].add(v)
        adj[v].add(u)
    triangles = sum(
        1 for a, b, c in itertools.combinations(range(g.n), 3)
        if b in adj[a] and c in adj[a] and c in adj[b]
    )
    local = []
    triples = 0
    for v in range(g.n):
        d = len(adj[v])
        if d < 2:
            local.append(0.0)
            continue
        triples += d * (d - 1) // 2
        links = sum(1 for x, y in itertools.combinations(sorted(adj[v]), 2) if y in adj[x])
        local.append(links / (d * (d - 1) / 2))
    avg = sum(local) / g.n
    trans = 3 * triangles / triples if triples else 0.0
    return avg, trans


@pytest.mark.parametrize("seed", range(4))
def test_clustering_stats_matches_brute_force(seed):
    g = sample_graph(Family.ERDOS_RENYI, 6.0, 120, np.random.default_rng(seed))
    fast = clustering_stats(g)
    slow = _brute_force_stats(g)
    assert fast[0] == pytest.approx(slow[0])
    assert fast[1] == pytest.approx(slow[1])
