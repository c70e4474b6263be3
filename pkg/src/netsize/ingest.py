"""Edge-list ingestion for real networks, plus clustering statistics.

Reads SNAP-style whitespace edge lists ("u v" per line, ``#`` comments),
optionally symmetrizing directed input, collapsing duplicates, dropping
self-loops, and restricting to a node whitelist.  Vertex ids are relabeled
to a contiguous 0-based range; the original-id map is returned so samples
and estimates can be traced back.  Vertices left without any surviving
edge are dropped (the estimators' harmonic means need degrees >= 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .graph import MultiGraph


@dataclass(frozen=True)
class EdgeListSpec:
    path: str | Path
    directed: bool = False          # treat lines as arcs and symmetrize
    node_filter: Optional[str | Path] = None
    dedupe: bool = False
    drop_loops: bool = False


@dataclass(frozen=True)
class IngestReport:
    lines_read: int
    nodes: int
    edges: int
    loops_dropped: int
    duplicates_collapsed: int
    filtered_out: int

    def describe(self) -> str:
        return (
            f"kept {self.nodes} nodes / {self.edges} edges"
            f" (read {self.lines_read} edge lines,"
            f" dropped {self.loops_dropped} loops,"
            f" collapsed {self.duplicates_collapsed} duplicates,"
            f" filtered {self.filtered_out})"
        )


def _read_filter(path: str | Path) -> set[int]:
    keep: set[int] = set()
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                keep.add(int(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad node id {line!r}") from exc
    return keep


def load_edge_list(spec: EdgeListSpec) -> tuple[MultiGraph, dict[int, int], IngestReport]:
    """Load, clean, and relabel an edge list.

    Returns the graph, the original-id -> new-id map, and a report of what
    was read and dropped.
    """
    keep = _read_filter(spec.node_filter) if spec.node_filter is not None else None
    raw_edges: list[tuple[int, int]] = []
    lines_read = 0
    loops_dropped = 0
    filtered_out = 0
    with open(spec.path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if len(tokens) != 2:
                raise ValueError(f"{spec.path}:{lineno}: expected 'u v', got {stripped!r}")
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError as exc:
                raise ValueError(f"{spec.path}:{lineno}: non-integer endpoint in {stripped!r}") from exc
            lines_read += 1
            if keep is not None and (u not in keep or v not in keep):
                filtered_out += 1
                continue
            if u == v:
                if spec.drop_loops:
                    loops_dropped += 1
                    continue
                raw_edges.append((u, v))
            else:
                # orientation is meaningless once undirected
                raw_edges.append((u, v) if u < v else (v, u))

    duplicates = 0
    if spec.dedupe:
        unique = sorted(set(raw_edges))
        duplicates = len(raw_edges) - len(unique)
        raw_edges = unique
    if not raw_edges:
        raise ValueError(f"{spec.path}: no edges survived ingestion")

    ids = sorted({u for e in raw_edges for u in e})
    id_map = {orig: new for new, orig in enumerate(ids)}
    edges = [(id_map[u], id_map[v]) for u, v in raw_edges]
    g = MultiGraph(len(ids), edges)
    report = IngestReport(
        lines_read=lines_read,
        nodes=g.n,
        edges=g.num_edges,
        loops_dropped=loops_dropped,
        duplicates_collapsed=duplicates,
        filtered_out=filtered_out,
    )
    return g, id_map, report


def write_edge_list(g: MultiGraph, path: str | Path, comments: list[str] | None = None) -> None:
    """Emit "u v" per line with optional leading # comments."""
    with open(path, "w") as fh:
        for comment in comments or []:
            fh.write(f"# {comment}\n")
        for u, v in g.edge_array:
            fh.write(f"{u} {v}\n")


def _require_simple(g: MultiGraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edge_array:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError("clustering statistics need a loop-free graph")
        if v in adj[u]:
            raise ValueError("clustering statistics need a graph without parallel edges")
        adj[u].add(v)
        adj[v].add(u)
    return adj


def clustering_stats(g: MultiGraph) -> tuple[float, float]:
    """(average local clustering coefficient, transitivity) of a simple graph.

    Vertices of degree < 2 contribute 0 to the average.  Transitivity is
    3 * triangles / connected triples.
    """
    adj = _require_simple(g)
    twice_triangles = [0] * g.n
    for u, v in g.edge_array:
        u, v = int(u), int(v)
        a, b = (adj[u], adj[v]) if len(adj[u]) <= len(adj[v]) else (adj[v], adj[u])
        common = sum(1 for w in a if w in b)
        twice_triangles[u] += common
        twice_triangles[v] += common

    local_sum = 0.0
    triples = 0
    triangle_ends = 0
    for v in range(g.n):
        d = len(adj[v])
        if d >= 2:
            local_sum += twice_triangles[v] / (d * (d - 1))
            triples += d * (d - 1) // 2
        triangle_ends += twice_triangles[v]
    avg_clustering = local_sum / g.n if g.n else 0.0
    # each triangle contributes 2 to three vertices' counters
    triangles = triangle_ends // 6
    transitivity = 3.0 * triangles / triples if triples else 0.0
    return avg_clustering, transitivity
