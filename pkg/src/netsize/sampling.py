"""Uniform vertex sampling and the referral-capture simulator.

The referral process mirrors field practice: a handful of uniformly chosen
seeds receive coupons, each interviewed subject recruits a random count of
still-undiscovered neighbors (two with probability 0.9, one otherwise, by
default), and a fresh seed is drawn whenever recruitment stalls before the
target size is reached.  The resulting sample records exactly what a field
study would see: discovery order, the referral forest, each subject's
reported degree, and each subject's non-referral alter bag.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph import MultiGraph, ReferralForest, _free_bag, _removals_by_vertex
from .multiset import Multiset

DEFAULT_RECRUIT_LAW = ((2, 0.9), (1, 0.1))


@dataclass(frozen=True)
class RdsConfig:
    """Parameters of one referral capture."""

    target_size: int
    num_seeds: int = 7
    recruit_law: tuple[tuple[int, float], ...] = DEFAULT_RECRUIT_LAW
    seeds: Optional[tuple[int, ...]] = None  # explicit seed vertices (testing/repro)
    seed: Optional[int] = None               # rng seed when no generator is passed

    def __post_init__(self):
        if self.target_size < 1:
            raise ValueError("target size must be >= 1")
        if not 1 <= self.num_seeds <= self.target_size:
            raise ValueError("need 1 <= num_seeds <= target_size")
        if not self.recruit_law:
            raise ValueError("recruit law must have at least one outcome")
        total = sum(p for _, p in self.recruit_law)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"recruit law probabilities sum to {total}, not 1")
        if any(k < 0 for k, _ in self.recruit_law):
            raise ValueError("recruit counts must be non-negative")


@dataclass(frozen=True)
class RdsSample:
    """A captured sample: everything the estimators are allowed to see."""

    order: tuple[int, ...]                   # discovery order
    seed_of: dict[int, int] = field(compare=False)
    degrees: dict[int, int] = field(compare=False)
    alters: dict[int, Multiset] = field(compare=False)
    forest: Optional[ReferralForest] = None

    @property
    def size(self) -> int:
        return len(self.order)

    @property
    def seeds(self) -> tuple[int, ...]:
        seen: list[int] = []
        for u in self.order:
            s = self.seed_of[u]
            if s not in seen:
                seen.append(s)
        return tuple(seen)

    def components(self) -> dict[int, list[int]]:
        comps: dict[int, list[int]] = {}
        for u in self.order:
            comps.setdefault(self.seed_of[u], []).append(u)
        return comps


def uniform_sample(g: MultiGraph, r: int, rng: np.random.Generator) -> tuple[int, ...]:
    """A uniformly random r-subset of the vertices, without replacement."""
    if r > g.n:
        raise ValueError(f"cannot sample {r} vertices from {g.n}")
    if r == 0:
        return ()
    return tuple(int(v) for v in rng.choice(g.n, size=r, replace=False))


def as_sample_view(g: MultiGraph, subjects: Iterable[int]) -> RdsSample:
    """Wrap a uniform sample as a degenerate referral sample (all seeds, no edges).

    Every subject reports their full neighbor bag, which is what the
    uniform-sampling estimator consumes.
    """
    order = tuple(int(v) for v in subjects)
    if len(set(order)) != len(order):
        raise ValueError("subjects must be distinct")
    seed_of = {v: v for v in order}
    degrees = {v: g.degree(v) for v in order}
    alters = {v: g.neighbors(v) for v in order}
    forest = ReferralForest(edges=(), seeds=order, seed_of=dict(seed_of))
    return RdsSample(order=order, seed_of=seed_of, degrees=degrees, alters=alters, forest=forest)


def _draw_recruit_count(law: Sequence[tuple[int, float]], rng: np.random.Generator) -> int:
    u = rng.random()
    acc = 0.0
    for count, prob in law:
        acc += prob
        if u < acc:
            return count
    return law[-1][0]


def _draw_fresh_seed(g: MultiGraph, discovered: set[int], rng: np.random.Generator) -> int:
    """Uniform undiscovered vertex, preferring those with at least one tie.

    A seed is recruited through community contacts, so isolated vertices
    only become seeds when nothing else is left.
    """
    # rejection is cheap while the sample is small relative to the graph
    for _ in range(64):
        v = int(rng.integers(g.n))
        if v not in discovered and g.degree(v) > 0:
            return v
    tied = [v for v in range(g.n) if v not in discovered and g.degree(v) > 0]
    if tied:
        return tied[int(rng.integers(len(tied)))]
    remaining = sorted(set(range(g.n)) - discovered)
    return remaining[int(rng.integers(len(remaining)))]


def _draw_initial_seeds(g: MultiGraph, count: int, rng: np.random.Generator) -> list[int]:
    tied = np.flatnonzero(np.asarray(g.degrees()) > 0)
    if len(tied) >= count:
        return [int(v) for v in rng.choice(tied, size=count, replace=False)]
    seeds = [int(v) for v in tied]
    isolated = np.flatnonzero(np.asarray(g.degrees()) == 0)
    extra = rng.choice(isolated, size=count - len(seeds), replace=False)
    return seeds + [int(v) for v in extra]


def rds_capture(
    g: MultiGraph,
    cfg: RdsConfig,
    rng: Optional[np.random.Generator] = None,
) -> RdsSample:
    """Run one referral capture until the target sample size is reached.

    Recruitment picks a uniform member of the current frontier, who recruits
    up to ``k ~ recruit_law`` of their undiscovered neighbors (all of them
    when fewer are available).  When the frontier empties short of the
    target, a fresh seed is drawn uniformly from the unsampled vertices and
    opens a new referral component.  No vertex is ever recruited twice.

    Seeds are recruited through community contacts, so selection prefers
    vertices with at least one tie; isolated vertices are seeded only once
    no tied vertex remains.  Recruits always have a tie (their recruiter),
    so samples contain zero-degree subjects only in that degenerate case.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    n = g.n
    r = cfg.target_size
    if r > n:
        raise ValueError(f"target size {r} exceeds population {n}")

    if cfg.seeds is not None:
        seeds = [int(v) for v in cfg.seeds]
        if len(set(seeds)) != len(seeds):
            raise ValueError("explicit seeds must be distinct")
        if len(seeds) != cfg.num_seeds:
            raise ValueError("explicit seeds must match num_seeds")
        for v in seeds:
            if not 0 <= v < n:
                raise ValueError(f"seed {v} out of range")
    else:
        seeds = _draw_initial_seeds(g, cfg.num_seeds, rng)

    order: list[int] = list(seeds)
    discovered: set[int] = set(seeds)
    seed_of: dict[int, int] = {s: s for s in seeds}
    frontier: list[int] = list(seeds)
    forest_edges: list[tuple[int, int]] = []
    all_seeds: list[int] = list(seeds)

    while len(order) < r:
        if not frontier:
            fresh = _draw_fresh_seed(g, discovered, rng)
            order.append(fresh)
            discovered.add(fresh)
            seed_of[fresh] = fresh
            frontier.append(fresh)
            all_seeds.append(fresh)
            continue
        idx = int(rng.integers(len(frontier)))
        x = frontier[idx]
        frontier[idx] = frontier[-1]
        frontier.pop()

        candidates = sorted({int(w) for w in g.neighbor_ids(x)} - discovered)
        if candidates:
            k = min(_draw_recruit_count(cfg.recruit_law, rng), len(candidates))
            if k == len(candidates):
                recruits = candidates
            elif k == 1:
                recruits = [candidates[int(rng.integers(len(candidates)))]]
            elif k == 2:
                m = len(candidates)
                i = int(rng.integers(m))
                j = int(rng.integers(m - 1))
                if j >= i:
                    j += 1
                recruits = [candidates[i], candidates[j]]
            else:
                picks = rng.choice(len(candidates), size=k, replace=False)
                recruits = [candidates[int(i)] for i in picks]
            for v in recruits:
                order.append(v)
                discovered.add(v)
                seed_of[v] = seed_of[x]
                frontier.append(v)
                forest_edges.append((x, v))

    forest = ReferralForest(edges=tuple(forest_edges), seeds=tuple(all_seeds), seed_of=dict(seed_of))
    removals = _removals_by_vertex(forest_edges)
    degrees = {u: g.degree(u) for u in order}
    alters = {u: _free_bag(g, u, removals.get(u)) for u in order}
    return RdsSample(
        order=tuple(order), seed_of=seed_of, degrees=degrees, alters=alters, forest=forest
    )


# ---------------------------------------------------------------------------
# sample dumps: one CSV layout shared by simulated, hashed, and field data

DUMP_COLUMNS = ("subject_code", "recruiter_code", "component_id", "reported_degree", "alter_codes")
SEED_MARK = "SEED"


@dataclass(frozen=True)
class DumpRow:
    subject_code: int
    recruiter_code: Optional[int]   # None marks a seed
    component_id: int
    reported_degree: int
    alter_codes: Multiset


def sample_to_rows(sample: RdsSample) -> list[DumpRow]:
    """Flatten a plaintext sample (vertex ids double as codes)."""
    comp_index: dict[int, int] = {}
    recruiter_of: dict[int, int] = {}
    if sample.forest is not None:
        for a, b in sample.forest.edges:
            recruiter_of[b] = a
    rows = []
    for u in sample.order:
        comp = sample.seed_of[u]
        comp_id = comp_index.setdefault(comp, len(comp_index))
        rows.append(
            DumpRow(
                subject_code=u,
                recruiter_code=recruiter_of.get(u),
                component_id=comp_id,
                reported_degree=sample.degrees[u],
                alter_codes=sample.alters[u],
            )
        )
    return rows


def rows_to_sample(rows: Sequence[DumpRow]) -> RdsSample:
    """Rebuild a plaintext sample view from dump rows (ids must be unique)."""
    order = tuple(row.subject_code for row in rows)
    if len(set(order)) != len(order):
        raise ValueError("duplicate subject ids; hashed dumps cannot be read as plaintext")
    comp_seed: dict[int, int] = {}
    seed_of: dict[int, int] = {}
    degrees: dict[int, int] = {}
    alters: dict[int, Multiset] = {}
    forest_edges: list[tuple[int, int]] = []
    seeds: list[int] = []
    have_forest = True
    for row in rows:
        u = row.subject_code
        if row.component_id not in comp_seed:
            comp_seed[row.component_id] = u
            if row.recruiter_code is None:
                seeds.append(u)
            else:
                have_forest = False
        seed_of[u] = comp_seed[row.component_id]
        degrees[u] = row.reported_degree
        alters[u] = row.alter_codes
        if row.recruiter_code is not None:
            forest_edges.append((row.recruiter_code, u))
    forest = None
    if have_forest:
        forest = ReferralForest(edges=tuple(forest_edges), seeds=tuple(seeds), seed_of=dict(seed_of))
    return RdsSample(order=order, seed_of=seed_of, degrees=degrees, alters=alters, forest=forest)


def sample_dump_lines(rows: Iterable[DumpRow], header_comment: str | None = None) -> list[str]:
    lines = []
    if header_comment:
        lines.append(f"# {header_comment}")
    lines.append(",".join(DUMP_COLUMNS))
    for row in rows:
        alters = ";".join(
            str(code) for code, count in row.alter_codes.as_sorted_items() for _ in range(count)
        )
        recruiter = SEED_MARK if row.recruiter_code is None else str(row.recruiter_code)
        lines.append(
            f"{row.subject_code},{recruiter},{row.component_id},{row.reported_degree},{alters}"
        )
    return lines


def write_sample_dump(rows: Iterable[DumpRow], path, header_comment: str | None = None) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(sample_dump_lines(rows, header_comment)) + "\n")


def read_sample_dump(path) -> list[DumpRow]:
    rows: list[DumpRow] = []
    with open(path, newline="") as fh:
        reader = csv.reader(line for line in fh if not line.startswith("#"))
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty sample dump")
        if [c.strip() for c in header] != list(DUMP_COLUMNS):
            raise ValueError(f"{path}: unexpected dump columns {header}")
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(DUMP_COLUMNS):
                raise ValueError(f"{path}:{lineno}: expected {len(DUMP_COLUMNS)} fields")
            subject, recruiter, comp, degree, alters = record
            alter_bag = Multiset(int(tok) for tok in alters.split(";") if tok != "")
            rows.append(
                DumpRow(
                    subject_code=int(subject),
                    recruiter_code=None if recruiter == SEED_MARK else int(recruiter),
                    component_id=int(comp),
                    reported_degree=int(degree),
                    alter_codes=alter_bag,
                )
            )
    return rows
