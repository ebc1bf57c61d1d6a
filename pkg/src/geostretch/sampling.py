"""Farthest Point Sampling of source vertices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import KTooLarge, SourceError
from .graph import Graph
from .shortest_path import _dijkstra, check_sources, nearest_source_distances


@dataclass(frozen=True)
class SourceSet:
    """Sources in selection order.

    ``radii[i]`` is the covering radius ``max_p min_{j<=i} d(p, s_j)`` right
    after ``sources[i]`` was picked.
    """

    sources: tuple[int, ...]
    radii: tuple[float, ...]
    start_policy: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.sources)

    def __len__(self):
        return len(self.sources)

    def __iter__(self):
        return iter(self.sources)

    def prefix(self, k: int) -> "SourceSet":
        """The first ``k`` sources; FPS prefixes are themselves FPS outputs."""
        return SourceSet(self.sources[:k], self.radii[:k], dict(self.start_policy))

    def to_dict(self) -> dict:
        return {
            "sources": list(self.sources),
            "radii": list(self.radii),
            "start_policy": dict(self.start_policy),
        }


def _resolve_start(n: int, start, seed) -> tuple[int, dict]:
    if start is not None and seed is not None:
        raise SourceError("pass either start or seed, not both")
    if seed is not None:
        v = int(np.random.default_rng(seed).integers(n))
        return v, {"mode": "seeded", "seed": int(seed), "vertex": v}
    v = 0 if start is None else start
    return v, {"mode": "fixed", "vertex": v}


def _fps(graph: Graph, k: int, start=None, seed=None, keep_rows: bool = False):
    n = graph.vertex_count
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise SourceError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    if k > n:
        raise KTooLarge(f"k = {k} exceeds the vertex count {n}")
    first, policy = _resolve_start(n, start, seed)
    first = graph.check_vertex(first, "start")
    policy["vertex"] = first
    adj = graph.adjacency
    rows = np.empty((k, n), dtype=np.float64) if keep_rows else None
    sources = [first]
    radii = []
    nearest = None
    while True:
        row = np.array(_dijkstra(adj, n, sources[-1])[0], dtype=np.float64)
        if keep_rows:
            rows[len(sources) - 1] = row
        nearest = row if nearest is None else np.minimum(nearest, row)
        far = int(np.argmax(nearest))  # first maximum = smallest id
        radii.append(float(nearest[far]))
        if len(sources) == k:
            break
        sources.append(far)
    return SourceSet(tuple(sources), tuple(radii), policy), rows


def farthest_point_sampling(graph: Graph, k: int, start: int | None = None, seed: int | None = None) -> SourceSet:
    """Greedy farthest-point selection of ``k`` sources.

    The first source is ``start`` (default vertex 0) or, when ``seed`` is
    given, a uniformly random vertex drawn from a generator seeded with it.
    Every later source is a vertex farthest from the sources picked so far,
    ties going to the smallest id. Runs one Dijkstra per source.
    """
    return _fps(graph, k, start=start, seed=seed)[0]


def random_sources(graph: Graph, k: int, seed: int | None = None) -> SourceSet:
    """Uniform random baseline: ``k`` distinct vertices."""
    n = graph.vertex_count
    if k < 1:
        raise SourceError(f"k must be a positive integer, got {k!r}")
    if k > n:
        raise KTooLarge(f"k = {k} exceeds the vertex count {n}")
    chosen = np.random.default_rng(seed).choice(n, size=k, replace=False).tolist()
    radii = []
    nearest = None
    for s in chosen:
        row = np.array(_dijkstra(graph.adjacency, n, s)[0])
        nearest = row if nearest is None else np.minimum(nearest, row)
        radii.append(float(nearest.max()))
    return SourceSet(tuple(chosen), tuple(radii), {"mode": "random", "seed": seed})


def kcenter_radius(graph: Graph, sources: Sequence[int]) -> float:
    """``max_p min_i d(p, s_i)`` via one multi-source sweep."""
    srcs = check_sources(graph, sources)
    return float(nearest_source_distances(graph, srcs).max())
