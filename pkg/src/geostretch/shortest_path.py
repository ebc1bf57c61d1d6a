"""Exact graph geodesics with a binary-heap Dijkstra.

Heap entries are ``(distance, vertex)`` tuples, so equal-distance entries
pop in vertex-id order. Stale entries are skipped on pop instead of using
decrease-key.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Sequence

import numpy as np

from .exceptions import DuplicateSource, EmptySourceSet, NotAdjacent
from .graph import Graph

THREADS_ENV = "GEOSTRETCH_THREADS"


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class DistanceRow:
    source: int
    dist: np.ndarray
    parent: np.ndarray  # -1 at the source

    def path_to(self, v: int) -> list[int]:
        path = [int(v)]
        while path[-1] != self.source:
            path.append(int(self.parent[path[-1]]))
        return path[::-1]


@dataclass(frozen=True)
class DistanceTable:
    """``table[i, v]`` is the geodesic distance from ``sources[i]`` to ``v``."""

    sources: tuple[int, ...]
    table: np.ndarray

    @property
    def k(self) -> int:
        return len(self.sources)

    @property
    def n(self) -> int:
        return self.table.shape[1]


def _dijkstra(adj, n: int, source: int) -> tuple[list[float], list[int]]:
    dist = [math.inf] * n
    parent = [-1] * n
    done = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heappush(heap, (nd, v))
    return dist, parent


def sssp(graph: Graph, source: int) -> DistanceRow:
    """Single-source shortest paths from ``source``."""
    s = graph.check_vertex(source, "source")
    dist, parent = _dijkstra(graph.adjacency, graph.vertex_count, s)
    return DistanceRow(s, np.array(dist, dtype=np.float64), np.array(parent, dtype=np.int64))


def _truncated_distance(adj, u: int, v: int, bound: float) -> float:
    # any u-v path shorter than `bound` stays inside the ball of that radius
    dist = {u: 0.0}
    done = set()
    heap = [(0.0, u)]
    while heap:
        d, x = heappop(heap)
        if x in done:
            continue
        if x == v:
            return d
        if d > bound:
            break
        done.add(x)
        for y, w in adj[x]:
            nd = d + w
            if nd < dist.get(y, math.inf):
                dist[y] = nd
                heappush(heap, (nd, y))
    return bound


def edge_endpoint_distance(graph: Graph, u: int, v: int) -> float:
    """Exact ``d(u, v)`` for adjacent ``u, v``; may be shorter than the edge itself."""
    u = graph.check_vertex(u, "u")
    v = graph.check_vertex(v, "v")
    ell = graph.length(u, v)
    if ell is None:
        raise NotAdjacent(f"vertices {u} and {v} are not adjacent")
    return _truncated_distance(graph.adjacency, u, v, ell)


def edge_geodesics(graph: Graph) -> np.ndarray:
    """``d(u, v)`` for every edge, in the graph's canonical edge order."""
    adj = graph.adjacency
    return np.fromiter(
        (
            _truncated_distance(adj, u, v, w)
            for u, v, w in zip(graph.edge_u.tolist(), graph.edge_v.tolist(), graph.edge_length.tolist())
        ),
        dtype=np.float64,
        count=graph.edge_count,
    )


def check_sources(graph: Graph, sources: Sequence[int]) -> tuple[int, ...]:
    srcs = tuple(graph.check_vertex(s, "source") for s in sources)
    if not srcs:
        raise EmptySourceSet("at least one source is required")
    if len(set(srcs)) != len(srcs):
        seen, dup = set(), None
        for s in srcs:
            if s in seen:
                dup = s
                break
            seen.add(s)
        raise DuplicateSource(f"source {dup} listed more than once")
    return srcs


def multi_sssp(graph: Graph, sources: Sequence[int], threads: int | None = None) -> DistanceTable:
    """One exact distance row per source, assembled in source order.

    Rows are independent; with ``threads > 1`` they are computed on a
    thread pool. The result does not depend on the schedule.
    """
    srcs = check_sources(graph, sources)
    adj, n = graph.adjacency, graph.vertex_count
    table = np.empty((len(srcs), n), dtype=np.float64)
    workers = min(threads or default_threads(), len(srcs))

    def row(i):
        table[i] = _dijkstra(adj, n, srcs[i])[0]

    if workers <= 1:
        for i in range(len(srcs)):
            row(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(row, range(len(srcs))))
    return DistanceTable(srcs, table)


def all_pairs(graph: Graph, threads: int | None = None) -> np.ndarray:
    """Full ``n x n`` distance matrix from ``n`` Dijkstra runs."""
    return multi_sssp(graph, range(graph.vertex_count), threads=threads).table


def nearest_source_distances(graph: Graph, sources: Sequence[int]) -> np.ndarray:
    """Distance from every vertex to its closest source, in one multi-source sweep."""
    srcs = check_sources(graph, sources)
    adj, n = graph.adjacency, graph.vertex_count
    dist = [math.inf] * n
    done = [False] * n
    heap = []
    for s in srcs:
        dist[s] = 0.0
        heap.append((0.0, s))
    heap.sort()
    while heap:
        d, u = heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heappush(heap, (nd, v))
    return np.array(dist, dtype=np.float64)
