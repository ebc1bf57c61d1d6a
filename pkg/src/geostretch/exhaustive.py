"""Brute-force ground truth for small instances.

Every enumerator walks k-subsets in lexicographic order and shares one
all-pairs distance matrix across subsets, so scoring a subset costs
``O(k m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .analysis import BOUND_TOL, adjacent_scan
from .exceptions import BudgetExceeded, EmptyEdgeSet, KTooLarge, SourceError
from .graph import Graph
from .shortest_path import all_pairs

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class ExhaustiveResult:
    objective: float
    best_sets: list[tuple[int, ...]] = field(default_factory=list)
    sets_examined: int = 0

    @property
    def best(self) -> tuple[int, ...] | None:
        return self.best_sets[0] if self.best_sets else None

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "best_sets": [list(s) for s in self.best_sets],
            "sets_examined": self.sets_examined,
        }


def check_budget(n: int, k: int, budget: int = DEFAULT_BUDGET) -> int:
    count = math.comb(n, k)
    if count > budget:
        raise BudgetExceeded(n, k, count, budget)
    return count


def _check_k(graph: Graph, k: int) -> int:
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise SourceError(f"k must be a positive integer, got {k!r}")
    if k > graph.vertex_count:
        raise KTooLarge(f"k = {k} exceeds the vertex count {graph.vertex_count}")
    return int(k)


class _StretchScorer:
    def __init__(self, graph: Graph, distances: np.ndarray | None):
        if graph.edge_count == 0:
            raise EmptyEdgeSet("stretch is undefined on a single-vertex graph")
        self.dist = all_pairs(graph) if distances is None else distances
        self.eu, self.ev = graph.edge_u, graph.edge_v
        self.denom = self.dist[self.eu, self.ev]

    def __call__(self, subset) -> float:
        return adjacent_scan(self.dist[list(subset)], self.eu, self.ev, self.denom)[0]


def _minimise(scores: Iterable[tuple[tuple[int, ...], float]]) -> ExhaustiveResult:
    best, sets, count = math.inf, [], 0
    for subset, value in scores:
        count += 1
        if value < best:
            best, sets = value, [subset]
        elif value == best:
            sets.append(subset)
    return ExhaustiveResult(best, sets, count)


def optimal_stretch_sources(graph: Graph, k: int, budget: int = DEFAULT_BUDGET, distances: np.ndarray | None = None) -> ExhaustiveResult:
    """Minimum stretch factor over all k-subsets of sources."""
    k = _check_k(graph, k)
    check_budget(graph.vertex_count, k, budget)
    score = _StretchScorer(graph, distances)
    return _minimise((c, score(c)) for c in combinations(range(graph.vertex_count), k))


def optimal_kcenter_sources(graph: Graph, k: int, budget: int = DEFAULT_BUDGET, distances: np.ndarray | None = None) -> ExhaustiveResult:
    """Minimum covering radius over all k-subsets."""
    k = _check_k(graph, k)
    check_budget(graph.vertex_count, k, budget)
    dist = all_pairs(graph) if distances is None else distances
    return _minimise(
        (c, float(dist[list(c)].min(axis=0).max()))
        for c in combinations(range(graph.vertex_count), k)
    )


def minimum_vertex_cover(edges, n_vertices: int | None = None, max_k: int | None = None, budget: int = DEFAULT_BUDGET) -> ExhaustiveResult:
    """Smallest vertex cover of an unweighted edge list, by increasing subset size.

    ``objective`` is the cover size, or ``inf`` when no cover of size at most
    ``max_k`` exists; ``best_sets`` lists every minimum cover. ``budget``
    caps the total number of subsets examined.
    """
    pairs = [(int(e[0]), int(e[1])) for e in edges]
    n = n_vertices if n_vertices is not None else (max((max(p) for p in pairs), default=-1) + 1)
    max_k = n if max_k is None else min(max_k, n)
    masks = [0] * n
    for j, (u, v) in enumerate(pairs):
        masks[u] |= 1 << j
        masks[v] |= 1 << j
    full = (1 << len(pairs)) - 1
    examined = 0
    for k in range(max_k + 1):
        count = math.comb(n, k)
        if examined + count > budget:
            raise BudgetExceeded(n, k, examined + count, budget)
        covers = []
        for c in combinations(range(n), k):
            acc = 0
            for v in c:
                acc |= masks[v]
            if acc == full:
                covers.append(c)
        examined += count
        if covers:
            return ExhaustiveResult(float(k), covers, examined)
    return ExhaustiveResult(math.inf, [], examined)


def exists_sources_with_stretch(graph: Graph, k: int, xi: float, budget: int = DEFAULT_BUDGET, distances: np.ndarray | None = None) -> tuple[bool, tuple[int, ...] | None]:
    """Is there a set of ``k`` sources with stretch at most ``xi``?

    Stops at the first witness in lexicographic order. ``k = 0`` (and any
    ``k`` larger than the vertex count) admits no such set.
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise SourceError(f"k must be a non-negative integer, got {k!r}")
    n = graph.vertex_count
    if k == 0 or k > n:
        return False, None
    check_budget(n, k, budget)
    score = _StretchScorer(graph, distances)
    for c in combinations(range(n), k):
        if score(c) <= xi + BOUND_TOL:
            return True, c
    return False, None
