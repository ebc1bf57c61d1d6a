"""scikit-learn style wrappers around sampling and the landmark oracle.

A fitted :class:`LandmarkDistanceOracle` answers ``predict(pairs)`` with
approximate geodesic distances and ``transform(vertices)`` with each
vertex's distances to the landmarks, so it can sit inside a
``Pipeline`` or be cloned and grid-searched like any estimator.
"""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array, check_random_state
from sklearn.utils.validation import check_is_fitted

from .analysis import NAIVE_CAP, stretch_fast, stretch_naive
from .graph import Graph
from .oracle import Oracle, approx_distances, build_oracle
from .sampling import _fps, random_sources
from .shortest_path import DistanceTable


def check_graph(X) -> Graph:
    if not isinstance(X, Graph):
        raise TypeError(f"expected a geostretch Graph, got {type(X).__name__}")
    return X


def check_vertices(vertices, n: int) -> np.ndarray:
    arr = check_array(np.asarray(vertices).reshape(-1, 1), dtype=np.int64).ravel()
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"vertex ids must lie in [0, {n})")
    return arr


def check_pairs(pairs, n: int) -> np.ndarray:
    arr = check_array(pairs, dtype=np.int64)
    if arr.shape[1] != 2:
        raise ValueError(f"pairs must have shape (n_pairs, 2), got {arr.shape}")
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError(f"vertex ids must lie in [0, {n})")
    return arr


def _resolve_start(start, random_state, n):
    """Map ``start``/``random_state`` onto the sampler's fixed-or-seeded start."""
    if start is not None or random_state is None:
        return start, None
    if isinstance(random_state, numbers.Integral):
        return None, int(random_state)
    return int(check_random_state(random_state).randint(n)), None


class FarthestPointSampler(TransformerMixin, BaseEstimator):
    """Select landmark vertices by farthest point sampling.

    Parameters
    ----------
    n_sources : int, default=8
    start : int or None, default=None
        First source. With ``start=None`` and ``random_state=None`` the
        first source is vertex 0.
    random_state : int, RandomState or None, default=None
        Draws a random first source when ``start`` is None.

    Attributes
    ----------
    sources_ : ndarray of shape (n_sources,)
    radii_ : ndarray of shape (n_sources,)
        Covering radius after each selection.
    distances_ : ndarray of shape (n_sources, n_vertices)
    """

    def __init__(self, n_sources=8, start=None, random_state=None):
        self.n_sources = n_sources
        self.start = start
        self.random_state = random_state

    def fit(self, X, y=None):
        graph = check_graph(X)
        start, seed = _resolve_start(self.start, self.random_state, graph.vertex_count)
        self.source_set_, self.distances_ = _fps(graph, self.n_sources, start=start, seed=seed, keep_rows=True)
        self.sources_ = np.array(self.source_set_.sources, dtype=np.int64)
        self.radii_ = np.array(self.source_set_.radii)
        self.n_vertices_ = graph.vertex_count
        self.graph_checksum_ = graph.checksum
        return self

    def transform(self, X):
        """Distances from each vertex to every source, shape ``(n, n_sources)``.

        ``X`` is either the fitted graph (all vertices) or an array of ids.
        """
        check_is_fitted(self, "distances_")
        if isinstance(X, Graph):
            if X.checksum != self.graph_checksum_:
                raise ValueError("transform received a different graph than fit")
            return self.distances_.T.copy()
        return self.distances_[:, check_vertices(X, self.n_vertices_)].T


class LandmarkDistanceOracle(BaseEstimator):
    """Approximate all-pairs geodesic distances through landmark vertices.

    ``predict`` returns ``min_i d(p, s_i) + d(s_i, q)`` for each pair.

    Parameters
    ----------
    n_sources : int, default=8
    sampler : {"fps", "random"}, default="fps"
    start : int or None, default=None
    random_state : int, RandomState or None, default=None
    threads : int or None, default=None
        Worker cap for building rows when the sampler does not supply them.
    """

    def __init__(self, n_sources=8, sampler="fps", start=None, random_state=None, threads=None):
        self.n_sources = n_sources
        self.sampler = sampler
        self.start = start
        self.random_state = random_state
        self.threads = threads

    def fit(self, X, y=None):
        graph = check_graph(X)
        if self.sampler == "fps":
            start, seed = _resolve_start(self.start, self.random_state, graph.vertex_count)
            source_set, rows = _fps(graph, self.n_sources, start=start, seed=seed, keep_rows=True)
            self.oracle_ = Oracle(DistanceTable(source_set.sources, rows), graph.checksum, source_set)
        elif self.sampler == "random":
            seed = self.random_state if isinstance(self.random_state, numbers.Integral) else None
            source_set = random_sources(graph, self.n_sources, seed=seed)
            self.oracle_ = build_oracle(graph, source_set, threads=self.threads)
        else:
            raise ValueError(f"sampler must be 'fps' or 'random', got {self.sampler!r}")
        self.sources_ = np.array(self.oracle_.sources, dtype=np.int64)
        self.n_vertices_ = graph.vertex_count
        return self

    def predict(self, X):
        """Approximate distances for an ``(n_pairs, 2)`` array of vertex pairs."""
        check_is_fitted(self, "oracle_")
        pairs = check_pairs(X, self.n_vertices_)
        return approx_distances(self.oracle_, pairs[:, 0], pairs[:, 1])

    def transform(self, X):
        check_is_fitted(self, "oracle_")
        return self.oracle_.table[:, check_vertices(X, self.n_vertices_)].T

    def stretch(self, graph: Graph, method: str = "fast", cap: int = NAIVE_CAP):
        check_is_fitted(self, "oracle_")
        if method == "fast":
            return stretch_fast(graph, self.oracle_)
        if method == "naive":
            return stretch_naive(graph, self.oracle_, cap=cap)
        raise ValueError(f"method must be 'fast' or 'naive', got {method!r}")
