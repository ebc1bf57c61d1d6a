"""Timing harness: oracle build cost, query cost versus k, fast vs naive stretch."""

from __future__ import annotations

import statistics
import time
from typing import Callable, Sequence

import numpy as np

from .analysis import stretch_fast, stretch_naive
from .graph import Graph
from .oracle import Oracle, approx_distances, build_oracle
from .sampling import farthest_point_sampling


def median_time(fn: Callable[[], object], repeats: int = 5) -> float:
    times = []
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def linear_fit_r2(x: Sequence[float], y: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares line ``y = slope * x + intercept`` and its R^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def query_scaling(oracle: Oracle, ks: Sequence[int], n_queries: int = 20000, repeats: int = 7, seed: int = 0) -> list[dict]:
    """Median per-query time for oracles restricted to the first ``k`` sources.

    Each measurement answers a batch of ``n_queries`` random pairs and
    divides by the batch size.
    """
    rng = np.random.default_rng(seed)
    ps = rng.integers(oracle.n, size=n_queries)
    qs = rng.integers(oracle.n, size=n_queries)
    rows = []
    for k in ks:
        sub = oracle.restrict(k)
        approx_distances(sub, ps[:16], qs[:16])
        t = median_time(lambda: approx_distances(sub, ps, qs), repeats)
        rows.append({"k": int(k), "seconds_per_query": t / n_queries})
    return rows


def run_benchmark(
    graph: Graph,
    k: int,
    ks: Sequence[int] | None = None,
    n_queries: int = 20000,
    repeats: int = 5,
    naive_cap: int = 2000,
    threads: int | None = None,
    start: int | None = None,
    seed: int | None = None,
) -> dict:
    ks = sorted(set(ks)) if ks else sorted({max(1, k // 4), max(1, k // 2), k})
    kmax = max(max(ks), k)
    t0 = time.perf_counter()
    sources = farthest_point_sampling(graph, kmax, start=start, seed=seed)
    fps_time = time.perf_counter() - t0

    t0 = time.perf_counter()
    oracle_k = build_oracle(graph, sources.prefix(k), threads=threads)
    build_time = time.perf_counter() - t0
    big = oracle_k if kmax == k else build_oracle(graph, sources, threads=threads)

    scaling = query_scaling(big, ks, n_queries=n_queries, repeats=repeats)
    slope, intercept, r2 = linear_fit_r2([r["k"] for r in scaling], [r["seconds_per_query"] for r in scaling])

    t0 = time.perf_counter()
    fast = stretch_fast(graph, oracle_k)
    fast_time = time.perf_counter() - t0
    out = {
        "n": graph.vertex_count,
        "m": graph.edge_count,
        "k": k,
        "fps_seconds": fps_time,
        "build_seconds": build_time,
        "query_scaling": scaling,
        "query_fit": {"slope": slope, "intercept": intercept, "r2": r2},
        "stretch_fast": {"stretch": fast.stretch, "seconds": fast_time},
    }
    if graph.vertex_count <= naive_cap:
        t0 = time.perf_counter()
        naive = stretch_naive(graph, oracle_k, cap=naive_cap)
        out["stretch_naive"] = {"stretch": naive.stretch, "seconds": time.perf_counter() - t0}
    else:
        out["stretch_naive"] = None
    return out
