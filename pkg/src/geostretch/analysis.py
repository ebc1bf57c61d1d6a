"""Stretch factor of a landmark oracle and checks of the bounds it obeys.

The worst pair of a landmark oracle is always an adjacent pair of
vertices, so :func:`stretch_fast` only scans edges (with the true geodesic
between the endpoints as denominator). :func:`stretch_naive` scans every
ordered pair and serves as its cross-check.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import EmptyEdgeSet, GraphOracleMismatch, GraphTooLargeForNaive, SourceSetSizeMismatch
from .graph import Graph, edge_stats
from .oracle import Oracle, build_oracle
from .sampling import SourceSet
from .shortest_path import all_pairs, edge_geodesics

BOUND_TOL = 1e-9
NAIVE_CAP = 2000


@dataclass(frozen=True)
class StretchReport:
    stretch: float
    witness_pair: tuple[int, int]
    witness_source: int
    method: str
    pair_count_examined: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness_pair"] = list(self.witness_pair)
        return d


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    holds: bool
    slack: float

    @classmethod
    def compare(cls, name: str, lhs: float, rhs: float, tol: float = BOUND_TOL) -> "BoundCheck":
        lhs, rhs = float(lhs), float(rhs)
        return cls(name, lhs, rhs, lhs <= rhs + tol, rhs - lhs)

    def to_dict(self) -> dict:
        return asdict(self)


def _require_match(graph: Graph, oracle: Oracle) -> None:
    if not oracle.matches(graph):
        raise GraphOracleMismatch(
            f"oracle (n={oracle.n}) was not built for this graph (n={graph.vertex_count})"
        )


def adjacent_scan(table: np.ndarray, eu: np.ndarray, ev: np.ndarray, denom: np.ndarray):
    """Max over edges of ``min_i (t[i,u] + t[i,v]) / denom``.

    Returns ``(ratio, edge index, source row)``; the first maximising edge
    and the first minimising row win ties. Memory is ``O(m)``.
    """
    best = table[0, eu] + table[0, ev]
    arg = np.zeros(len(eu), dtype=np.int64)
    for i in range(1, table.shape[0]):
        s = table[i, eu] + table[i, ev]
        better = s < best
        best[better] = s[better]
        arg[better] = i
    ratios = best / denom
    j = int(np.argmax(ratios))
    return float(ratios[j]), j, int(arg[j])


def stretch_fast(graph: Graph, oracle: Oracle) -> StretchReport:
    """Exact stretch factor from adjacent pairs only."""
    _require_match(graph, oracle)
    if graph.edge_count == 0:
        raise EmptyEdgeSet("stretch is undefined on a single-vertex graph")
    denom = edge_geodesics(graph)
    ratio, j, i = adjacent_scan(oracle.table, graph.edge_u, graph.edge_v, denom)
    pair = (int(graph.edge_u[j]), int(graph.edge_v[j]))
    return StretchReport(ratio, pair, oracle.sources[i], "fast", graph.edge_count)


def approx_matrix(table: np.ndarray) -> np.ndarray:
    """``n x n`` matrix of ``min_i t[i,p] + t[i,q]``."""
    out = table[0][:, None] + table[0][None, :]
    for row in table[1:]:
        np.minimum(out, row[:, None] + row[None, :], out=out)
    return out


def _naive_guard(graph: Graph, cap: int) -> None:
    if graph.vertex_count > cap:
        raise GraphTooLargeForNaive(
            f"n = {graph.vertex_count} exceeds the all-pairs cap of {cap}"
        )


def stretch_naive(graph: Graph, oracle: Oracle, cap: int = NAIVE_CAP, distances: np.ndarray | None = None) -> StretchReport:
    """Stretch factor straight from its definition, over all ordered pairs."""
    _require_match(graph, oracle)
    _naive_guard(graph, cap)
    n = graph.vertex_count
    if n < 2:
        raise EmptyEdgeSet("stretch is undefined on a single-vertex graph")
    dist = all_pairs(graph) if distances is None else distances
    approx = approx_matrix(oracle.table)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = approx / dist
    np.fill_diagonal(ratio, -np.inf)
    flat = int(np.argmax(ratio))
    p, q = divmod(flat, n)
    t = oracle.table
    i = int(np.argmin(t[:, p] + t[:, q]))
    return StretchReport(float(ratio[p, q]), (p, q), oracle.sources[i], "naive", n * (n - 1))


def covering_radius(oracle: Oracle) -> float:
    """``max_p d(p, s_p)`` read off the table."""
    return float(oracle.table.min(axis=0).max())


def check_radius_sandwich(graph: Graph, oracle: Oracle, stretch: float | None = None) -> tuple[BoundCheck, BoundCheck]:
    """Sandwich of the stretch by the covering radius ``R``.

    ``2R/l_max - 1 <= F <= 2R/l_min + 1``.
    """
    stats = edge_stats(graph)
    f = stretch_fast(graph, oracle).stretch if stretch is None else stretch
    r = covering_radius(oracle)
    lower = BoundCheck.compare("radius_sandwich_lower", 2 * r / stats.l_max - 1, f)
    upper = BoundCheck.compare("radius_sandwich_upper", f, 2 * r / stats.l_min + 1)
    return lower, upper


def check_detour_inequality(graph: Graph, oracle: Oracle, cap: int = NAIVE_CAP, distances: np.ndarray | None = None) -> list[BoundCheck]:
    """Pairs violating ``d(u,s_u) + d(s_u,v) <= d(u,S,v) + 2 d(u,v)``; expected empty."""
    _require_match(graph, oracle)
    _naive_guard(graph, cap)
    dist = all_pairs(graph) if distances is None else distances
    t = oracle.table
    near = np.argmin(t, axis=0)
    cols = np.arange(graph.vertex_count)
    lhs = t[near, cols][:, None] + t[near, :]
    rhs = approx_matrix(t) + 2 * dist
    bad = np.argwhere(lhs > rhs + BOUND_TOL)
    return [
        BoundCheck.compare(f"detour[{u},{v}]", lhs[u, v], rhs[u, v])
        for u, v in bad.tolist()
    ]


def _ids(sources) -> tuple[int, ...]:
    return tuple(sources.sources if isinstance(sources, SourceSet) else sources)


def check_kcenter_transfer(graph: Graph, fps_sources, kcenter_opt_sources) -> BoundCheck:
    """``F_FPS <= 2 r_e F' + 6 r_e + 1`` with ``F'`` the stretch of optimal k-centers."""
    a, b = _ids(fps_sources), _ids(kcenter_opt_sources)
    if len(a) != len(b):
        raise SourceSetSizeMismatch(f"{len(a)} FPS sources vs {len(b)} k-center sources")
    r_e = edge_stats(graph).r_e
    f_fps = stretch_fast(graph, build_oracle(graph, a)).stretch
    f_opt = stretch_fast(graph, build_oracle(graph, b)).stretch
    return BoundCheck.compare("kcenter_transfer", f_fps, 2 * r_e * f_opt + 6 * r_e + 1)


def check_fps_guarantee(graph: Graph, fps_sources, optimal_stretch: float) -> BoundCheck:
    """``F_FPS <= 2 r_e^2 F* + 2 r_e^2 + 8 r_e + 1``."""
    r_e = edge_stats(graph).r_e
    f_fps = stretch_fast(graph, build_oracle(graph, _ids(fps_sources))).stretch
    rhs = 2 * r_e**2 * optimal_stretch + 2 * r_e**2 + 8 * r_e + 1
    return BoundCheck.compare("fps_guarantee", f_fps, rhs)


def relative_close(a: float, b: float, rtol: float = 1e-12) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def bound_checks(graph: Graph, oracle: Oracle, cap: int = NAIVE_CAP, stretch: float | None = None) -> list[BoundCheck]:
    """The per-source-set checks: radius sandwich, plus the detour inequality when ``n <= cap``.

    The detour inequality contributes one summary entry whose ``lhs`` is the number of
    violating pairs.
    """
    checks = list(check_radius_sandwich(graph, oracle, stretch))
    if graph.vertex_count <= cap:
        violations = check_detour_inequality(graph, oracle, cap)
        checks.append(BoundCheck.compare("detour_violations", len(violations), 0, tol=0.0))
    return checks

