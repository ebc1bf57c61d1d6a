"""Independent reference computations and graph corpora for the test suite.

Nothing here calls into the package's shortest-path or stretch code.
"""

import itertools
import math

import numpy as np

from geostretch.generators import cycle_graph, grid_graph, path_graph, random_connected_graph
from geostretch.graph import build_graph


def floyd_warshall(n, edges):
    d = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0.0
    for u, v, w in edges:
        if w < d[u][v]:
            d[u][v] = d[v][u] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == math.inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def bellman_ford(n, edges, source):
    dist = [math.inf] * n
    dist[source] = 0.0
    for _ in range(n - 1):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
                changed = True
        if not changed:
            break
    return dist


def definitional_stretch(n, edges, sources):
    """max over p != q of min_i (d(p,s_i) + d(s_i,q)) / d(p,q), straight from Floyd-Warshall."""
    d = floyd_warshall(n, edges)
    best = 0.0
    for p in range(n):
        for q in range(n):
            if p != q:
                approx = min(d[p][s] + d[s][q] for s in sources)
                best = max(best, approx / d[p][q])
    return best


def definitional_kcenter(n, edges, sources):
    d = floyd_warshall(n, edges)
    return max(min(d[p][s] for s in sources) for p in range(n))


def brute_vertex_cover(n, pairs):
    for k in range(n + 1):
        for c in itertools.combinations(range(n), k):
            cs = set(c)
            if all(u in cs or v in cs for u, v in pairs):
                return k
    return None


def random_corpus(count, max_n, seed, min_n=2):
    """Random connected graphs alternating unit lengths and uniform [0.5, 2] lengths."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        extra = int(rng.integers(0, 2 * n + 1))
        lengths = "unit" if i % 2 == 0 else "uniform"
        out.append(random_connected_graph(n, extra, lengths, rng=rng))
    return out


def random_source_sets(graphs, seed):
    rng = np.random.default_rng(seed)
    out = []
    for g in graphs:
        k = int(rng.integers(1, g.vertex_count + 1))
        out.append(tuple(int(s) for s in rng.choice(g.vertex_count, size=k, replace=False)))
    return out


def small_corpus(seed=7):
    """Graphs with n <= 12 used for the exhaustive sweeps."""
    graphs = [
        path_graph(3),
        path_graph(6),
        cycle_graph(5),
        cycle_graph(8, 1.5),
        grid_graph(3, 3),
        grid_graph(3, 4),
        build_graph(6, [(0, i, 1.0) for i in range(1, 6)]),
        build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 2.5)]),
        build_graph(5, [(0, 1, 0.5), (1, 2, 2.0), (2, 3, 0.5), (3, 4, 2.0), (4, 0, 1.0), (1, 3, 1.9)]),
    ]
    graphs += random_corpus(21, 12, seed, min_n=3)
    return graphs


K2_EMB = "v 0 0 0\nv 1 1 0\ne 0 1 : 0 0 1 0\n"
P3_EMB = "v 0 0 0\nv 1 1 0\nv 2 2 0\ne 0 1 : 0 0 1 0\ne 1 2 : 1 0 2 0\n"
C3_EMB = "v 0 0 0\nv 1 1 0\nv 2 0 1\ne 0 1 : 0 0 1 0\ne 0 2 : 0 0 0 1\ne 1 2 : 1 0 1 1 0 1\n"
K2_LEN2_EMB = "v 0 0 0\nv 1 2 0\ne 0 1 : 0 0 1 0 2 0\n"
EMBEDDINGS = {"K2": K2_EMB, "P3": P3_EMB, "C3": C3_EMB, "K2_len2": K2_LEN2_EMB}
