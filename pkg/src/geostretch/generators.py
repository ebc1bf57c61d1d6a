"""Synthetic graphs and meshes for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .graph import Graph, Mesh, build_graph, mesh_to_graph


def path_graph(n: int, length: float = 1.0) -> Graph:
    return build_graph(n, [(i, i + 1, length) for i in range(n - 1)])


def cycle_graph(n: int, length: float = 1.0) -> Graph:
    return build_graph(n, [(i, (i + 1) % n, length) for i in range(n)])


def random_connected_graph(n: int, extra_edges: int = 0, lengths: str = "unit", rng=None) -> Graph:
    """Random spanning tree plus ``extra_edges`` distinct chords.

    ``lengths`` is ``"unit"`` or ``"uniform"`` (uniform on ``[0.5, 2]``).
    """
    rng = np.random.default_rng(rng)
    order = rng.permutation(n)
    pairs = set()
    for i in range(1, n):
        u, v = int(order[i]), int(order[rng.integers(i)])
        pairs.add((min(u, v), max(u, v)))
    max_extra = n * (n - 1) // 2 - len(pairs)
    target = len(pairs) + min(extra_edges, max_extra)
    while len(pairs) < target:
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u != v:
            pairs.add((min(u, v), max(u, v)))
    pairs = sorted(pairs)
    if lengths == "unit":
        ws = np.ones(len(pairs))
    elif lengths == "uniform":
        ws = rng.uniform(0.5, 2.0, size=len(pairs))
    else:
        raise ValueError(f"unknown length mode {lengths!r}")
    return build_graph(n, [(u, v, float(w)) for (u, v), w in zip(pairs, ws)])


def grid_mesh(rows: int, cols: int, spacing: float = 1.0) -> Mesh:
    """Planar ``rows x cols`` vertex grid, each cell split along one diagonal."""
    ys, xs = np.mgrid[0:rows, 0:cols]
    verts = np.column_stack([xs.ravel() * spacing, ys.ravel() * spacing, np.zeros(rows * cols)])
    idx = np.arange(rows * cols).reshape(rows, cols)
    a, b = idx[:-1, :-1].ravel(), idx[:-1, 1:].ravel()
    c, d = idx[1:, :-1].ravel(), idx[1:, 1:].ravel()
    faces = np.concatenate([np.column_stack([a, b, d]), np.column_stack([a, d, c])])
    return Mesh(verts, faces)


def grid_graph(rows: int, cols: int, spacing: float = 1.0) -> Graph:
    return mesh_to_graph(grid_mesh(rows, cols, spacing))
