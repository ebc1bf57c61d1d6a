"""Weighted graphs and triangle meshes.

A :class:`Graph` is immutable once built: vertices are dense integers
``0..n-1``, edges are stored once per unordered pair in canonical
``(u < v)`` order, sorted lexicographically.
"""

from __future__ import annotations

import math
import struct
import warnings
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    DegenerateEdge,
    DisconnectedGraph,
    DuplicateEdge,
    EmptyEdgeSet,
    GraphError,
    InvalidVertexId,
    NonPositiveLength,
    SelfLoop,
)

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


class ParallelEdgeWarning(UserWarning):
    """Emitted when parallel input edges are collapsed to the shortest one."""


def fnv1a64(data: bytes, h: int = _FNV_OFFSET) -> int:
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


class Graph:
    """Connected undirected graph with strictly positive edge lengths.

    Use :func:`build_graph` to construct one; the constructor assumes the
    arrays are already validated and canonical.
    """

    __slots__ = ("_n", "_eu", "_ev", "_elen", "_adj", "__dict__")

    def __init__(self, n: int, eu: np.ndarray, ev: np.ndarray, elen: np.ndarray):
        self._n = int(n)
        self._eu = eu
        self._ev = ev
        self._elen = elen
        for arr in (eu, ev, elen):
            arr.setflags(write=False)
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self._n)]
        for u, v, w in zip(eu.tolist(), ev.tolist(), elen.tolist()):
            adj[u].append((v, w))
            adj[v].append((u, w))
        for row in adj:
            row.sort()
        self._adj = tuple(tuple(row) for row in adj)

    @property
    def vertex_count(self) -> int:
        return self._n

    n = vertex_count

    @property
    def edge_count(self) -> int:
        return len(self._elen)

    @property
    def edge_u(self) -> np.ndarray:
        return self._eu

    @property
    def edge_v(self) -> np.ndarray:
        return self._ev

    @property
    def edge_length(self) -> np.ndarray:
        return self._elen

    @property
    def adjacency(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """Per-vertex ``(neighbor, length)`` pairs sorted by neighbor id."""
        return self._adj

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self._eu.tolist(), self._ev.tolist(), self._elen.tolist()))

    def length(self, u: int, v: int) -> float | None:
        """Length of edge ``(u, v)``, or ``None`` when the vertices are not adjacent."""
        for w, ell in self._adj[u]:
            if w == v:
                return ell
        return None

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @cached_property
    def checksum(self) -> int:
        """64-bit FNV-1a over ``n`` and the canonical edge list (little-endian)."""
        rec = np.empty(
            self.edge_count, dtype=[("u", "<u8"), ("v", "<u8"), ("w", "<f8")]
        )
        rec["u"], rec["v"], rec["w"] = self._eu, self._ev, self._elen
        return fnv1a64(struct.pack("<Q", self._n) + rec.tobytes())

    def check_vertex(self, v, name: str = "vertex") -> int:
        try:
            iv = int(v)
        except (TypeError, ValueError):
            raise InvalidVertexId(f"{name} {v!r} is not an integer vertex id") from None
        if iv != v or not 0 <= iv < self._n:
            raise InvalidVertexId(f"{name} {v!r} outside [0, {self._n})")
        return iv

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._eu, other._eu)
            and np.array_equal(self._ev, other._ev)
            and np.array_equal(self._elen, other._elen)
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.edge_count})"


def connected_components(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def build_graph(
    vertex_count: int,
    edges: Iterable[Sequence],
    *,
    collapse_parallel: bool = False,
) -> Graph:
    """Validate an edge list and build a connected :class:`Graph`.

    Parameters
    ----------
    vertex_count : int
        Number of vertices; ids must lie in ``[0, vertex_count)``.
    edges : iterable of (u, v, length)
    collapse_parallel : bool, default False
        If true, parallel edges are merged into the shortest one and a
        :class:`ParallelEdgeWarning` is issued. Otherwise they raise
        :class:`DuplicateEdge`.
    """
    if isinstance(vertex_count, bool) or int(vertex_count) != vertex_count or vertex_count < 1:
        raise GraphError(f"vertex_count must be a positive integer, got {vertex_count!r}")
    n = int(vertex_count)
    best: dict[tuple[int, int], float] = {}
    collapsed = 0
    for item in edges:
        if len(item) != 3:
            raise GraphError(f"edge {item!r} is not a (u, v, length) triple")
        u, v, w = item
        for x in (u, v):
            if isinstance(x, bool) or int(x) != x or not 0 <= int(x) < n:
                raise InvalidVertexId(f"edge endpoint {x!r} outside [0, {n})")
        u, v, w = int(u), int(v), float(w)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if not (w > 0 and math.isfinite(w)):
            raise NonPositiveLength(f"edge ({u}, {v}) has length {w!r}; lengths must be positive and finite")
        key = (u, v) if u < v else (v, u)
        if key in best:
            if not collapse_parallel:
                raise DuplicateEdge(f"duplicate edge {key}")
            collapsed += 1
            best[key] = min(best[key], w)
        else:
            best[key] = w
    if collapsed:
        warnings.warn(
            f"collapsed {collapsed} parallel edge(s) to their shortest length",
            ParallelEdgeWarning,
            stacklevel=2,
        )
    keys = sorted(best)
    comps = connected_components(n, keys)
    if len(comps) > 1:
        raise DisconnectedGraph(comps)
    eu = np.fromiter((k[0] for k in keys), dtype=np.int64, count=len(keys))
    ev = np.fromiter((k[1] for k in keys), dtype=np.int64, count=len(keys))
    elen = np.fromiter((best[k] for k in keys), dtype=np.float64, count=len(keys))
    return Graph(n, eu, ev, elen)


@dataclass(frozen=True)
class EdgeStats:
    l_min: float
    l_max: float
    r_e: float


def edge_stats(graph: Graph) -> EdgeStats:
    if graph.edge_count == 0:
        raise EmptyEdgeSet("graph has no edges; edge length ratio is undefined")
    lo = float(graph.edge_length.min())
    hi = float(graph.edge_length.max())
    return EdgeStats(lo, hi, hi / lo)


# ---------------------------------------------------------------- meshes


@dataclass(frozen=True)
class Mesh:
    """Triangle mesh: ``vertices`` is ``(nv, d)`` real, ``faces`` is ``(nf, 3)`` int."""

    vertices: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=np.float64)
        if verts.ndim == 1:
            verts = verts.reshape(-1, 1) if verts.size else verts.reshape(0, 3)
        faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "faces", faces)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def edge_faces(self) -> dict[tuple[int, int], int]:
        """Map each undirected edge to the number of faces containing it."""
        counts: dict[tuple[int, int], int] = {}
        for a, b, c in self.faces.tolist():
            for u, v in ((a, b), (b, c), (c, a)):
                if u == v:
                    continue
                key = (u, v) if u < v else (v, u)
                counts[key] = counts.get(key, 0) + 1
        return counts


def mesh_to_graph(mesh: Mesh) -> Graph:
    """Graph of the mesh's edges, weighted by Euclidean edge length."""
    nv = mesh.vertex_count
    faces = mesh.faces
    if faces.size and (faces.min() < 0 or faces.max() >= nv):
        raise InvalidVertexId("face references a vertex id outside the vertex list")
    if faces.size and np.any(
        (faces[:, 0] == faces[:, 1]) | (faces[:, 1] == faces[:, 2]) | (faces[:, 0] == faces[:, 2])
    ):
        raise GraphError("face with repeated vertex id")
    pairs = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    pairs.sort(axis=1)
    pairs = np.unique(pairs, axis=0)
    lengths = np.linalg.norm(mesh.vertices[pairs[:, 0]] - mesh.vertices[pairs[:, 1]], axis=1)
    bad = np.flatnonzero(lengths == 0)
    if bad.size:
        u, v = pairs[bad[0]]
        raise DegenerateEdge(f"vertices {u} and {v} share a face but coincide geometrically")
    return build_graph(nv, zip(pairs[:, 0].tolist(), pairs[:, 1].tolist(), lengths.tolist()))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    informational: bool = False


@dataclass(frozen=True)
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "informational": c.informational, "detail": c.detail}
                for c in self.checks
            ],
        }


def _vertex_links_cyclic(nv: int, faces: list[list[int]]) -> list[int]:
    """Vertices whose incident triangles cannot be ordered into one fan or cycle."""
    link: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for a, b, c in faces:
        link[a].append((b, c))
        link[b].append((c, a))
        link[c].append((a, b))
    bad = []
    for v in range(nv):
        segs = link[v]
        if not segs:
            continue
        deg: dict[int, int] = {}
        for x, y in segs:
            deg[x] = deg.get(x, 0) + 1
            deg[y] = deg.get(y, 0) + 1
        if any(d > 2 for d in deg.values()):
            bad.append(v)
            continue
        if len(connected_components_dict(segs)) != 1:
            bad.append(v)
    return bad


def connected_components_dict(pairs: list[tuple[int, int]]) -> list[set[int]]:
    ids = sorted({x for p in pairs for x in p})
    index = {x: i for i, x in enumerate(ids)}
    comps = connected_components(len(ids), [(index[a], index[b]) for a, b in pairs])
    return [{ids[i] for i in c} for c in comps]


def face_structure_report(vertex_count: int, faces) -> ValidationReport:
    """Purely combinatorial checks on a list of triangles."""
    faces_arr = np.asarray(faces, dtype=np.int64).reshape(-1, 3)
    checks = []
    flist = faces_arr.tolist()
    bad_ids = [i for i, f in enumerate(flist) if any(not 0 <= x < vertex_count for x in f) or len(set(f)) != 3]
    checks.append(
        Check(
            "face_indices",
            not bad_ids,
            "" if not bad_ids else f"{len(bad_ids)} face(s) with invalid or repeated ids, first #{bad_ids[0]}",
        )
    )
    bad_set = set(bad_ids)
    good = [f for i, f in enumerate(flist) if i not in bad_set]
    counts: dict[tuple[int, int], int] = {}
    for a, b, c in good:
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            counts[key] = counts.get(key, 0) + 1
    over = sorted(e for e, c in counts.items() if c > 2)
    ones = sum(1 for c in counts.values() if c == 1)
    twos = sum(1 for c in counts.values() if c == 2)
    checks.append(
        Check(
            "edge_face_incidence",
            not over and bool(counts),
            f"{ones} boundary edge(s), {twos} interior edge(s)"
            + (f", {len(over)} edge(s) in more than two faces, first {over[0]}" if over else "")
            + ("" if counts else ", no edges"),
        )
    )
    comps = connected_components(vertex_count, counts.keys()) if vertex_count else []
    checks.append(
        Check(
            "connectivity",
            len(comps) == 1,
            f"{len(comps)} connected component(s)",
        )
    )
    nonmanifold = _vertex_links_cyclic(vertex_count, good) if vertex_count else []
    checks.append(
        Check(
            "vertex_manifold",
            not nonmanifold,
            "" if not nonmanifold else f"{len(nonmanifold)} vertex(es) without a cyclic triangle order, first {nonmanifold[0]}",
            informational=True,
        )
    )
    return ValidationReport(checks)


def _triangle_areas(pts: np.ndarray, faces: np.ndarray) -> np.ndarray:
    e1 = pts[faces[:, 1]] - pts[faces[:, 0]]
    e2 = pts[faces[:, 2]] - pts[faces[:, 0]]
    g11 = np.einsum("ij,ij->i", e1, e1)
    g22 = np.einsum("ij,ij->i", e2, e2)
    g12 = np.einsum("ij,ij->i", e1, e2)
    # Gram determinant works in any ambient dimension
    return 0.5 * np.sqrt(np.maximum(g11 * g22 - g12 * g12, 0.0))


def validate_triangle_mesh(mesh: Mesh, area_tol: float = 0.0) -> ValidationReport:
    """Report structural and geometric checks for a mesh; never raises on bad meshes."""
    report = face_structure_report(mesh.vertex_count, mesh.faces)
    faces = mesh.faces
    ok_faces = faces[
        np.all((faces >= 0) & (faces < mesh.vertex_count), axis=1)
    ] if faces.size else faces
    if ok_faces.size:
        areas = _triangle_areas(mesh.vertices, ok_faces)
        degenerate = np.flatnonzero(areas <= area_tol)
    else:
        degenerate = np.array([], dtype=np.int64)
    checks = list(report.checks)
    checks.insert(
        3,
        Check(
            "degenerate_faces",
            degenerate.size == 0,
            "" if degenerate.size == 0 else f"{degenerate.size} face(s) with zero area, first {ok_faces[degenerate[0]].tolist()}",
        ),
    )
    return ValidationReport(checks)
