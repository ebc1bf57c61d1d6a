"""Vertex-cover reduction to source placement on triangle graphs.

Pipeline: a grid-embedded planar graph ``G`` (max degree 3) is subdivided
into a subdivided graph ``G_r`` with an even number of auxiliary nodes per edge, then each
``G_r`` edge is replaced by a two-triangle gadget to give ``G'``. ``G`` has
a vertex cover of size ``k`` iff ``G'`` admits ``k + m`` sources with
stretch at most ``xi``; the checks here confirm that by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exceptions import (
    DegreeTooHigh,
    MalformedPolyline,
    OverlappingPolylines,
    ParseError,
    ReductionError,
    XiTooSmall,
)
from .exhaustive import DEFAULT_BUDGET, exists_sources_with_stretch, minimum_vertex_cover
from .graph import Graph, ValidationReport, build_graph, face_structure_report
from .oracle import build_oracle
from .shortest_path import all_pairs

MIN_XI = 3.0

Point = tuple[int, int]


@dataclass(frozen=True)
class PlanarEmbedding:
    """Integer grid drawing of a planar graph.

    ``polylines[j]`` runs from ``vertex_coords[edges[j][0]]`` to
    ``vertex_coords[edges[j][1]]`` in unit axis-aligned steps.
    """

    vertex_coords: dict[int, Point]
    edges: list[tuple[int, int]]
    polylines: list[list[Point]]

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_coords)

    def validate(self) -> None:
        n = self.vertex_count
        if sorted(self.vertex_coords) != list(range(n)):
            raise ReductionError("vertex ids must be 0..n-1 without gaps")
        coords = {v: (int(x), int(y)) for v, (x, y) in self.vertex_coords.items()}
        at_point = {}
        for v, pt in coords.items():
            if pt in at_point:
                raise ReductionError(f"vertices {at_point[pt]} and {v} share grid point {pt}")
            at_point[pt] = v
        if len(self.edges) != len(self.polylines):
            raise MalformedPolyline("every edge needs exactly one polyline")
        seen_edges = set()
        degree = [0] * n
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ReductionError(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise ReductionError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise ReductionError(f"duplicate edge {key}")
            seen_edges.add(key)
            degree[u] += 1
            degree[v] += 1
        over = [v for v in range(n) if degree[v] > 3]
        if over:
            raise DegreeTooHigh(f"vertex {over[0]} has degree {degree[over[0]]} > 3")
        owner: dict[Point, int] = {}
        for j, ((u, v), line) in enumerate(zip(self.edges, self.polylines)):
            pts = [(int(x), int(y)) for x, y in line]
            if len(pts) < 2:
                raise MalformedPolyline(f"edge {j}: polyline needs at least two points")
            if pts[0] != coords[u] or pts[-1] != coords[v]:
                raise MalformedPolyline(f"edge {j}: polyline endpoints do not match vertices {u}, {v}")
            for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
                if abs(x1 - x0) + abs(y1 - y0) != 1:
                    raise MalformedPolyline(
                        f"edge {j}: step {(x0, y0)} -> {(x1, y1)} is not a unit axis-aligned segment"
                    )
            if len(set(pts)) != len(pts):
                raise MalformedPolyline(f"edge {j}: polyline revisits a grid point")
            for pt in pts[1:-1]:
                if pt in at_point:
                    raise OverlappingPolylines(f"edge {j} passes through vertex {at_point[pt]} at {pt}")
                if pt in owner:
                    raise OverlappingPolylines(f"edges {owner[pt]} and {j} share interior point {pt}")
                owner[pt] = j


@dataclass(frozen=True)
class SubdivisionRecord:
    k_e: tuple[int, ...]
    m: int
    node_roles: tuple[str, ...]
    coords: tuple[tuple[float, float], ...]
    paths: tuple[tuple[int, ...], ...]

    def aux_count(self, j: int) -> int:
        return 2 * self.k_e[j]


@dataclass(frozen=True)
class GadgetParams:
    xi: float
    L: float
    w: float

    @classmethod
    def for_length(cls, length: float, xi: float) -> "GadgetParams":
        if not xi >= MIN_XI:
            raise XiTooSmall(f"xi = {xi} is below the minimum of {MIN_XI}")
        half = length / 2
        return cls(float(xi), half, 2 * half / xi)


@dataclass(frozen=True)
class Gadget:
    u: int
    v: int
    a: int
    b: int
    length: float
    original_edge: int

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "v": self.v,
            "a": self.a,
            "b": self.b,
            "gr_edge_length": self.length,
            "original_edge": self.original_edge,
        }


@dataclass(frozen=True)
class ReductionInstance:
    g_prime: Graph
    m: int
    xi: float
    faces: list[tuple[int, int, int]]
    gadgets: list[Gadget]
    gr_vertex_count: int
    record: SubdivisionRecord | None = None

    def source_budget(self, k: int) -> int:
        return k + self.m

    def structure_report(self) -> ValidationReport:
        return face_structure_report(self.g_prime.vertex_count, self.faces)

    def traceability(self) -> dict:
        out = {
            "xi": self.xi,
            "m": self.m,
            "gr_vertex_count": self.gr_vertex_count,
            "g_prime_vertex_count": self.g_prime.vertex_count,
            "faces": [list(f) for f in self.faces],
            "gadgets": [g.to_dict() for g in self.gadgets],
        }
        if self.record is not None:
            out["k_e"] = list(self.record.k_e)
            out["node_roles"] = list(self.record.node_roles)
            out["gr_coords"] = [list(c) for c in self.record.coords]
        return out


def subdivide(embedding: PlanarEmbedding) -> tuple[Graph, SubdivisionRecord]:
    """Subdivide each polyline so every edge path carries an even number of auxiliary nodes.

    Interior grid points of a polyline of length ``len`` become auxiliary
    nodes; when ``len - 1`` is odd the first unit segment is also split at
    its midpoint. Resulting edges have length 1 or 1/2.
    """
    embedding.validate()
    n = embedding.vertex_count
    coords: list[tuple[float, float]] = [
        tuple(map(float, embedding.vertex_coords[v])) for v in range(n)
    ]
    roles = ["regular"] * n
    k_e, paths, gr_edges = [], [], []
    for (u, v), line in zip(embedding.edges, embedding.polylines):
        pts = [(Fraction(x), Fraction(y)) for x, y in line]
        length = len(pts) - 1
        if (length - 1) % 2 == 1:
            (x0, y0), (x1, y1) = pts[0], pts[1]
            pts.insert(1, ((x0 + x1) / 2, (y0 + y1) / 2))
        interior = pts[1:-1]
        ids = [u]
        for x, y in interior:
            ids.append(len(coords))
            coords.append((float(x), float(y)))
            roles.append("auxiliary")
        ids.append(v)
        assert len(interior) % 2 == 0
        k_e.append(len(interior) // 2)
        paths.append(tuple(ids))
        for (a, pa), (b, pb) in zip(zip(ids, pts), zip(ids[1:], pts[1:])):
            seg = abs(pb[0] - pa[0]) + abs(pb[1] - pa[1])
            gr_edges.append((a, b, float(seg)))
    g_r = build_graph(len(coords), gr_edges)
    record = SubdivisionRecord(tuple(k_e), sum(k_e), tuple(roles), tuple(coords), tuple(paths))
    return g_r, record


def _original_edge_index(record: SubdivisionRecord | None) -> dict[tuple[int, int], int]:
    if record is None:
        return {}
    out = {}
    for j, path in enumerate(record.paths):
        for a, b in zip(path, path[1:]):
            out[(min(a, b), max(a, b))] = j
    return out


def gadget_replace(g_r: Graph, record: SubdivisionRecord | None, xi: float = MIN_XI) -> ReductionInstance:
    """Replace every edge ``(u, v)`` of length ``l`` by the gadget on ``u, a, b, v``.

    ``|ua| = |ub| = |va| = |vb| = l/2`` and ``|ab| = l/xi``, with faces
    ``{u, a, b}`` and ``{v, a, b}`` and no direct ``u``-``v`` edge.
    """
    if not xi >= MIN_XI:
        raise XiTooSmall(f"xi = {xi} is below the minimum of {MIN_XI}")
    origin = _original_edge_index(record)
    n_r = g_r.vertex_count
    edges, faces, gadgets = [], [], []
    for j, (u, v, ell) in enumerate(g_r.edges):
        params = GadgetParams.for_length(ell, xi)
        a, b = n_r + 2 * j, n_r + 2 * j + 1
        edges += [(u, a, params.L), (u, b, params.L), (v, a, params.L), (v, b, params.L), (a, b, params.w)]
        faces += [(u, a, b), (v, a, b)]
        gadgets.append(Gadget(u, v, a, b, ell, origin.get((u, v), -1)))
    g_prime = build_graph(n_r + 2 * g_r.edge_count, edges)
    m = record.m if record is not None else 0
    return ReductionInstance(g_prime, m, float(xi), faces, gadgets, n_r, record)


def build_reduction(embedding: PlanarEmbedding, xi: float = MIN_XI) -> ReductionInstance:
    g_r, record = subdivide(embedding)
    return gadget_replace(g_r, record, xi)


@dataclass(frozen=True)
class CaseEntry:
    case: str
    pair: tuple[str, str]
    ratio: float


def _pair_ratio(dist, table, p, q) -> float:
    return float((table[:, p] + table[:, q]).min() / dist[p, q])


def gadget_case_table(params: GadgetParams) -> list[CaseEntry]:
    """Ratios of the gadget's case analysis in isolated one- and two-gadget graphs.

    Single gadget with source ``u``: every pair. Two gadgets sharing
    ``v1 = u2`` with sources ``u1`` and ``v2``: every pair with one node on
    each side, followed by a ``cross:max`` summary row.
    """
    L, w = params.L, params.w
    names = ["u", "a", "b", "v"]
    single = build_graph(4, [(0, 1, L), (0, 2, L), (3, 1, L), (3, 2, L), (1, 2, w)])
    dist = all_pairs(single)
    table = build_oracle(single, [0]).table
    rows = []
    for p in range(4):
        for q in range(p + 1, 4):
            case = "source" if 0 in (p, q) else "same"
            rows.append(CaseEntry(case, (names[p], names[q]), _pair_ratio(dist, table, p, q)))
    # u1=0 a1=1 b1=2 v1=u2=3 a2=4 b2=5 v2=6
    names2 = ["u1", "a1", "b1", "v1", "a2", "b2", "v2"]
    double = build_graph(
        7,
        [(0, 1, L), (0, 2, L), (3, 1, L), (3, 2, L), (1, 2, w),
         (3, 4, L), (3, 5, L), (6, 4, L), (6, 5, L), (4, 5, w)],
    )
    dist2 = all_pairs(double)
    table2 = build_oracle(double, [0, 6]).table
    best = None
    for p in (0, 1, 2):
        for q in (4, 5, 6):
            entry = CaseEntry("cross", (names2[p], names2[q]), _pair_ratio(dist2, table2, p, q))
            rows.append(entry)
            if best is None or entry.ratio > best.ratio:
                best = entry
    rows.append(CaseEntry("cross:max", best.pair, best.ratio))
    return rows


@dataclass(frozen=True)
class EquivalenceRow:
    k: int
    left: bool
    right: bool
    witness: tuple[int, ...] | None = None

    @property
    def agree(self) -> bool:
        return self.left == self.right


@dataclass(frozen=True)
class EquivalenceReport:
    name: str
    m: int
    vc_g: float
    rows: list[EquivalenceRow] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def all_agree(self) -> bool:
        return all(r.agree for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "vc_g": self.vc_g,
            **self.extra,
            "all_agree": self.all_agree,
            "rows": [
                {
                    "k": r.k,
                    "left": r.left,
                    "right": r.right,
                    "agree": r.agree,
                    **({"witness": list(r.witness)} if r.witness is not None else {}),
                }
                for r in self.rows
            ],
        }


def vc_equivalence_check(embedding: PlanarEmbedding, budget: int = DEFAULT_BUDGET) -> EquivalenceReport:
    """Per ``k``: ``VC(G) <= k`` against ``VC(G_r) <= k + m``."""
    g_r, record = subdivide(embedding)
    n = embedding.vertex_count
    vc_g = minimum_vertex_cover(embedding.edges, n, budget=budget).objective
    gr_pairs = list(zip(g_r.edge_u.tolist(), g_r.edge_v.tolist()))
    vc_gr = minimum_vertex_cover(gr_pairs, g_r.vertex_count, budget=budget).objective
    rows = [EquivalenceRow(k, vc_g <= k, vc_gr <= k + record.m) for k in range(n + 1)]
    return EquivalenceReport("vertex_cover_subdivision", record.m, vc_g, rows, {"vc_gr": vc_gr})


def stretch_equivalence_check(
    embedding: PlanarEmbedding,
    xi: float = MIN_XI,
    ks: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> EquivalenceReport:
    """Per ``k``: ``VC(G) <= k`` against "``G'`` has ``k + m`` sources with stretch <= xi"."""
    inst = build_reduction(embedding, xi)
    n = embedding.vertex_count
    vc_g = minimum_vertex_cover(embedding.edges, n, budget=budget).objective
    dist = all_pairs(inst.g_prime)
    rows = []
    for k in range(n + 1) if ks is None else ks:
        ok, witness = exists_sources_with_stretch(
            inst.g_prime, inst.source_budget(k), xi, budget=budget, distances=dist
        )
        rows.append(EquivalenceRow(k, vc_g <= k, ok, witness))
    return EquivalenceReport(
        "stretch_reduction",
        inst.m,
        vc_g,
        rows,
        {"xi": float(xi), "g_prime_vertex_count": inst.g_prime.vertex_count},
    )


def parse_embedding(text: str) -> PlanarEmbedding:
    coords: dict[int, Point] = {}
    edges, lines = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "v" and len(tok) == 4:
                vid = int(tok[1])
                if vid in coords:
                    raise ParseError(f"line {lineno}: vertex {vid} defined twice")
                coords[vid] = (int(tok[2]), int(tok[3]))
            elif tok[0] == "e" and ":" in tok:
                sep = tok.index(":")
                if sep != 3:
                    raise ParseError(f"line {lineno}: expected 'e <u> <v> : <x1> <y1> ...'")
                nums = [int(t) for t in tok[4:]]
                if len(nums) % 2:
                    raise ParseError(f"line {lineno}: odd number of polyline coordinates")
                edges.append((int(tok[1]), int(tok[2])))
                lines.append(list(zip(nums[0::2], nums[1::2])))
            else:
                raise ParseError(f"line {lineno}: unrecognised record {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    return PlanarEmbedding(coords, edges, lines)


def read_embedding(path) -> PlanarEmbedding:
    with open(path, encoding="utf-8") as fh:
        return parse_embedding(fh.read())


def format_embedding(embedding: PlanarEmbedding) -> str:
    out = [f"v {v} {x} {y}" for v, (x, y) in sorted(embedding.vertex_coords.items())]
    for (u, v), line in zip(embedding.edges, embedding.polylines):
        out.append(f"e {u} {v} : " + " ".join(f"{x} {y}" for x, y in line))
    return "\n".join(out) + "\n"


def r_e_prime(instance: ReductionInstance) -> float:
    """Edge-length ratio of ``G'``: longest half-edge over shortest ``a``-``b`` edge."""
    lengths = np.array([g.length for g in instance.gadgets])
    return float((lengths.max() / 2) / (lengths.min() / instance.xi))
