"""Landmark distance oracle: ``d(p, S, q) = min_i d(p, s_i) + d(s_i, q)``.

Binary file layout (little-endian)::

    b"GSTR1"                magic + format version
    u64 n, u64 k
    u64[k]                  source ids
    f64[k * n]              distance table, source-major
    u64                     FNV-1a checksum of the graph's canonical edge list
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import ChecksumMismatch, CorruptFile, InvalidVertexId, VersionMismatch
from .graph import Graph
from .sampling import SourceSet
from .shortest_path import DistanceTable, multi_sssp

MAGIC = b"GSTR1"
_MAGIC_PREFIX = b"GSTR"


@dataclass(frozen=True)
class ApproxDistance:
    value: float
    witness_source: int


class Oracle:
    """Immutable ``k x n`` table of exact source distances.

    Queries read two columns of the table, ``O(k)`` each.
    """

    def __init__(self, table: DistanceTable, graph_checksum: int, source_set: SourceSet | None = None):
        arr = np.ascontiguousarray(table.table, dtype=np.float64)
        arr.setflags(write=False)
        self._dt = DistanceTable(tuple(int(s) for s in table.sources), arr)
        self.graph_checksum = int(graph_checksum)
        self.source_set = source_set

    @property
    def table(self) -> np.ndarray:
        return self._dt.table

    @property
    def distance_table(self) -> DistanceTable:
        return self._dt

    @property
    def sources(self) -> tuple[int, ...]:
        return self._dt.sources

    @property
    def k(self) -> int:
        return self._dt.k

    @property
    def n(self) -> int:
        return self._dt.n

    def matches(self, graph: Graph) -> bool:
        return graph.vertex_count == self.n and graph.checksum == self.graph_checksum

    def _vertex(self, v, name):
        try:
            iv = int(v)
        except (TypeError, ValueError):
            raise InvalidVertexId(f"{name} {v!r} is not an integer vertex id") from None
        if iv != v or not 0 <= iv < self.n:
            raise InvalidVertexId(f"{name} {v!r} outside [0, {self.n})")
        return iv

    def restrict(self, k: int) -> "Oracle":
        """Oracle over the first ``k`` sources only."""
        sub = DistanceTable(self.sources[:k], self.table[:k])
        ss = self.source_set.prefix(k) if self.source_set is not None else None
        return Oracle(sub, self.graph_checksum, ss)

    def __repr__(self):
        return f"Oracle(n={self.n}, k={self.k})"


def build_oracle(graph: Graph, sources: SourceSet | Sequence[int], threads: int | None = None) -> Oracle:
    source_set = sources if isinstance(sources, SourceSet) else None
    ids = sources.sources if isinstance(sources, SourceSet) else sources
    return Oracle(multi_sssp(graph, ids, threads=threads), graph.checksum, source_set)


def approx_distance(oracle: Oracle, p: int, q: int) -> ApproxDistance:
    """Shortest ``p``-``q`` route through a source; ties go to the lower source index.

    For ``p == q`` this returns the literal ``2 * d(p, s_p)``, not zero.
    """
    p = oracle._vertex(p, "p")
    q = oracle._vertex(q, "q")
    t = oracle.table
    sums = t[:, p] + t[:, q]
    i = int(np.argmin(sums))
    return ApproxDistance(float(sums[i]), oracle.sources[i])


def approx_distances(oracle: Oracle, ps, qs) -> np.ndarray:
    """Vectorised :func:`approx_distance` values for paired index arrays."""
    ps = np.asarray(ps, dtype=np.int64)
    qs = np.asarray(qs, dtype=np.int64)
    if ps.shape != qs.shape:
        raise ValueError("ps and qs must have the same shape")
    for arr, name in ((ps, "p"), (qs, "q")):
        if arr.size and (arr.min() < 0 or arr.max() >= oracle.n):
            raise InvalidVertexId(f"{name} index outside [0, {oracle.n})")
    t = oracle.table
    out = t[0, ps] + t[0, qs]
    for i in range(1, oracle.k):
        np.minimum(out, t[i, ps] + t[i, qs], out=out)
    return out


def nearest_source(oracle: Oracle, p: int) -> tuple[int, float]:
    p = oracle._vertex(p, "p")
    col = oracle.table[:, p]
    i = int(np.argmin(col))
    return oracle.sources[i], float(col[i])


def save_oracle(oracle: Oracle, destination) -> None:
    header = MAGIC + struct.pack("<QQ", oracle.n, oracle.k)
    ids = np.asarray(oracle.sources, dtype="<u8").tobytes()
    body = oracle.table.astype("<f8", copy=False).tobytes(order="C")
    trailer = struct.pack("<Q", oracle.graph_checksum)
    data = header + ids + body + trailer
    if hasattr(destination, "write"):
        destination.write(data)
        return
    with open(os.fspath(destination), "wb") as fh:
        fh.write(data)


def load_oracle(source, graph: Graph | None = None) -> Oracle:
    """Read an oracle file; with ``graph`` given, refuse a table built for another graph."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(os.fspath(source), "rb") as fh:
            data = fh.read()
    if len(data) < len(MAGIC) or not data.startswith(_MAGIC_PREFIX):
        raise CorruptFile("not an oracle file (bad magic)")
    if data[: len(MAGIC)] != MAGIC:
        raise VersionMismatch(
            f"unsupported oracle format {data[:len(MAGIC)]!r}; expected {MAGIC!r}"
        )
    off = len(MAGIC)
    if len(data) < off + 16:
        raise CorruptFile("truncated header")
    n, k = struct.unpack_from("<QQ", data, off)
    off += 16
    expected = off + 8 * k + 8 * k * n + 8
    if len(data) != expected:
        raise CorruptFile(f"file is {len(data)} bytes, header implies {expected}")
    if n == 0 or k == 0 or k > n:
        raise CorruptFile(f"invalid dimensions n={n}, k={k}")
    ids = np.frombuffer(data, dtype="<u8", count=k, offset=off).astype(np.int64)
    off += 8 * k
    if ids.max() >= n or len(set(ids.tolist())) != k:
        raise CorruptFile("source ids out of range or repeated")
    table = np.frombuffer(data, dtype="<f8", count=k * n, offset=off).reshape(k, n).astype(np.float64)
    off += 8 * k * n
    (checksum,) = struct.unpack_from("<Q", data, off)
    if graph is not None and (graph.vertex_count != n or graph.checksum != checksum):
        raise ChecksumMismatch("oracle file was built for a different graph")
    return Oracle(DistanceTable(tuple(ids.tolist()), table), checksum)
