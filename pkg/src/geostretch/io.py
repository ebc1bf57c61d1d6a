"""Edge-list and OFF readers/writers."""

from __future__ import annotations

import os

import numpy as np

from .exceptions import ParseError
from .graph import Graph, Mesh, build_graph


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of ``u v length``.

    Parallel edges collapse to the shortest one with a warning.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty edge list")
    lineno, head = lines[0]
    try:
        n, m = (int(t) for t in head.split())
    except ValueError:
        raise ParseError(f"line {lineno}: expected header 'n m', got {head!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow")
    edges = []
    for lineno, line in body:
        tok = line.split()
        if len(tok) != 3:
            raise ParseError(f"line {lineno}: expected 'u v length', got {line!r}")
        try:
            edges.append((int(tok[0]), int(tok[1]), float(tok[2])))
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {line!r}") from None
    return build_graph(n, edges, collapse_parallel=True)


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(graph: Graph, comment: str | None = None) -> str:
    out = [f"# {line}" for line in comment.splitlines()] if comment else []
    out.append(f"{graph.vertex_count} {graph.edge_count}")
    out += [f"{u} {v} {w!r}" for u, v, w in graph.edges]
    return "\n".join(out) + "\n"


def write_edge_list(graph: Graph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(graph, comment))


def parse_off(text: str) -> Mesh:
    """Parse an OFF file with triangular faces only."""
    tokens = []
    for lineno, line in _content_lines(text):
        tokens.extend((lineno, t) for t in line.split())
    if not tokens or tokens[0][1] != "OFF":
        raise ParseError("missing OFF header")
    pos = 1

    def take(kind, what):
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of file while reading {what}")
        lineno, tok = tokens[pos]
        pos += 1
        try:
            return kind(tok)
        except ValueError:
            raise ParseError(f"line {lineno}: bad {what} {tok!r}") from None

    nv, nf = take(int, "vertex count"), take(int, "face count")
    take(int, "edge count")
    verts = np.array([[take(float, "coordinate") for _ in range(3)] for _ in range(nv)], dtype=np.float64).reshape(nv, 3)
    faces = []
    for _ in range(nf):
        lineno = tokens[pos][0] if pos < len(tokens) else None
        arity = take(int, "face size")
        if arity != 3:
            raise ParseError(f"line {lineno}: only triangular faces are accepted, got a {arity}-gon")
        faces.append([take(int, "face index") for _ in range(3)])
    if pos != len(tokens):
        raise ParseError(f"line {tokens[pos][0]}: trailing data after {nf} faces")
    return Mesh(verts, np.array(faces, dtype=np.int64).reshape(-1, 3))


def read_off(path) -> Mesh:
    with open(path, encoding="utf-8") as fh:
        return parse_off(fh.read())


def format_off(mesh: Mesh) -> str:
    out = ["OFF", f"{mesh.vertex_count} {len(mesh.faces)} 0"]
    out += [" ".join(repr(float(c)) for c in row) for row in mesh.vertices]
    out += [f"3 {a} {b} {c}" for a, b, c in mesh.faces.tolist()]
    return "\n".join(out) + "\n"


def write_off(mesh: Mesh, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_off(mesh))


def is_off_file(path) -> bool:
    if os.fspath(path).lower().endswith(".off"):
        return True
    with open(path, encoding="utf-8", errors="replace") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                return line.split()[0] == "OFF"
    return False
