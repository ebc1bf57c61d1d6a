import numpy as np
import pytest

from geostretch.exceptions import DisconnectedGraph, InvalidVertexId, ParseError
from geostretch.generators import grid_mesh, random_connected_graph
from geostretch.graph import ParallelEdgeWarning, mesh_to_graph, validate_triangle_mesh
from geostretch.io import format_edge_list, format_off, is_off_file, parse_edge_list, parse_off, read_edge_list, write_edge_list


def test_parse_edge_list_with_comments():
    g = parse_edge_list("# path\n3 2\n0 1 1.0\n1 2 1.0  # second\n")
    assert g.edges == [(0, 1, 1.0), (1, 2, 1.0)]


@pytest.mark.parametrize(
    "text",
    ["", "3\n0 1 1\n", "2 1\n0 1\n", "2 1\n0 one 1.0\n", "2 2\n0 1 1.0\n", "x y\n"],
)
def test_malformed_edge_lists(text):
    with pytest.raises(ParseError):
        parse_edge_list(text)


def test_edge_list_disconnected():
    with pytest.raises(DisconnectedGraph):
        parse_edge_list("3 1\n0 1 1.0\n")


def test_parallel_edges_warn():
    with pytest.warns(ParallelEdgeWarning):
        g = parse_edge_list("2 2\n0 1 2.0\n1 0 1.0\n")
    assert g.length(0, 1) == 1.0


def test_edge_list_round_trip_is_exact(tmp_path):
    g = random_connected_graph(30, 20, "uniform", rng=3)
    path = tmp_path / "g.txt"
    write_edge_list(g, path, comment="round trip")
    assert read_edge_list(path) == g
    assert format_edge_list(read_edge_list(path), comment="round trip") == path.read_text()


def test_off_round_trip(tmp_path):
    mesh = grid_mesh(3, 4, spacing=0.5)
    back = parse_off(format_off(mesh))
    np.testing.assert_array_equal(back.vertices, mesh.vertices)
    np.testing.assert_array_equal(back.faces, mesh.faces)
    p = tmp_path / "m.off"
    p.write_text(format_off(mesh))
    assert is_off_file(p)


@pytest.mark.parametrize(
    "text",
    [
        "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 0\n",
        "OFF\n3 1 0\n0 0 0\n1 0 0\n",
        "NOPE\n",
    ],
)
def test_malformed_off(text):
    with pytest.raises(ParseError):
        parse_off(text)


def test_out_of_range_face_index_is_structural():
    mesh = parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n")
    assert not validate_triangle_mesh(mesh)["face_indices"].passed
    with pytest.raises(InvalidVertexId):
        mesh_to_graph(mesh)
