import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geostretch.exceptions import ChecksumMismatch, CorruptFile, InvalidVertexId, VersionMismatch
from geostretch.generators import path_graph, random_connected_graph
from geostretch.oracle import approx_distance, approx_distances, build_oracle, load_oracle, nearest_source, save_oracle
from geostretch.sampling import farthest_point_sampling
from geostretch.shortest_path import all_pairs


def test_build_examples(path3):
    assert build_oracle(path3, [0]).table.tolist() == [[0, 1, 2]]
    assert build_oracle(path3, [0, 2]).table.tolist() == [[0, 1, 2], [2, 1, 0]]


def test_full_source_set_is_exact():
    g = random_connected_graph(15, 10, "uniform", rng=4)
    o = build_oracle(g, range(15))
    d = all_pairs(g)
    for p in range(15):
        for q in range(15):
            if p != q:
                assert approx_distance(o, p, q).value == pytest.approx(d[p, q], abs=1e-12)


def test_query_examples(path3):
    o = build_oracle(path3, [0])
    ans = approx_distance(o, 1, 2)
    assert (ans.value, ans.witness_source) == (3.0, 0)
    assert approx_distance(o, 1, 1).value == 2.0
    assert approx_distance(o, 2, 0).value == 2.0


def test_nearest_source_examples(path3):
    assert nearest_source(build_oracle(path3, [0, 2]), 1) == (0, 1.0)
    assert nearest_source(build_oracle(path3, [0, 2]), 2) == (2, 0.0)
    assert nearest_source(build_oracle(path3, [0]), 2) == (0, 2.0)


def test_query_rejects_bad_vertex(path3):
    with pytest.raises(InvalidVertexId):
        approx_distance(build_oracle(path3, [0]), 0, 5)


def test_table_is_read_only(path3):
    with pytest.raises(ValueError):
        build_oracle(path3, [0]).table[0, 0] = 1.0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 25), st.integers(0, 30), st.integers(0, 2**32 - 1), st.data())
def test_soundness_and_symmetry(n, extra, seed, data):
    g = random_connected_graph(n, extra, "uniform", rng=seed)
    k = data.draw(st.integers(1, n))
    o = build_oracle(g, farthest_point_sampling(g, k))
    d = all_pairs(g)
    ps = np.repeat(np.arange(n), n)
    qs = np.tile(np.arange(n), n)
    vals = approx_distances(o, ps, qs).reshape(n, n)
    np.testing.assert_array_equal(vals, vals.T)
    assert np.all(vals >= d - 1e-12)
    for s in o.sources:
        np.testing.assert_allclose(vals[s], d[s], atol=1e-12, rtol=0)
    p, q = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert approx_distance(o, p, q).value == vals[p, q]


def test_round_trip_via_path(tmp_path):
    g = random_connected_graph(30, 20, "uniform", rng=8)
    o = build_oracle(g, farthest_point_sampling(g, 4))
    path = tmp_path / "o.bin"
    save_oracle(o, path)
    back = load_oracle(path, g)
    np.testing.assert_array_equal(back.table, o.table)
    assert back.sources == o.sources


def _saved(oracle):
    buf = io.BytesIO()
    save_oracle(oracle, buf)
    return buf.getvalue()


def test_load_against_other_graph(path3):
    blob = _saved(build_oracle(path3, [0]))
    with pytest.raises(ChecksumMismatch):
        load_oracle(io.BytesIO(blob), path_graph(3, 2.0))


def test_truncated_file(path3):
    blob = _saved(build_oracle(path3, [0]))
    for cut in (0, 3, 10, len(blob) - 1):
        with pytest.raises(CorruptFile):
            load_oracle(io.BytesIO(blob[:cut]))


def test_trailing_bytes_rejected(path3):
    blob = _saved(build_oracle(path3, [0]))
    with pytest.raises(CorruptFile):
        load_oracle(io.BytesIO(blob + b"\0"))


def test_version_mismatch(path3):
    blob = bytearray(_saved(build_oracle(path3, [0])))
    blob[4] = ord("9")
    with pytest.raises(VersionMismatch):
        load_oracle(io.BytesIO(bytes(blob)))


def test_restrict_is_prefix():
    g = random_connected_graph(20, 10, rng=1)
    o = build_oracle(g, farthest_point_sampling(g, 5))
    r = o.restrict(2)
    assert r.sources == o.sources[:2]
    np.testing.assert_array_equal(r.table, o.table[:2])
