import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _corpus import definitional_kcenter, small_corpus
from geostretch.exceptions import InvalidVertexId, KTooLarge, SourceError
from geostretch.exhaustive import optimal_kcenter_sources
from geostretch.generators import path_graph, random_connected_graph
from geostretch.sampling import farthest_point_sampling, kcenter_radius, random_sources
from geostretch.shortest_path import all_pairs


def test_path_k1(path3):
    ss = farthest_point_sampling(path3, 1, start=0)
    assert ss.sources == (0,) and ss.radii == (2.0,)


def test_path_k2(path3):
    ss = farthest_point_sampling(path3, 2, start=0)
    assert ss.sources == (0, 2) and ss.radii == (2.0, 1.0)


def test_full_cover_final_radius_zero():
    g = random_connected_graph(12, 6, "uniform", rng=1)
    ss = farthest_point_sampling(g, 12)
    assert sorted(ss.sources) == list(range(12))
    assert ss.radii[-1] == 0.0


def test_default_start_is_vertex_zero():
    g = random_connected_graph(10, 4, rng=2)
    assert farthest_point_sampling(g, 3).sources[0] == 0


def test_seeded_start_is_deterministic():
    g = random_connected_graph(30, 10, rng=2)
    a = farthest_point_sampling(g, 5, seed=42)
    b = farthest_point_sampling(g, 5, seed=42)
    assert a == b
    assert a.sources[0] == int(np.random.default_rng(42).integers(30))


@pytest.mark.parametrize(
    "kwargs, err",
    [({"k": 0}, SourceError), ({"k": 4}, KTooLarge), ({"k": 1, "start": 3}, InvalidVertexId)],
)
def test_fps_argument_errors(path3, kwargs, err):
    with pytest.raises(err):
        farthest_point_sampling(path3, **kwargs)


def test_start_and_seed_conflict(path3):
    with pytest.raises(ValueError):
        farthest_point_sampling(path3, 1, start=0, seed=1)


def test_kcenter_radius_examples(path3):
    assert kcenter_radius(path3, [1]) == 1.0
    assert kcenter_radius(path3, [0]) == 2.0
    assert kcenter_radius(path3, [0, 1, 2]) == 0.0


def test_ties_break_to_smallest_id():
    # from the centre of a 5-cycle vertices 2 and 3 are equally far
    from geostretch.generators import cycle_graph

    ss = farthest_point_sampling(cycle_graph(5), 2, start=0)
    assert ss.sources == (0, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 30), st.integers(0, 2**32 - 1), st.data())
def test_fps_invariants(n, extra, seed, data):
    g = random_connected_graph(n, extra, "uniform", rng=seed)
    k = data.draw(st.integers(1, n))
    start = data.draw(st.integers(0, n - 1))
    ss = farthest_point_sampling(g, k, start=start)
    d = all_pairs(g)
    assert len(set(ss.sources)) == k
    assert all(a >= b for a, b in zip(ss.radii, ss.radii[1:]))
    for i in range(k):
        # radius after i+1 picks is the covering radius of that prefix
        assert ss.radii[i] == pytest.approx(d[list(ss.sources[: i + 1])].min(axis=0).max(), abs=1e-12)
        if i + 1 < k:
            # the next pick realises the previous radius
            assert d[list(ss.sources[: i + 1]), ss.sources[i + 1]].min() == pytest.approx(ss.radii[i], abs=1e-12)
    assert ss.prefix(1).sources == ss.sources[:1]
    assert farthest_point_sampling(g, max(1, k - 1), start=start).sources == ss.sources[: max(1, k - 1)]


def test_fps_is_two_approximation_on_small_graphs():
    for g in small_corpus()[:12]:
        n = g.vertex_count
        for k in (1, 2, 3):
            opt = optimal_kcenter_sources(g, k).objective
            assert opt == pytest.approx(definitional_kcenter(n, g.edges, optimal_kcenter_sources(g, k).best), abs=1e-12)
            for start in range(n):
                ss = farthest_point_sampling(g, k, start=start)
                assert kcenter_radius(g, ss.sources) <= 2 * opt + 1e-9


def test_random_baseline():
    g = path_graph(10)
    a = random_sources(g, 4, seed=1)
    assert a == random_sources(g, 4, seed=1)
    assert len(set(a.sources)) == 4
    assert a.radii[-1] == kcenter_radius(g, a.sources)
