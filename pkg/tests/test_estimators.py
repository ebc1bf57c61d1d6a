import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from geostretch.analysis import stretch_fast
from geostretch.estimators import FarthestPointSampler, LandmarkDistanceOracle
from geostretch.generators import path_graph, random_connected_graph
from geostretch.oracle import build_oracle
from geostretch.sampling import farthest_point_sampling
from geostretch.shortest_path import all_pairs


@pytest.fixture
def graph():
    return random_connected_graph(30, 25, "uniform", rng=12)


def test_params_and_clone():
    est = LandmarkDistanceOracle(n_sources=4, sampler="random", random_state=3)
    assert est.get_params()["n_sources"] == 4
    c = clone(est)
    assert c.get_params() == est.get_params()
    assert not hasattr(c, "oracle_")
    est.set_params(n_sources=6)
    assert est.n_sources == 6


def test_sampler_matches_functional_api(graph):
    fps = FarthestPointSampler(n_sources=5, start=3).fit(graph)
    ref = farthest_point_sampling(graph, 5, start=3)
    assert tuple(fps.sources_) == ref.sources
    np.testing.assert_array_equal(fps.radii_, ref.radii)
    d = all_pairs(graph)
    np.testing.assert_allclose(fps.transform(graph), d[list(ref.sources)].T, atol=1e-12, rtol=0)
    np.testing.assert_allclose(fps.transform([0, 4]), d[list(ref.sources)][:, [0, 4]].T, atol=1e-12, rtol=0)


def test_sampler_integer_random_state_matches_seed(graph):
    a = FarthestPointSampler(n_sources=3, random_state=11).fit(graph)
    assert tuple(a.sources_) == farthest_point_sampling(graph, 3, seed=11).sources


def test_sampler_rejects_other_graph(graph):
    fps = FarthestPointSampler(n_sources=2).fit(graph)
    with pytest.raises(ValueError):
        fps.transform(path_graph(3))


def test_oracle_predict(graph):
    est = LandmarkDistanceOracle(n_sources=4).fit(graph)
    ref = build_oracle(graph, farthest_point_sampling(graph, 4))
    pairs = np.array([[0, 1], [5, 9], [12, 12]])
    expected = [(ref.table[:, p] + ref.table[:, q]).min() for p, q in pairs]
    np.testing.assert_array_equal(est.predict(pairs), expected)
    assert est.transform([3]).shape == (1, 4)
    assert est.stretch(graph).stretch == stretch_fast(graph, ref).stretch
    assert est.stretch(graph, method="naive").stretch == pytest.approx(est.stretch(graph).stretch, rel=1e-12)


def test_random_sampler_is_seeded(graph):
    a = LandmarkDistanceOracle(n_sources=4, sampler="random", random_state=0).fit(graph)
    b = LandmarkDistanceOracle(n_sources=4, sampler="random", random_state=0).fit(graph)
    np.testing.assert_array_equal(a.sources_, b.sources_)


@pytest.mark.parametrize("bad", [np.array([[0, 30]]), np.array([[0, 1, 2]]), np.array([[-1, 0]])])
def test_predict_validates_pairs(graph, bad):
    est = LandmarkDistanceOracle(n_sources=2).fit(graph)
    with pytest.raises(ValueError):
        est.predict(bad)


def test_unfitted():
    with pytest.raises(NotFittedError):
        LandmarkDistanceOracle().predict([[0, 1]])


def test_bad_sampler(graph):
    with pytest.raises(ValueError):
        LandmarkDistanceOracle(sampler="nope").fit(graph)


def test_fit_requires_graph():
    with pytest.raises(TypeError):
        FarthestPointSampler().fit(np.zeros((3, 3)))
