import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import cycle, path, two_triangles
from rgmod.cluster import (AverageDegreePartition, ForestPartition, LocalSearchRefiner,
                           MajorityColoring, StripPartition, TreeDecomposition)
from rgmod.generators import PAParams, SPAParams, gen_pa, gen_spa, undirect
from rgmod.graph import GraphError
from rgmod.modularity import modularity
from rgmod.partition import decompose_connected, majority_color_pa


def test_params_round_trip_and_clone():
    est = MajorityColoring(eps=0.1, random_state=3)
    assert est.get_params() == {"eps": 0.1, "random_state": 3}
    est.set_params(eps=0.2)
    assert clone(est).get_params()["eps"] == 0.2
    assert LocalSearchRefiner().get_params()["init"] == "components"


def test_tree_decomposition_matches_function():
    g = cycle(60)
    est = TreeDecomposition(h=10).fit(g)
    assert np.array_equal(est.labels_, decompose_connected(g, 10).labels)
    assert est.h_ == 10
    assert est.modularity_ == pytest.approx(modularity(g, est.partition_).q)
    assert est.score(g) == pytest.approx(est.modularity_)
    assert TreeDecomposition().fit(g).h_ > 0


def test_fit_predict_and_edge_arrays():
    edges = path(50).edges
    labels = ForestPartition().fit_predict(edges)
    assert labels.shape == (50,)
    assert AverageDegreePartition().fit(two_triangles()).n_parts_ >= 1


def test_majority_estimator_is_seeded():
    g = gen_pa(PAParams(n=3000, m=4, seed=0))
    a = MajorityColoring(random_state=5).fit(g).labels_
    b = majority_color_pa(g, 0.05, seed=5).labels
    assert np.array_equal(a, b)


def test_strip_estimator():
    sg = gen_spa(SPAParams(n=2000, seed=1))
    est = StripPartition(omega=3).fit(sg)
    assert est.n_parts_ == 3
    assert est.score(sg) == pytest.approx(modularity(undirect(sg), est.labels_).q)
    with pytest.raises(GraphError):
        StripPartition().fit(undirect(sg))


def test_refiner_inits():
    g = two_triangles()
    assert LocalSearchRefiner(init="singletons", random_state=0).fit(g).modularity_ > 0.3
    assert LocalSearchRefiner(init=[0, 0, 0, 1, 1, 1]).fit(g).modularity_ == pytest.approx(5 / 14)
    assert LocalSearchRefiner(init="avgdeg", random_state=0).fit(g).modularity_ >= 0
    with pytest.raises(ValueError):
        LocalSearchRefiner(init="nope").fit(g)


def test_unfitted_and_empty_inputs():
    with pytest.raises(NotFittedError):
        ForestPartition().score(path(3))
    with pytest.raises(GraphError):
        ForestPartition().fit(np.zeros((0, 2), dtype=int))
