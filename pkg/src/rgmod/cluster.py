"""Estimator wrappers around the constructive partitions.

Each estimator takes a :class:`~rgmod.graph.Graph` (or an ``(E, 2)`` edge
array) as ``X``. After ``fit`` it exposes ``labels_``, ``partition_`` and
``modularity_``, and ``score`` returns the modularity of the fitted labels.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .graph import GraphError, Partition
from .modularity import modularity
from .partition import (avg_degree_threshold, decompose_connected, local_search_refine,
                        majority_color_pa, partition_avg_degree, partition_forest,
                        strip_partition)
from .validation import check_graph, check_partition


class _PartitionEstimator(ClusterMixin, BaseEstimator):

    def _partition(self, g):
        raise NotImplementedError

    def fit(self, X, y=None):
        g = check_graph(X, require_edges=True)
        p = self._partition(g)
        self.partition_ = p
        self.labels_ = p.labels
        self.n_parts_ = p.k
        self.modularity_ = modularity(g, p).q
        return self

    def score(self, X, y=None):
        check_is_fitted(self, "labels_")
        g = check_graph(X, require_edges=True)
        return modularity(g, check_partition(self.labels_, g.n)).q


class TreeDecomposition(_PartitionEstimator):
    """Connected parts of volume at most ``h`` cut from a spanning tree.

    ``h=None`` uses ``sqrt(n * max_degree * avg_degree) + max_degree``.
    """

    def __init__(self, h=None):
        self.h = h

    def _partition(self, g):
        h = avg_degree_threshold(g) if self.h is None else float(self.h)
        self.h_ = h
        return decompose_connected(g, h)


class ForestPartition(_PartitionEstimator):
    def _partition(self, g):
        return partition_forest(g)


class AverageDegreePartition(_PartitionEstimator):
    def _partition(self, g):
        return partition_avg_degree(g)


class MajorityColoring(_PartitionEstimator):
    """Two-part colouring of a preferential attachment graph.

    ``X`` must keep its creation order, as returned by
    :func:`rgmod.generators.gen_pa`.
    """

    def __init__(self, eps=0.05, random_state=None):
        self.eps = eps
        self.random_state = random_state

    def _partition(self, g):
        return majority_color_pa(g, self.eps, seed=self.random_state)


class StripPartition(ClusterMixin, BaseEstimator):
    """Slabs of the torus along the first coordinate.

    Unlike the other estimators this one needs vertex positions, so ``fit``
    takes the :class:`~rgmod.generators.SpaGraph` itself.
    """

    def __init__(self, omega=None):
        self.omega = omega

    def fit(self, X, y=None):
        if not hasattr(X, "positions"):
            raise GraphError("StripPartition.fit expects an SpaGraph with positions")
        from .generators import undirect
        p = strip_partition(X, self.omega)
        self.partition_ = p
        self.labels_ = p.labels
        self.n_parts_ = p.k
        self.modularity_ = modularity(undirect(X), p).q
        return self

    def score(self, X, y=None):
        check_is_fitted(self, "labels_")
        from .generators import undirect
        return modularity(undirect(X), self.labels_).q


class LocalSearchRefiner(_PartitionEstimator):
    """Greedy single-vertex moves starting from ``init``.

    ``init`` may be a label array, ``'singletons'``, ``'components'`` or
    ``'avgdeg'`` (the average-degree decomposition, connected graphs only).
    """

    def __init__(self, init="components", max_passes=20, gamma=1.0, random_state=None):
        self.init = init
        self.max_passes = max_passes
        self.gamma = gamma
        self.random_state = random_state

    def _partition(self, g):
        if isinstance(self.init, str):
            if self.init == "singletons":
                start = Partition(np.arange(g.n))
            elif self.init == "components":
                start = Partition(g.components())
            elif self.init == "avgdeg":
                start = partition_avg_degree(g)
            else:
                raise ValueError(f"unknown init {self.init!r}")
        else:
            start = check_partition(self.init, g.n)
        return local_search_refine(g, start, self.max_passes, seed=self.random_state,
                                   gamma=self.gamma)
