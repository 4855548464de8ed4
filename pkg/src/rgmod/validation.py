"""Input validation helpers shared by the estimators and free functions."""

from __future__ import annotations

import numbers

import numpy as np

from .graph import Graph, GraphError, Partition


def check_random_state(seed) -> np.random.Generator:
    """Turn ``seed`` into a ``numpy.random.Generator`` (PCG64).

    ``None`` gives fresh entropy, an int seeds a new PCG64 stream and an
    existing ``Generator`` is passed through untouched.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or isinstance(seed, (numbers.Integral, np.integer)):
        return np.random.Generator(np.random.PCG64(seed))
    raise ValueError(f"{seed!r} cannot be used to seed a numpy Generator")


def check_graph(X, *, require_edges=False, connected=False, regular=False) -> Graph:
    """Accept a :class:`Graph` or an ``(E, 2)`` edge array and validate it."""
    if isinstance(X, Graph):
        g = X
    else:
        edges = np.asarray(X)
        if edges.ndim != 2 or edges.shape[1] != 2:
            raise GraphError("expected a Graph or an (E, 2) array of edges")
        if not np.issubdtype(edges.dtype, np.integer):
            raise GraphError("edge endpoints must be integers")
        n = int(edges.max()) + 1 if edges.size else 0
        g = Graph(n, edges)
    if require_edges and g.n_edges == 0:
        raise GraphError("graph has no edges")
    if connected and not g.is_connected():
        raise GraphError("graph must be connected")
    if regular and not g.is_regular():
        raise GraphError("graph must be d-regular")
    return g


def check_partition(p, n: int) -> Partition:
    if not isinstance(p, Partition):
        p = Partition(p)
    if p.n != n:
        raise GraphError(f"partition covers {p.n} vertices, graph has {n}")
    return p
