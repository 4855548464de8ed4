"""Undirected multigraph and vertex partition containers, plus text I/O."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class GraphError(ValueError):
    pass


@dataclass(eq=False)
class Graph:
    """Undirected multigraph on vertices ``0..n-1``.

    ``edges`` is an ``(E, 2)`` integer array kept in creation order. A loop is
    a row ``(v, v)`` and adds 2 to ``degree(v)``. When ``oriented`` is set,
    column 0 holds the vertex that created the edge (the younger one), which
    is what the preferential-attachment replay relies on.
    """

    n: int
    edges: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64))
    oriented: bool = False

    def __post_init__(self):
        self.n = int(self.n)
        e = np.asarray(self.edges, dtype=np.int64)
        if e.size == 0:
            e = e.reshape(0, 2)
        if e.ndim != 2 or e.shape[1] != 2:
            raise GraphError("edges must have shape (E, 2)")
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        if e.size and (e.min() < 0 or e.max() >= self.n):
            raise GraphError("edge endpoint out of range")
        self.edges = e

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def degrees(self) -> np.ndarray:
        # loops land twice via the two columns, as required
        return np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def is_regular(self) -> int | None:
        """Common degree if every vertex has the same degree, else ``None``."""
        if self.n == 0:
            return None
        deg = self.degrees()
        return int(deg[0]) if np.all(deg == deg[0]) else None

    def is_simple(self) -> bool:
        u, v = self.edges[:, 0], self.edges[:, 1]
        if np.any(u == v):
            return False
        key = np.minimum(u, v) * self.n + np.maximum(u, v)
        return np.unique(key).size == key.size

    def adjacency_lists(self) -> list[list[int]]:
        """Neighbour lists with multiplicity; a loop appears twice at its vertex."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges.tolist():
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def adjacency_matrix(self):
        """Sparse symmetric adjacency matrix; loops contribute 2 on the diagonal."""
        from scipy.sparse import coo_matrix

        u, v = self.edges[:, 0], self.edges[:, 1]
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        data = np.ones(rows.size, dtype=float)
        return coo_matrix((data, (rows, cols)), shape=(self.n, self.n)).tocsr()

    def components(self) -> np.ndarray:
        """Connected-component label for every vertex (labels 0..c-1)."""
        parent = np.arange(self.n)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges.tolist():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        roots = np.array([find(x) for x in range(self.n)], dtype=np.int64)
        _, labels = np.unique(roots, return_inverse=True)
        return labels

    def n_components(self) -> int:
        if self.n == 0:
            return 0
        return int(self.components().max()) + 1

    def is_connected(self) -> bool:
        return self.n > 0 and self.n_components() == 1

    def is_forest(self) -> bool:
        if np.any(self.edges[:, 0] == self.edges[:, 1]):
            return False
        return self.n_edges == self.n - self.n_components()

    def subgraph_edges(self, mask: np.ndarray) -> np.ndarray:
        mask = np.asarray(mask, dtype=bool)
        keep = mask[self.edges[:, 0]] & mask[self.edges[:, 1]]
        return self.edges[keep]

    def __repr__(self):
        return f"Graph(n={self.n}, n_edges={self.n_edges}, oriented={self.oriented})"


class Partition:
    """Assignment of every vertex to a part ``0..k-1`` with no empty part.

    Arbitrary integer labels are accepted and relabelled in order of first
    appearance, so ``Partition([5, 5, 2])`` has labels ``[0, 0, 1]``.
    """

    def __init__(self, labels):
        labels = np.asarray(labels)
        if labels.ndim != 1:
            raise GraphError("partition labels must be one-dimensional")
        _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
        order = np.argsort(np.argsort(first))
        self.labels = order[inverse].astype(np.int64)

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def k(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def parts(self) -> list[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum(np.bincount(self.labels, minlength=self.k))[:-1]
        return np.split(order, bounds)

    def volumes(self, g: Graph) -> np.ndarray:
        return np.bincount(self.labels, weights=g.degrees(), minlength=self.k)

    def internal_edges(self, g: Graph) -> np.ndarray:
        lu, lv = self.labels[g.edges[:, 0]], self.labels[g.edges[:, 1]]
        same = lu == lv
        return np.bincount(lu[same], minlength=self.k).astype(np.int64)

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64))

    def __eq__(self, other):
        return isinstance(other, Partition) and np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"Partition(n={self.n}, k={self.k})"


def read_edgelist(path) -> Graph:
    """Read the ``n <count>`` header followed by one ``u v`` pair per line."""
    lines = Path(path).read_text().split("\n")
    body = [ln.split() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not body or body[0][0] != "n" or len(body[0]) != 2:
        raise GraphError(f"{path}: missing 'n <count>' header")
    n = int(body[0][1])
    edges = np.array([[int(a), int(b)] for a, b in body[1:]], dtype=np.int64).reshape(-1, 2)
    return Graph(n, edges)


def write_edgelist(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"n {g.n}\n")
        for u, v in g.edges.tolist():
            fh.write(f"{u} {v}\n")


def read_partition(path, n: int | None = None) -> Partition:
    pairs = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    pairs = sorted((int(v), int(p)) for v, p in pairs)
    verts = [v for v, _ in pairs]
    if verts != list(range(len(verts))) or (n is not None and len(verts) != n):
        raise GraphError(f"{path}: every vertex must be assigned exactly once")
    return Partition([p for _, p in pairs])


def write_partition(p: Partition, path) -> None:
    with open(path, "w") as fh:
        for v, part in enumerate(p.labels.tolist()):
            fh.write(f"{v} {part}\n")
