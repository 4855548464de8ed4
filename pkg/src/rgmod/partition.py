"""Constructive partitions that witness the modularity lower bounds."""

from __future__ import annotations

import heapq
import math
from collections import deque

import numpy as np

from .graph import Graph, GraphError, Partition
from .validation import check_partition, check_random_state


def _tree_adjacency(n, edges):
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    return adj


def _subtree_sums(adj, root, volumes, removed):
    """DFS order from ``root`` with parent edges and subtree volume sums."""
    order = [root]
    parent = {root: (-1, -1)}
    stack = [root]
    while stack:
        x = stack.pop()
        for y, e in adj[x]:
            if e in removed or y in parent:
                continue
            parent[y] = (x, e)
            order.append(y)
            stack.append(y)
    sub = {x: float(volumes[x]) for x in order}
    for x in reversed(order[1:]):
        sub[parent[x][0]] += sub[x]
    parent_edge = {x: parent[x][1] for x in order}
    return order, parent_edge, sub


def _centroid(adj, root, volumes, removed):
    order, parent_edge, sub = _subtree_sums(adj, root, volumes, removed)
    total = sub[root]
    best_val, best_edge, best_child = -1.0, None, None
    for x in order[1:]:
        val = min(sub[x], total - sub[x])
        e = parent_edge[x]
        if val > best_val or (val == best_val and e < best_edge):
            best_val, best_edge, best_child = val, e, x
    return best_edge, best_child, total, order


def centroid_edge(tree: Graph, volumes=None) -> int:
    """Index into ``tree.edges`` of the edge maximising the smaller side's volume.

    ``volumes`` are host-graph degrees of the tree's vertices (the tree's own
    degrees when omitted). Ties go to the smallest edge index.
    """
    if tree.n_edges == 0:
        raise GraphError("centroid edge of an edgeless tree")
    if not tree.is_forest() or tree.n_components() != 1:
        raise GraphError("centroid_edge expects a tree")
    volumes = tree.degrees() if volumes is None else np.asarray(volumes, dtype=float)
    adj = _tree_adjacency(tree.n, tree.edges.tolist())
    edge, _, _, _ = _centroid(adj, 0, volumes, set())
    return int(edge)


def bfs_spanning_tree(g: Graph) -> np.ndarray:
    """Breadth-first spanning forest; each component is rooted at its smallest vertex."""
    adj = [[] for _ in range(g.n)]
    for u, v in g.edges.tolist():
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    seen = np.zeros(g.n, dtype=bool)
    tree = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    tree.append((x, y))
                    queue.append(y)
    return np.asarray(tree, dtype=np.int64).reshape(-1, 2)


def _split_tree(n, tree_edges, volumes, roots, h):
    """Remove centroid edges until every tree has volume ``<= h``.

    ``roots`` holds one vertex per tree to process. The heaviest tree is split
    first. Returns a label per vertex.
    """
    adj = _tree_adjacency(n, tree_edges)
    removed: set[int] = set()
    labels = np.full(n, -1, dtype=np.int64)
    heap = []
    for r in roots:
        _, _, sub = _subtree_sums(adj, r, volumes, removed)
        heapq.heappush(heap, (-sub[r], r))
    part = 0
    while heap:
        negvol, r = heapq.heappop(heap)
        if -negvol <= h:
            order, _, _ = _subtree_sums(adj, r, volumes, removed)
            labels[order] = part
            part += 1
            continue
        edge, child, total, _ = _centroid(adj, r, volumes, removed)
        if edge is None:  # single vertex heavier than h
            labels[r] = part
            part += 1
            continue
        removed.add(edge)
        _, _, sub_c = _subtree_sums(adj, child, volumes, removed)
        heapq.heappush(heap, (-sub_c[child], child))
        heapq.heappush(heap, (-(total - sub_c[child]), r))
    return labels


def decompose_connected(g: Graph, h: float) -> Partition:
    """Split a connected graph into connected parts of volume at most ``h``.

    Works on a breadth-first spanning tree from vertex 0 and keeps removing the
    centroid edge (with host-graph degrees as vertex weights) of the heaviest
    tree above ``h``. When a split happens every part has volume at least
    ``h / max_degree - 1``.
    """
    if h <= 0:
        raise GraphError("h must be positive")
    if not g.is_connected():
        raise GraphError("decompose_connected needs a connected graph")
    tree = bfs_spanning_tree(g)
    labels = _split_tree(g.n, tree.tolist(), g.degrees().astype(float), [0], h)
    return Partition(labels)


def partition_forest(f: Graph) -> Partition:
    """Forest partition with ``h = sqrt(max_degree * n)``, ``n`` = non-isolated vertices.

    Trees already lighter than ``h`` stay whole, heavier ones are cut with the
    centroid-edge decomposition. Isolated vertices become singleton parts.
    """
    if not f.is_forest():
        raise GraphError("partition_forest needs an acyclic graph")
    deg = f.degrees()
    n_active = int(np.count_nonzero(deg))
    if n_active == 0:
        return Partition(np.arange(f.n))
    h = math.sqrt(f.max_degree() * n_active)
    comp = f.components()
    roots = [int(np.flatnonzero(comp == c)[0]) for c in range(int(comp.max()) + 1)]
    labels = _split_tree(f.n, f.edges.tolist(), deg.astype(float), roots, h)
    return Partition(labels)


def avg_degree_threshold(g: Graph) -> float:
    dbar = 2.0 * g.n_edges / g.n
    delta = g.max_degree()
    return math.sqrt(g.n * delta * dbar) + delta


def partition_avg_degree(g: Graph) -> Partition:
    """Decomposition of a connected graph with ``h = sqrt(n * max_degree * avg_degree) + max_degree``."""
    if not g.is_connected():
        raise GraphError("partition_avg_degree needs a connected graph")
    return decompose_connected(g, avg_degree_threshold(g))


def pa_out_targets(g: Graph) -> tuple[int, np.ndarray]:
    """``(m, targets)`` with ``targets[v]`` the ``m`` endpoints vertex ``v`` attached to."""
    if not g.oriented:
        raise GraphError("graph lacks creation-order metadata (not from gen_pa)")
    if g.n == 0 or g.n_edges % g.n:
        raise GraphError("edge count is not a multiple of n; not a PA graph")
    m = g.n_edges // g.n
    src = g.edges[:, 0].reshape(g.n, m)
    if np.any(src != np.arange(g.n)[:, None]):
        raise GraphError("edges are not in PA creation order")
    tgt = g.edges[:, 1].reshape(g.n, m)
    if np.any(tgt > np.arange(g.n)[:, None]):
        raise GraphError("PA edges must point from younger to older vertices")
    return m, tgt


def majority_color_pa(g: Graph, eps: float = 0.05, seed=None) -> Partition:
    """Red/blue colouring of a PA graph by majority vote over each vertex's targets.

    The first ``floor(eps n / 4)`` vertices are red and the rest of the first
    ``floor(eps n)`` blue. Every later vertex turns red when more than half of
    its ``m`` targets are red; an exact tie (even ``m``) is settled by a fair
    coin. A loop target is the uncoloured vertex itself and never counts as red.
    """
    if not 0.0 < eps < 1.0:
        raise GraphError("eps must lie in (0, 1)")
    rng = check_random_state(seed)
    m, tgt = pa_out_targets(g)
    n = g.n
    n_seed = int(math.floor(eps * n))
    n_red = int(math.floor(eps * n / 4))
    red = np.zeros(n, dtype=bool)
    red[:n_red] = True
    coins = rng.random(n) < 0.5
    half = m / 2.0
    red_list = red.tolist()
    rows = tgt.tolist()
    coin_list = coins.tolist()
    for v in range(n_seed, n):
        r = 0
        for u in rows[v]:
            if u != v and red_list[u]:
                r += 1
        if r > half or (r == half and coin_list[v]):
            red_list[v] = True
    return Partition(np.where(np.asarray(red_list), 0, 1))


def default_omega(n: int, dim: int, pA1: float) -> int:
    """Number of strips, ``round(n^{min(1/dim, 1 - pA1)/2} / sqrt(ln n))``, at least 1."""
    if n < 2:
        return 1
    raw = n ** (min(1.0 / dim, 1.0 - pA1) / 2.0) / math.sqrt(math.log(n))
    return max(1, int(math.floor(raw + 0.5)))


def strip_partition(sg, omega: int | None = None) -> Partition:
    """Cut the torus into ``omega`` slabs along coordinate 0 and group vertices by slab."""
    n = sg.n
    if omega is None:
        prm = sg.params
        if prm is None:
            raise GraphError("SPA parameters needed for the default strip count")
        omega = default_omega(n, prm.dim, prm.p * prm.A1)
    if omega < 1:
        raise GraphError("omega must be >= 1")
    x0 = np.asarray(sg.positions)[:, 0]
    labels = np.minimum((x0 * omega).astype(np.int64), omega - 1)
    return Partition(labels)


def local_search_refine(g: Graph, p, max_passes: int = 20, seed=None,
                        gamma: float = 1.0) -> Partition:
    """Single-vertex moves to a neighbouring part, kept only when modularity rises.

    Vertices are visited in a fresh random order each pass; stops after a pass
    with no move or after ``max_passes``.
    """
    p = check_partition(p, g.n)
    m = g.n_edges
    if m == 0:
        return p
    rng = check_random_state(seed)
    adj = g.adjacency_lists()
    deg = g.degrees().tolist()
    labels = p.labels.tolist()
    vol = np.bincount(p.labels, weights=g.degrees(), minlength=g.n).tolist()
    two_m2 = 2.0 * m * m
    for _ in range(max_passes):
        moved = False
        for v in rng.permutation(g.n).tolist():
            a = labels[v]
            links: dict[int, int] = {}
            for u in adj[v]:
                if u != v:
                    links[labels[u]] = links.get(labels[u], 0) + 1
            k_a = links.get(a, 0)
            dv = deg[v]
            best_gain, best_b = 1e-12, None
            for b, k_b in links.items():
                if b == a:
                    continue
                gain = (k_b - k_a) / m - gamma * dv * (vol[b] - vol[a] + dv) / two_m2
                if gain > best_gain:
                    best_gain, best_b = gain, b
            if best_b is not None:
                labels[v] = best_b
                vol[a] -= dv
                vol[best_b] += dv
                moved = True
        if not moved:
            break
    return Partition(labels)
