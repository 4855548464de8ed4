"""Random graph samplers: pairing model, preferential attachment and SPA.

All samplers draw from ``numpy.random.Generator(PCG64(seed))`` so a given
integer seed reproduces the same edge list on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError
from .validation import check_random_state

NORMS = ("linf", "l2")
_UNIT_BALL = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}


class SimpleGraphRejectionError(RuntimeError):
    pass


@dataclass(frozen=True)
class RegularParams:
    n: int
    d: int
    require_simple: bool = False
    seed: int | None = None
    max_tries: int = 100_000

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise GraphError("need n >= 1 and d >= 1")
        if (self.n * self.d) % 2:
            raise GraphError("d * n must be even")


@dataclass(frozen=True)
class PAParams:
    n: int
    m: int = 1
    seed: int | None = None

    def __post_init__(self):
        if self.m < 1 or self.n < 0:
            raise GraphError("need m >= 1 and n >= 0")


@dataclass(frozen=True)
class SPAParams:
    n: int
    dim: int = 2
    p: float = 0.7
    A1: float = 1.0
    A2: float = 1.0
    norm: str = "linf"
    seed: int | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise GraphError("torus dimension must be >= 1")
        if not 0.0 < self.p <= 1.0:
            raise GraphError("link probability p must lie in (0, 1]")
        if self.A1 <= 0 or self.A2 <= 0:
            raise GraphError("A1 and A2 must be positive")
        if self.p * self.A1 >= 1.0:
            raise GraphError("need p * A1 < 1")
        if self.norm not in NORMS:
            raise GraphError(f"norm must be one of {NORMS}")
        if self.norm == "l2" and self.dim not in _UNIT_BALL:
            raise GraphError("the L2 ball is supported for dim <= 3")


@dataclass(eq=False)
class SpaGraph:
    """Directed SPA output. Every edge ``(s, t)`` has ``s > t`` (young to old)."""

    positions: np.ndarray
    edges: np.ndarray
    indegree: np.ndarray
    outdegree: np.ndarray
    params: SPAParams | None = None

    @property
    def n(self) -> int:
        return int(self.positions.shape[0])

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])


# ---------------------------------------------------------------- pairing


def _pairing_edges(rng, n, d):
    points = rng.permutation(n * d) // d
    return points.reshape(-1, 2)


def _edges_simple(edges, n):
    u, v = edges[:, 0], edges[:, 1]
    if np.any(u == v):
        return False
    key = np.minimum(u, v) * n + np.maximum(u, v)
    return np.unique(key).size == key.size


def gen_pairing(params: RegularParams) -> Graph:
    """d-regular multigraph from a uniform perfect matching of ``d*n`` points.

    With ``require_simple`` the pairing is redrawn until the projected graph
    has no loops or parallel edges, which makes the output uniform over simple
    d-regular graphs.
    """
    rng = check_random_state(params.seed)
    n, d = params.n, params.d
    for _ in range(params.max_tries if params.require_simple else 1):
        edges = _pairing_edges(rng, n, d)
        if not params.require_simple or _edges_simple(edges, n):
            return Graph(n, edges)
    raise SimpleGraphRejectionError(
        f"no simple pairing after {params.max_tries} tries (n={n}, d={d})")


def random_regular_graph(n: int, d: int, seed=None, require_simple: bool = True) -> Graph:
    return gen_pairing(RegularParams(n=n, d=d, require_simple=require_simple, seed=seed))


# ------------------------------------------------------ preferential attachment


def _pa_targets(u: np.ndarray) -> np.ndarray:
    """Targets of the G_1 process given one uniform draw per step.

    The endpoint list after ``t`` steps is ``[1', tgt_1, 2', tgt_2, ...]``.
    Step ``t`` (0-based) picks index ``k = floor(u_t (2t + 1))`` among the
    ``2t`` existing endpoints plus one slot for itself: ``k == 2t`` is a loop,
    an even ``k`` points at the vertex that opened step ``k/2``, an odd ``k``
    copies the target of step ``(k-1)/2``. The copies are resolved by pointer
    jumping instead of a Python loop.
    """
    N = u.size
    t = np.arange(N, dtype=np.int64)
    k = np.minimum((u * (2 * t + 1)).astype(np.int64), 2 * t)
    value = np.where(k % 2 == 0, k // 2, -1)
    value[k == 2 * t] = t[k == 2 * t]
    ptr = np.where(k % 2 == 1, (k - 1) // 2, t)
    todo = np.flatnonzero(value < 0)
    while todo.size:
        nxt = ptr[todo]
        got = value[nxt]
        done = got >= 0
        value[todo[done]] = got[done]
        ptr[todo[~done]] = ptr[nxt[~done]]
        todo = todo[~done]
    return value


def gen_pa(params: PAParams) -> Graph:
    """Bollobas-Riordan preferential attachment multigraph ``G_m^n``.

    Runs the one-edge process for ``m * n`` steps and merges consecutive blocks
    of ``m`` vertices. Edges stay in creation order with column 0 holding the
    new vertex, so the result is ``oriented``.
    """
    rng = check_random_state(params.seed)
    n, m = params.n, params.m
    targets = _pa_targets(rng.random(n * m))
    src = np.arange(n * m, dtype=np.int64) // m
    return Graph(n, np.column_stack([src, targets // m]), oriented=True)


# ------------------------------------------------------------------- SPA


def sphere_volume(indeg, t, A1: float, A2: float):
    """Volume of the sphere of influence, ``min((A1 * indeg + A2) / t, 1)``."""
    if np.any(np.asarray(t) < 1):
        raise GraphError("time must be >= 1")
    return np.minimum((A1 * np.asarray(indeg) + A2) / np.asarray(t, dtype=float), 1.0)


def ball_radius(volume: float, dim: int, norm: str = "linf") -> float:
    """Radius of the ball with the given volume; ``inf`` once it fills the torus."""
    if volume >= 1.0:
        return math.inf
    if norm == "linf":
        return 0.5 * volume ** (1.0 / dim)
    return (volume / _UNIT_BALL[dim]) ** (1.0 / dim)


def torus_distance(x, y, norm: str = "linf") -> float:
    """Wrap-around distance on ``[0, 1]^dim``."""
    diff = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    diff = np.minimum(diff, 1.0 - diff)
    if norm == "linf":
        return float(diff.max()) if diff.size else 0.0
    if norm == "l2":
        return float(np.sqrt(np.sum(diff * diff)))
    raise GraphError(f"unknown norm {norm!r}")


class _CellIndex:
    """Uniform grid where each vertex is listed in every cell its ball touches.

    Balls only grow when a vertex gains in-degree, and then it is re-listed;
    stale, larger registrations are harmless because every candidate is
    re-checked against its current radius. Balls covering a quarter of the
    grid or more go to a shared list scanned on every query.
    """

    def __init__(self, dim, cells):
        self.dim = dim
        self.g = cells
        self.cells: dict[tuple, list[int]] = {}
        self.wide: list[int] = []

    def _span(self, c, r):
        g = self.g
        if 2.0 * r >= 1.0:
            return range(g)
        lo = math.floor((c - r) * g)
        hi = math.floor((c + r) * g)
        if hi - lo + 1 >= g:
            return range(g)
        return [i % g for i in range(lo, hi + 1)]

    def add(self, u, pos, r):
        if math.isinf(r):
            self.wide.append(u)
            return
        spans = [self._span(pos[j], r) for j in range(self.dim)]
        count = 1
        for s in spans:
            count *= len(s)
        if 4 * count >= self.g ** self.dim:
            self.wide.append(u)
            return
        keys = [()]
        for s in spans:
            keys = [k + (i,) for k in keys for i in s]
        cells = self.cells
        for key in keys:
            lst = cells.get(key)
            if lst is None:
                cells[key] = [u]
            else:
                lst.append(u)

    def query(self, pos):
        g = self.g
        key = tuple(min(int(pos[j] * g), g - 1) for j in range(self.dim))
        return self.cells.get(key, []), self.wide


def gen_spa(params: SPAParams) -> SpaGraph:
    """Spatial preferential attachment on the unit torus.

    At step ``t`` a uniform point ``v_t`` arrives and, independently for every
    earlier ``u`` whose sphere of influence ``S(u, t-1)`` contains it, the edge
    ``v_t -> u`` is added with probability ``p``. Candidates come from a grid
    index rebuilt whenever ``t`` reaches a power of two.
    """
    rng = check_random_state(params.seed)
    n, dim, p = params.n, params.dim, params.p
    A1, A2, norm = params.A1, params.A2, params.norm
    positions = rng.random((n, dim))
    pos = positions.tolist()
    # ball test as "scaled distance ** dim <= volume"
    scale = 2.0 if norm == "linf" else _UNIT_BALL[dim] ** (1.0 / dim)
    linf = norm == "linf"
    weight = [A2] * n              # A1 * indeg + A2
    reg_vol = [0.0] * n            # volume the vertex is indexed with
    stamp = [-1] * n
    src: list[int] = []
    dst: list[int] = []
    index = None
    next_rebuild = 1

    for t in range(1, n + 1):
        v = t - 1
        now = t - 1                 # spheres are S(u, t-1)
        if now >= next_rebuild:
            cells = max(1, min(1024, int((now / A2) ** (1.0 / dim))))
            index = _CellIndex(dim, cells)
            for u in range(now):
                vol = min(weight[u] / now, 1.0)
                index.add(u, pos[u], ball_radius(vol, dim, norm))
                reg_vol[u] = vol
            next_rebuild *= 2
        hits = []
        if index is not None:
            x = pos[v]
            local, wide = index.query(x)
            for group in (local, wide):
                for u in group:
                    if stamp[u] == v:
                        continue
                    stamp[u] = v
                    w = weight[u]
                    if w >= now:
                        hits.append(u)
                        continue
                    y = pos[u]
                    dist = 0.0
                    for j in range(dim):
                        dd = abs(x[j] - y[j])
                        if dd > 0.5:
                            dd = 1.0 - dd
                        if linf:
                            if dd > dist:
                                dist = dd
                        else:
                            dist += dd * dd
                    if not linf:
                        dist = math.sqrt(dist)
                    if (scale * dist) ** dim * now <= w:
                        hits.append(u)
        if hits:
            hits.sort()
            coins = rng.random(len(hits))
            for u, c in zip(hits, coins.tolist()):
                if c < p:
                    src.append(v)
                    dst.append(u)
                    w = weight[u] + A1
                    weight[u] = w
                    vol = w / t
                    if vol > reg_vol[u]:
                        vol = min(vol, 1.0)
                        index.add(u, pos[u], ball_radius(vol, dim, norm))
                        reg_vol[u] = vol
        if index is not None:
            vol = min(A2 / t, 1.0)
            index.add(v, pos[v], ball_radius(vol, dim, norm))
            reg_vol[v] = vol

    edges = np.column_stack([np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)])
    edges = edges.reshape(-1, 2)
    indeg = np.bincount(edges[:, 1], minlength=n).astype(np.int64)
    outdeg = np.bincount(edges[:, 0], minlength=n).astype(np.int64)
    return SpaGraph(positions, edges, indeg, outdeg, params)


def undirect(sg: SpaGraph) -> Graph:
    """Forget orientation; young-to-old edges never collide, so the result is simple."""
    return Graph(sg.n, sg.edges.copy(), oriented=True)


# ------------------------------------------------------------ test fixtures


def random_tree(n: int, seed=None) -> Graph:
    """Uniform labelled tree on ``n`` vertices via a random Pruefer sequence."""
    import heapq

    rng = check_random_state(seed)
    if n <= 1:
        return Graph(max(n, 0))
    if n == 2:
        return Graph(2, [[0, 1]])
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, edges)


def random_connected_graph(n: int, extra_edges: int, seed=None) -> Graph:
    """Random labelled tree plus ``extra_edges`` uniformly random extra edges."""
    rng = check_random_state(seed)
    tree = random_tree(n, rng)
    extra = rng.integers(0, n, size=(extra_edges, 2))
    extra = extra[extra[:, 0] != extra[:, 1]]
    return Graph(n, np.concatenate([tree.edges, extra]))


# ------------------------------------------------------------------ positions


def write_positions(sg: SpaGraph, path) -> None:
    """Write ``<header>`` then one ``v x0 x1 ...`` line per vertex.

    The header is ``dim <k> p <p> A1 <a1> A2 <a2> norm <name>`` so the file
    alone is enough to rebuild the strip partition.
    """
    prm = sg.params
    dim = sg.positions.shape[1]
    with open(path, "w") as fh:
        if prm is not None:
            fh.write(f"dim {dim} p {prm.p!r} A1 {prm.A1!r} A2 {prm.A2!r} norm {prm.norm}\n")
        else:
            fh.write(f"dim {dim}\n")
        for v, row in enumerate(sg.positions.tolist()):
            fh.write(f"{v} " + " ".join(repr(x) for x in row) + "\n")


def read_positions(path):
    """``(positions, header_dict)`` from a file written by :func:`write_positions`."""
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip()]
    if not lines or lines[0][0] != "dim":
        raise GraphError(f"{path}: missing 'dim' header")
    head = lines[0]
    header = dict(zip(head[0::2], head[1::2]))
    dim = int(header["dim"])
    rows = sorted((int(r[0]), [float(x) for x in r[1:]]) for r in lines[1:])
    if [v for v, _ in rows] != list(range(len(rows))) or any(len(x) != dim for _, x in rows):
        raise GraphError(f"{path}: malformed position rows")
    pos = np.array([x for _, x in rows], dtype=float).reshape(-1, dim)
    return pos, header


def spa_from_files(g: Graph, pos_path) -> SpaGraph:
    """Rebuild an :class:`SpaGraph` from an edge list and its ``.pos`` file."""
    pos, header = read_positions(pos_path)
    if pos.shape[0] != g.n:
        raise GraphError("position file and edge list disagree on n")
    params = None
    if "p" in header:
        params = SPAParams(n=g.n, dim=int(header["dim"]), p=float(header["p"]),
                           A1=float(header["A1"]), A2=float(header["A2"]),
                           norm=header.get("norm", "linf"))
    e = g.edges
    return SpaGraph(pos, e.copy(), np.bincount(e[:, 1], minlength=g.n).astype(np.int64),
                    np.bincount(e[:, 0], minlength=g.n).astype(np.int64), params)
