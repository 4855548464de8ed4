"""Modularity of a partition, brute-force oracles and spectral measurements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph, GraphError, Partition
from .validation import check_partition, check_random_state

EXACT_MODULARITY_MAX_N = 12
ISOPERIMETRIC_MAX_N = 24


class ConvergenceError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3g})")
        self.residual = residual


@dataclass(frozen=True)
class ModularityBreakdown:
    edge_contribution: float
    degree_tax: float
    gamma: float = 1.0

    @property
    def q(self) -> float:
        return self.edge_contribution - self.gamma * self.degree_tax


@dataclass(frozen=True)
class SpectralSummary:
    lambda1: float
    lambda_: float
    iterations: int
    residual: float


def modularity(g: Graph, p, gamma: float = 1.0) -> ModularityBreakdown:
    """Edge contribution and degree tax of ``p`` on ``g``.

    A loop at ``v`` counts once toward ``e(A)`` when ``v`` is in ``A`` and
    twice toward ``vol(A)``; parallel edges count with multiplicity.
    """
    p = check_partition(p, g.n)
    m = g.n_edges
    if m == 0:
        raise GraphError("undefined modularity: graph has no edges")
    internal = p.internal_edges(g).sum()
    vol = p.volumes(g)
    return ModularityBreakdown(
        edge_contribution=float(internal) / m,
        degree_tax=float(np.dot(vol, vol)) / (4.0 * m * m),
        gamma=float(gamma),
    )


def modularity_regular_form(g: Graph, p) -> float:
    """Modularity of a d-regular graph as ``sum_i x_i (y_i/d - x_i)``.

    ``x_i`` is the fraction of vertices in part ``i`` and ``y_i`` the average
    internal degree ``2 e(A_i) / |A_i|`` of that part.
    """
    d = g.is_regular()
    if not d:
        raise GraphError("graph is not d-regular with d >= 1")
    p = check_partition(p, g.n)
    sizes = np.bincount(p.labels, minlength=p.k).astype(float)
    x = sizes / g.n
    y = 2.0 * p.internal_edges(g) / sizes
    return float(np.sum(x * (y / d - x)))


@lru_cache(maxsize=4)
def restricted_growth_strings(n: int) -> np.ndarray:
    """All set partitions of ``n`` items as restricted-growth strings.

    Row ``r`` assigns item ``i`` to block ``rgs[r, i]``; blocks are opened in
    order, so each set partition appears exactly once (Bell(n) rows).
    """
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rows = np.zeros((1, 1), dtype=np.int8)
    top = np.zeros(1, dtype=np.int8)
    for _ in range(1, n):
        choices = top.astype(np.int64) + 2
        owner = np.repeat(np.arange(rows.shape[0]), choices)
        offsets = np.repeat(np.cumsum(choices) - choices, choices)
        nxt = (np.arange(owner.size) - offsets).astype(np.int8)
        rows = np.concatenate([rows[owner], nxt[:, None]], axis=1)
        top = np.maximum(top[owner], nxt)
    rows.setflags(write=False)
    return rows


def exact_modularity(g: Graph, gamma: float = 1.0) -> tuple[float, Partition]:
    """Maximum modularity by enumerating every set partition (n <= 12)."""
    if g.n > EXACT_MODULARITY_MAX_N:
        raise GraphError(f"oracle limit: exact modularity needs n <= {EXACT_MODULARITY_MAX_N}")
    if g.n_edges == 0:
        raise GraphError("undefined modularity: graph has no edges")
    rgs = restricted_growth_strings(g.n)
    m = g.n_edges
    deg = g.degrees().astype(float)
    best_q, best_row = -np.inf, 0
    chunk = 1 << 19
    for start in range(0, rgs.shape[0], chunk):
        block = rgs[start:start + chunk]
        internal = np.zeros(block.shape[0])
        for u, v in g.edges.tolist():
            internal += block[:, u] == block[:, v]
        tax = np.zeros(block.shape[0])
        for b in range(g.n):
            vol = (block == b) @ deg
            tax += vol * vol
        q = internal / m - gamma * tax / (4.0 * m * m)
        i = int(np.argmax(q))
        if q[i] > best_q + 1e-15:
            best_q, best_row = float(q[i]), start + i
    return best_q, Partition(rgs[best_row])


def isoperimetric_number(g: Graph) -> float:
    """Edge expansion ``min e(V1, V2) / min(|V1|, |V2|)`` by subset scan."""
    n = g.n
    if n > ISOPERIMETRIC_MAX_N:
        raise GraphError(f"isoperimetric scan needs n <= {ISOPERIMETRIC_MAX_N}")
    if n < 2:
        raise GraphError("isoperimetric number needs at least two vertices")
    u = g.edges[:, 0].astype(np.uint32)
    v = g.edges[:, 1].astype(np.uint32)
    total = 1 << (n - 1)  # vertex n-1 stays in V2
    best = np.inf
    chunk = 1 << 20
    for start in range(1, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        size = np.zeros(masks.size, dtype=np.int64)
        for b in range(n - 1):
            size += (masks >> np.uint32(b)) & np.uint32(1)
        cut = np.zeros(masks.size, dtype=np.int64)
        for a, b in zip(u, v):
            cut += ((masks >> a) ^ (masks >> b)) & np.uint32(1)
        ratio = cut / np.minimum(size, n - size)
        best = min(best, float(ratio.min()))
    return best


def edge_counts(g: Graph, S) -> tuple[int, int]:
    """``(e(S), e(S, V \\ S))``; loops inside ``S`` count once."""
    mask = np.zeros(g.n, dtype=bool)
    mask[np.asarray(list(S), dtype=np.int64)] = True
    a, b = mask[g.edges[:, 0]], mask[g.edges[:, 1]]
    return int(np.count_nonzero(a & b)), int(np.count_nonzero(a ^ b))


def second_eigenvalue(g: Graph, tol: float = 1e-8, max_iter: int = 20000,
                      seed=None, block: int = 4) -> SpectralSummary:
    """Largest absolute non-trivial adjacency eigenvalue of a d-regular graph.

    Subspace iteration with ``A @ A`` on the complement of the all-ones
    vector, followed by a Rayleigh-Ritz step. The dominant eigenvalue there is
    ``max(lambda_2**2, lambda_n**2)``, so the bottom of the spectrum is covered
    without a separate shifted run. A block of a few vectors keeps convergence
    fast when the top of the spectrum is nearly degenerate, as it is for random
    regular graphs. Stops when ``||A^2 x - mu x||_inf <= tol * d**2`` for the
    leading unit Ritz vector ``x``.
    """
    d = g.is_regular()
    if not d:
        raise GraphError("second_eigenvalue needs a d-regular graph")
    rng = check_random_state(seed)
    A = g.adjacency_matrix()
    n = g.n
    if n == 1:
        return SpectralSummary(float(d), 0.0, 0, 0.0)
    k = max(1, min(block, n - 1))
    X = rng.standard_normal((n, k))
    residual = np.inf
    for it in range(1, max_iter + 1):
        X -= X.mean(axis=0)
        Q, _ = np.linalg.qr(X)
        AQ = A @ Q
        AAQ = A @ AQ
        AAQ -= AAQ.mean(axis=0)
        H = Q.T @ AAQ
        mus, W = np.linalg.eigh((H + H.T) / 2.0)
        x = Q @ W[:, -1]
        mu = float(mus[-1])
        y = AAQ @ W[:, -1]
        residual = float(np.max(np.abs(y - mu * x)))
        if residual <= tol * d * d or mu <= 0.0:
            ax = AQ @ W[:, -1]
            lam = float(np.linalg.norm(ax - ax.mean()))
            return SpectralSummary(float(A.sum()) / n, lam, it, residual)
        X = AAQ
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", residual)


def _random_subset(rng, n):
    size = int(rng.integers(1, n // 2 + 1))
    return rng.choice(n, size=size, replace=False)


def check_expansion_inequality(g: Graph, lambda_: float, trials: int = 1000,
                               seed=None, atol: float = 1e-9):
    """Check the spectral cut lower bound and the induced-edge upper bound.

    For random ``S`` (size uniform in ``1..n//2``, then a uniform subset of that
    size) asserts ``e(S, V\\S) >= (d - lambda)|S||V\\S|/n`` and
    ``e(S) <= (d x + lambda (1 - x)) x n / 2`` with ``x = |S|/n``.

    Returns ``(True, None)`` or ``(False, witness_subset)``.
    """
    d = g.is_regular()
    if not d:
        raise GraphError("expansion inequality is stated for d-regular graphs")
    rng = check_random_state(seed)
    n = g.n
    if n < 2:
        return True, None
    for _ in range(trials):
        S = _random_subset(rng, n)
        inside, boundary = edge_counts(g, S)
        s = S.size
        x = s / n
        if boundary < (d - lambda_) * s * (n - s) / n - atol:
            return False, np.sort(S)
        if inside > (d * x + lambda_ * (1 - x)) * x * n / 2 + atol:
            return False, np.sort(S)
    return True, None
