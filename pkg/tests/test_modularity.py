import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_graph, cycle, path, two_triangles
from rgmod.generators import RegularParams, gen_pairing, random_regular_graph
from rgmod.graph import Graph, GraphError, Partition
from rgmod.modularity import (ConvergenceError, check_expansion_inequality, edge_counts,
                              exact_modularity, isoperimetric_number, modularity,
                              modularity_regular_form, restricted_growth_strings,
                              second_eigenvalue)


def brute_force_q(g, labels):
    """Direct double sum over vertex pairs (Newman form) as an independent oracle."""
    A = g.adjacency_matrix().toarray().astype(float)
    # the matrix counts a loop twice on the diagonal, the edge contribution once
    internal = 0.0
    for u, v in g.edges.tolist():
        internal += labels[u] == labels[v]
    deg = A.sum(axis=1)
    m = g.n_edges
    tax = sum(deg[i] * deg[j] for i in range(g.n) for j in range(g.n) if labels[i] == labels[j])
    return internal / m - tax / (4.0 * m * m)


def test_single_part_is_zero():
    for g in (two_triangles(), complete_graph(5), Graph(2, [(0, 0), (0, 1)])):
        assert modularity(g, Partition.trivial(g.n)).q == pytest.approx(0.0, abs=1e-15)


def test_two_triangles_with_bridge():
    br = modularity(two_triangles(), [0, 0, 0, 1, 1, 1])
    assert br.edge_contribution == pytest.approx(6 / 7)
    assert br.degree_tax == pytest.approx(0.5)
    assert br.q == pytest.approx(5 / 14)


def test_four_cycle_opposite_edges():
    assert modularity(cycle(4), [0, 0, 1, 1]).q == pytest.approx(0.0, abs=1e-15)


def test_gamma_scales_tax_only():
    a = modularity(two_triangles(), [0, 0, 0, 1, 1, 1], gamma=2.0)
    assert a.q == pytest.approx(6 / 7 - 1.0)


def test_edgeless_graph_raises():
    with pytest.raises(GraphError, match="undefined modularity"):
        modularity(Graph(3), [0, 1, 2])


def test_regular_form_examples():
    assert modularity_regular_form(cycle(4), [0, 0, 1, 1]) == pytest.approx(0.0, abs=1e-15)
    assert modularity_regular_form(complete_graph(4), [0, 0, 1, 1]) == pytest.approx(-1 / 6)
    with pytest.raises(GraphError):
        modularity_regular_form(path(3), [0, 0, 1])


def test_restricted_growth_strings_are_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    for n, b in enumerate(bell):
        rows = restricted_growth_strings(n)
        assert rows.shape[0] == b
        # no two rows describe the same set partition
        assert len({tuple(Partition(r).labels) for r in rows}) == b


def test_exact_modularity_examples():
    q, _ = exact_modularity(Graph(2, [(0, 1)]))
    assert q == pytest.approx(0.0, abs=1e-15)
    q, best = exact_modularity(two_triangles(bridge=False))
    assert q == pytest.approx(0.5)
    assert best == Partition([0, 0, 0, 1, 1, 1])
    q, _ = exact_modularity(complete_graph(3))
    assert q == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(GraphError, match="oracle limit"):
        exact_modularity(cycle(13))


def test_exact_modularity_bridge_triangles():
    q, best = exact_modularity(two_triangles())
    assert q == pytest.approx(5 / 14)
    assert best == Partition([0, 0, 0, 1, 1, 1])


def test_isoperimetric_examples():
    assert isoperimetric_number(complete_graph(4)) == pytest.approx(2.0)
    assert isoperimetric_number(path(4)) == pytest.approx(0.5)
    assert isoperimetric_number(two_triangles(bridge=False)) == 0.0
    assert isoperimetric_number(cycle(10)) == pytest.approx(2 / 5)
    with pytest.raises(GraphError):
        isoperimetric_number(cycle(25))


def test_edge_counts_examples():
    g = complete_graph(3)
    assert edge_counts(g, [0, 1]) == (1, 2)
    assert edge_counts(Graph(2, [(0, 1)]), [0]) == (0, 1)
    assert edge_counts(g, range(3)) == (3, 0)
    loops = Graph(2, [(0, 0), (0, 1)])
    assert edge_counts(loops, [0]) == (1, 1)


@pytest.mark.parametrize("g, lam", [
    (complete_graph(4), 1.0),
    (cycle(6), 2.0),
    (cycle(5), 2 * math.cos(math.pi / 5) * 1.0),  # |2cos(4pi/5)|
    (complete_graph(6), 1.0),
])
def test_second_eigenvalue_closed_forms(g, lam):
    s = second_eigenvalue(g, tol=1e-12, seed=0)
    assert s.lambda_ == pytest.approx(lam, abs=1e-6)
    assert s.lambda1 == pytest.approx(g.is_regular())


def test_second_eigenvalue_matches_dense_solver():
    g = random_regular_graph(200, 4, seed=3)
    ev = np.linalg.eigvalsh(g.adjacency_matrix().toarray())
    s = second_eigenvalue(g, tol=1e-10, seed=1)
    assert s.lambda_ == pytest.approx(max(abs(ev[0]), abs(ev[-2])), abs=1e-7)


def test_second_eigenvalue_errors():
    with pytest.raises(GraphError):
        second_eigenvalue(path(4))
    g = random_regular_graph(300, 3, seed=0)
    with pytest.raises(ConvergenceError) as exc:
        second_eigenvalue(g, tol=1e-14, max_iter=3, seed=0)
    assert exc.value.residual > 0


def test_expansion_inequality_k4_and_random():
    ok, witness = check_expansion_inequality(complete_graph(4), 1.0, trials=200, seed=0)
    assert ok and witness is None
    g = random_regular_graph(500, 3, seed=1)
    lam = second_eigenvalue(g, seed=1).lambda_
    assert check_expansion_inequality(g, lam, trials=1000, seed=2)[0]


def test_expansion_inequality_reports_witness():
    # lambda far too small for a disconnected graph: a component is a violating cut
    g = Graph(8, [(i, (i + 1) % 4) for i in range(4)] + [(4 + i, 4 + (i + 1) % 4) for i in range(4)])
    ok, witness = check_expansion_inequality(g, 0.0, trials=500, seed=0)
    assert not ok
    assert witness is not None and 1 <= witness.size <= 4


def _small_graphs():
    return st.integers(2, 7).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1, max_size=14),
        st.lists(st.integers(0, 3), min_size=n, max_size=n)))


@settings(max_examples=150, deadline=None)
@given(_small_graphs())
def test_modularity_matches_pairwise_oracle(data):
    n, edges, labels = data
    g = Graph(n, edges)
    br = modularity(g, labels)
    assert br.q == pytest.approx(brute_force_q(g, labels), abs=1e-12)
    assert 0.0 <= br.edge_contribution <= 1.0
    assert 0.0 < br.degree_tax <= 1.0
    assert br.q <= 1.0


@settings(max_examples=60, deadline=None)
@given(_small_graphs())
def test_exact_modularity_dominates(data):
    n, edges, labels = data
    g = Graph(n, edges)
    q, best = exact_modularity(g)
    assert modularity(g, labels).q <= q + 1e-12
    assert modularity(g, best).q == pytest.approx(q, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(_small_graphs(), st.data())
def test_edge_count_handshake(data, draw):
    n, edges, _ = data
    g = Graph(n, edges)
    S = draw.draw(st.lists(st.integers(0, n - 1), unique=True))
    inside, boundary = edge_counts(g, S)
    assert 2 * inside + boundary == int(g.degrees()[S].sum())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_regular_form_identity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 11))
    d = int(rng.choice([d for d in range(1, 5) if d * n % 2 == 0]))
    g = gen_pairing(RegularParams(n=n, d=d, seed=seed))
    labels = rng.integers(0, 3, size=n)
    assert modularity_regular_form(g, labels) == pytest.approx(modularity(g, labels).q, abs=1e-12)
