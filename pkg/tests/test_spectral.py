import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spechom.connectivity import classical_edge_connectivity
from spechom.errors import ValidationError
from spechom.graph import Graph, connected_components, gen_graph, volume
from spechom.spectral import (
    algebraic_connectivity,
    cheeger_lower_bound,
    eigenvalues_symmetric,
    graph_laplacian,
    laplacian_spectrum,
)


def jacobi_eigenvalues(a, sweeps=100, tol=1e-14):
    """Cyclic Jacobi rotations; independent of LAPACK."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    for _ in range(sweeps):
        off = math.sqrt(sum(a[i, j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return sorted(np.diag(a))


def nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_laplacian_examples():
    assert graph_laplacian(gen_graph("complete:n=2")).tolist() == [[1, -1], [-1, 1]]
    L3 = graph_laplacian(gen_graph("complete:n=3"))
    assert np.array_equal(L3, 3 * np.eye(3) - np.ones((3, 3)))
    assert not graph_laplacian(gen_graph("edgeless:n=3")).any()


def test_identity_spectrum():
    assert eigenvalues_symmetric(np.eye(3)).values == pytest.approx((1, 1, 1), abs=1e-12)


def test_k2_spectrum():
    # roots of x^2 - 2x
    vals = eigenvalues_symmetric(graph_laplacian(gen_graph("complete:n=2"))).values
    assert vals == pytest.approx((0, 2), abs=1e-12)


def test_k3_spectrum():
    vals = eigenvalues_symmetric(graph_laplacian(gen_graph("complete:n=3"))).values
    assert vals == pytest.approx((0, 3, 3), abs=1e-12)


def test_eigen_rejects_bad_input():
    with pytest.raises(ValidationError):
        eigenvalues_symmetric(np.zeros((0, 0)))
    with pytest.raises(ValidationError):
        eigenvalues_symmetric(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_spectrum_matches_jacobi_oracle():
    rng = np.random.default_rng(3)
    for dim in (1, 2, 5, 9, 14):
        a = rng.normal(size=(dim, dim))
        a = a + a.T
        ours = eigenvalues_symmetric(a).values
        ref = jacobi_eigenvalues(a)
        for x, y in zip(ours, ref):
            assert abs(x - y) <= 1e-9 * max(1.0, abs(y))


def test_spectrum_permutation_invariant():
    rng = np.random.default_rng(5)
    a = rng.integers(-3, 4, size=(10, 10)).astype(float)
    a = a + a.T
    perm = rng.permutation(10)
    b = a[np.ix_(perm, perm)]
    assert eigenvalues_symmetric(a).values == pytest.approx(eigenvalues_symmetric(b).values, abs=1e-9)


@pytest.mark.parametrize("text,expected", [
    ("complete:n=4", 4.0),
    ("cycle:n=4", 2.0),
])
def test_algebraic_connectivity_examples(text, expected):
    assert algebraic_connectivity(gen_graph(text)) == pytest.approx(expected, abs=1e-9)


def test_disconnected_lambda2_is_zero():
    assert algebraic_connectivity(Graph(3, ((0, 1),))) == 0.0


def test_lambda2_needs_two_vertices():
    with pytest.raises(ValidationError):
        algebraic_connectivity(gen_graph("edgeless:n=1"))


def test_cheeger_examples():
    assert cheeger_lower_bound(gen_graph("complete:n=4")) == pytest.approx(2.0)
    assert classical_edge_connectivity(gen_graph("complete:n=4")) == 3
    assert cheeger_lower_bound(gen_graph("cycle:n=4")) == pytest.approx(1.0)
    assert classical_edge_connectivity(gen_graph("cycle:n=4")) == 2
    assert cheeger_lower_bound(Graph(4, ((0, 1), (2, 3)))) == 0.0


def random_graphs(count, seed=0, max_n=20):
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(2, max_n + 1))
        p = float(rng.uniform(0.05, 0.8))
        yield gen_graph(f"er:n={n},p={p},seed={i + 1000 * seed}")


def test_laplacian_structure():
    for g in random_graphs(40, seed=1):
        L = graph_laplacian(g)
        assert np.array_equal(L, L.T)
        assert not L.sum(axis=1).any()
        assert np.trace(L) == volume(g)
        spec = laplacian_spectrum(g)
        assert spec.values[0] >= -1e-9
        assert sum(spec.values) == pytest.approx(np.trace(L), rel=1e-8, abs=1e-8)


def test_kernel_dimension_counts_components():
    for g in random_graphs(60, seed=2):
        assert laplacian_spectrum(g).kernel_dim() == len(connected_components(g))


def test_lambda2_matches_networkx():
    for g in random_graphs(20, seed=3, max_n=15):
        ref = float(np.sort(np.linalg.eigvalsh(nx.laplacian_matrix(nx_graph(g)).toarray()))[1])
        assert algebraic_connectivity(g) == pytest.approx(ref, abs=1e-9)


def test_cheeger_on_connected_er():
    checked = 0
    for g in random_graphs(300, seed=4, max_n=30):
        if len(connected_components(g)) != 1:
            continue
        assert cheeger_lower_bound(g) <= classical_edge_connectivity(g) + 1e-9
        checked += 1
        if checked == 100:
            break
    assert checked == 100


@given(st.integers(3, 12), st.randoms())
@settings(max_examples=30, deadline=None)
def test_lambda2_relabel_invariant(n, rnd):
    g = gen_graph(f"er:n={n},p=0.5,seed={rnd.randrange(1000)}")
    perm = list(range(n))
    rnd.shuffle(perm)
    assert algebraic_connectivity(g.relabel(perm)) == pytest.approx(algebraic_connectivity(g), abs=1e-9)
