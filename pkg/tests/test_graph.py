import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spechom.errors import ParseError, ValidationError
from spechom.graph import (
    Graph,
    GraphSpec,
    connected_components,
    gen_graph,
    load_edge_list,
    parse_graph_spec,
    volume,
)


def union_find_components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return sorted(sorted(g) for g in groups.values())


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, tuple(chosen))


# --- load_edge_list -----------------------------------------------------------

def test_load_numeric_pairs():
    g = load_edge_list("0 1\n1 2\n")
    assert g.n == 3
    assert g.edges == ((0, 1), (1, 2))


def test_load_labels_and_comments():
    g = load_edge_list("# comment\na b\n")
    assert g.n == 2 and g.edges == ((0, 1),)
    assert g.labels == ("a", "b")


def test_labels_first_appearance_order():
    g = load_edge_list("\nz y\n\ny x\n")
    assert g.labels == ("z", "y", "x")
    assert g.edges == ((0, 1), (1, 2))


def test_self_loop_rejected():
    with pytest.raises(ValidationError, match="self-loop"):
        load_edge_list("0 0\n")


def test_duplicate_edge_rejected():
    with pytest.raises(ValidationError, match="line 2: duplicate"):
        load_edge_list("0 1\n1 0\n")


@pytest.mark.parametrize("text", ["0 1 2\n", "0\n", "0 1\n3\n"])
def test_malformed_line_reports_line_number(text):
    with pytest.raises(ParseError, match=r"line \d"):
        load_edge_list(text)


def test_graph_invariants_enforced():
    with pytest.raises(ValidationError):
        Graph(2, ((0, 2),))
    with pytest.raises(ValidationError):
        Graph(3, ((0, 1), (1, 0)))
    assert Graph(3, ((2, 0), (1, 0))).edges == ((0, 1), (0, 2))


# --- generators ---------------------------------------------------------------

def test_complete_counts():
    g = gen_graph("complete:n=4")
    assert (g.n, g.m) == (4, 6)


def test_er_p_zero():
    g = gen_graph("er:n=10,p=0.0,seed=1")
    assert (g.n, g.m) == (10, 0)


def test_er_p_one_is_complete():
    assert gen_graph("er:n=7,p=1.0,seed=3").edges == gen_graph("complete:n=7").edges


def test_cycle_degrees():
    assert gen_graph("cycle:n=5").degrees() == [2] * 5


def test_path_and_edgeless():
    assert gen_graph("path:n=4").edges == ((0, 1), (1, 2), (2, 3))
    assert gen_graph("edgeless:n=6").m == 0


@pytest.mark.parametrize("n,d", [(10, 3), (8, 4), (12, 4), (6, 0)])
def test_random_regular_degrees(n, d):
    g = gen_graph(f"rr:n={n},d={d},seed=4")
    assert g.degrees() == [d] * n


def test_random_regular_retry_cap():
    # success probability of a simple pairing is ~exp(-(d*d - 1) / 4)
    with pytest.raises(ValidationError, match="1000 tries"):
        gen_graph("rr:n=12,d=5,seed=4")


def test_watts_strogatz_edge_count():
    # rewiring moves edges but never changes how many there are
    for beta in (0.0, 0.3, 1.0):
        g = gen_graph(f"ws:n=20,k=4,beta={beta},seed=2")
        assert g.m == 40
    lattice = gen_graph("ws:n=10,k=4,beta=0.0,seed=9")
    assert lattice.degrees() == [4] * 10


@pytest.mark.parametrize("text", [
    "er:n=30,p=0.2,seed=11", "rr:n=16,d=3,seed=5", "ws:n=25,k=6,beta=0.4,seed=8",
])
def test_generation_is_deterministic(text):
    assert gen_graph(text).edges == gen_graph(text).edges


def test_seeds_change_output():
    assert gen_graph("er:n=30,p=0.3,seed=1").edges != gen_graph("er:n=30,p=0.3,seed=2").edges


def test_families_use_separate_streams():
    # same seed, different families must not share draws; adding a family
    # therefore never perturbs another family's output
    from spechom.graph import family_rng

    a = family_rng("erdos_renyi", 5).random(8)
    b = family_rng("watts_strogatz", 5).random(8)
    assert not (a == b).all()


@pytest.mark.parametrize("text", [
    "rr:n=5,d=3,seed=1",      # odd n*d
    "rr:n=4,d=4,seed=1",      # d >= n
    "er:n=5,p=1.5,seed=1",
    "ws:n=10,k=3,beta=0.1,seed=1",
    "ws:n=4,k=4,beta=0.1,seed=1",
    "complete:n=4,p=0.1",
    "torus:n=4",
    "er:n=5,seed=1",
])
def test_invalid_specs(text):
    with pytest.raises(ValidationError):
        gen_graph(text)


def test_spec_string_round_trip():
    for text in ("er:n=100,p=0.05,seed=7", "complete:n=4", "ws:n=50,k=4,beta=0.1,seed=3"):
        spec = parse_graph_spec(text)
        assert spec.to_string() == text
        assert parse_graph_spec(spec.to_string()) == spec


def test_spec_alias_resolution():
    spec = parse_graph_spec("rr:n=8,d=3,seed=2")
    assert spec.family == "random_regular"
    assert spec == GraphSpec("random_regular", (("n", 8), ("d", 3)), 2)


# --- components and volume ------------------------------------------------------

def test_components_examples():
    assert len(connected_components(gen_graph("cycle:n=5"))) == 1
    assert connected_components(Graph(3, ((0, 1),))) == [[0, 1], [2]]
    assert len(connected_components(gen_graph("edgeless:n=10"))) == 10


def test_components_against_union_find():
    rng = random.Random(1234)
    for _ in range(200):
        n = rng.randint(1, 25)
        p = rng.random() * 0.3
        g = gen_graph(f"er:n={n},p={p},seed={rng.randrange(2**32)}")
        assert sorted(connected_components(g)) == union_find_components(n, g.edges)


def test_volume_examples():
    assert volume(gen_graph("complete:n=3")) == 6
    assert volume(gen_graph("cycle:n=9")) == 18
    assert volume(gen_graph("edgeless:n=7")) == 0


@given(graphs())
def test_volume_is_twice_edges(g):
    assert volume(g) == 2 * g.m


@given(graphs(), st.randoms())
@settings(max_examples=50)
def test_component_count_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert sorted(map(len, connected_components(g))) == sorted(map(len, connected_components(h)))
