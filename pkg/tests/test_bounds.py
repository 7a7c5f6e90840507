import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spechom.bounds import (
    PROOF,
    STATEMENT,
    TightnessConfig,
    random_graph_prediction,
    spectral_terms,
    theorem34_bound,
    tightness_report,
)
from spechom.connectivity import COMPONENT_COUNT, CUT_MODES, SIZE_BOUNDED
from spechom.errors import ValidationError
from spechom.graph import Graph, gen_graph
from spechom.topology import clique_complex


def report(text, k, variant, **kw):
    g = gen_graph(text)
    return theorem34_bound(g, clique_complex(g, 3), k, variant, **kw)


def test_triangle_statement_variant():
    # lambda2 = 3, beta_1 = 0, lambda2^(1) = 3, vol = 6: bound = 0 + 3 * 6 / 2
    r = report("complete:n=3", 2, STATEMENT)
    assert (r.lambda2, r.beta_km1, r.lambda2_km1, r.vol) == (pytest.approx(3), 0, pytest.approx(3), 6)
    assert r.term1 == 0.0
    assert r.bound == pytest.approx(9.0, abs=1e-9)
    assert r.actual[SIZE_BOUNDED].size == 3
    assert r.violated[SIZE_BOUNDED] is True


def test_cycle_proof_variant():
    # lambda2 = 2, beta_1 = beta_0 = 1: term1 = 2; lambda2^(1) = 2, vol = 8: term2 = 2 * 8 / 4
    r = report("cycle:n=4", 2, PROOF)
    assert r.term1 == pytest.approx(2.0, abs=1e-9)
    assert r.term2 == pytest.approx(4.0, abs=1e-9)
    assert r.bound == pytest.approx(6.0, abs=1e-9)
    assert r.actual[SIZE_BOUNDED].size == 4
    assert r.violated[SIZE_BOUNDED] is True


def test_zero_betti_kills_term1():
    r = report("complete:n=5", 3, STATEMENT)
    assert r.beta_km1 == 0
    assert r.term1 == 0.0
    assert r.bound == r.term2


def test_no_simplices_gives_zero_bound():
    r = report("cycle:n=4", 3, STATEMENT, cut_modes=CUT_MODES)
    assert r.beta_km1 == 0 and r.lambda2_km1 == 0.0
    assert r.bound == 0.0
    assert r.violated == {SIZE_BOUNDED: False, COMPONENT_COUNT: False}


def test_complex_too_shallow():
    g = gen_graph("complete:n=4")
    with pytest.raises(ValidationError, match="max_dim=3"):
        theorem34_bound(g, clique_complex(g, 2), 4)


def test_bad_k_and_variant():
    g = gen_graph("complete:n=4")
    c = clique_complex(g, 3)
    with pytest.raises(ValidationError):
        theorem34_bound(g, c, 1)
    with pytest.raises(ValidationError):
        theorem34_bound(g, c, 2, "sharpened")


@given(st.floats(0, 1e6, allow_nan=False), st.integers(0, 10**6), st.integers(2, 50))
def test_statement_is_k_times_proof(lam, vol, k):
    terms = spectral_terms(lam, vol, k)
    assert terms[STATEMENT] == k * terms[PROOF]


def test_bound_nonnegative(corpus):
    cfg = TightnessConfig(variants=(STATEMENT, PROOF),
                          l2k_modes=("second_smallest", "smallest_nonzero"))
    table = tightness_report(((n, g, [2, 3]) for n, g in corpus[::6] if g.n >= 3), cfg)
    assert table.rows
    assert all(r["bound"] >= 0 for r in table.rows)


def test_isolated_vertex_kills_term1():
    checked = 0
    for text in ("complete:n=4", "cycle:n=5", "er:n=8,p=0.6,seed=1", "rr:n=8,d=3,seed=1",
                 "ws:n=8,k=4,beta=0.2,seed=0", "complete:n=6", "cycle:n=8",
                 "er:n=7,p=0.8,seed=4", "rr:n=6,d=4,seed=2", "path:n=5"):
        g = gen_graph(text)
        h = g.disjoint_union(Graph(1, ()))
        r = theorem34_bound(h, clique_complex(h, 3), 2, cut_modes=())
        assert r.lambda2 == 0.0
        assert r.term1 == 0.0
        checked += 1
    assert checked == 10


# --- random-graph prediction -----------------------------------------------------------------

def test_prediction_examples():
    assert random_graph_prediction(100, 0.05, 1) == pytest.approx(5.0)
    assert random_graph_prediction(100, 0.05, 0) == pytest.approx(5.0)
    assert random_graph_prediction(30, 0.2, 0) == pytest.approx(6.0)
    assert random_graph_prediction(100, 0.05, 4) == pytest.approx(1.25)
    assert random_graph_prediction(50, 0.0, 3) == 0.0


def test_prediction_rejects_bad_input():
    with pytest.raises(ValidationError):
        random_graph_prediction(0, 0.5, 1)
    with pytest.raises(ValidationError):
        random_graph_prediction(10, 1.5, 1)


@given(st.integers(1, 500), st.floats(0, 1), st.floats(0, 1), st.integers(0, 50), st.integers(0, 50))
def test_prediction_monotone(n, p1, p2, b1, b2):
    lo, hi = sorted((p1, p2))
    assert random_graph_prediction(n, lo, b1) <= random_graph_prediction(n, hi, b1)
    blo, bhi = sorted((b1, b2))
    assert random_graph_prediction(n, p1, bhi) <= random_graph_prediction(n, p1, blo)


# --- tightness tables ---------------------------------------------------------------------------

def test_tightness_shape():
    corpus = [(t, gen_graph(t), [2, 3]) for t in ("complete:n=3", "cycle:n=4", "complete:n=4")]
    table = tightness_report(corpus)
    assert len(table.rows) == 6
    assert 0.0 <= table.violation_fraction <= 1.0
    keys = [(r["graph"], r["k"]) for r in table.rows]
    assert keys == sorted(keys)


def test_tightness_variants_differ_by_k():
    g = gen_graph("er:n=12,p=0.3,seed=5")
    cfg = TightnessConfig(variants=(STATEMENT, PROOF))
    rows = tightness_report([("g", g, [3])], cfg).rows
    by_variant = {r["variant"]: r for r in rows}
    st_row, pf_row = by_variant[STATEMENT], by_variant[PROOF]
    assert st_row["term1"] == pf_row["term1"]
    assert st_row["term2"] == 3 * pf_row["term2"]


def test_tightness_is_deterministic():
    corpus = [(t, gen_graph(t), [2, 3]) for t in ("er:n=9,p=0.4,seed=1", "cycle:n=6")]
    cfg = TightnessConfig(variants=(STATEMENT, PROOF), cut_modes=CUT_MODES)
    assert tightness_report(corpus, cfg).rows == tightness_report(list(reversed(corpus)), cfg).rows


def test_ratio_none_when_bound_zero():
    rows = tightness_report([("c4", gen_graph("cycle:n=4"), [3])]).rows
    assert rows[0]["bound"] == 0.0 and rows[0]["ratio"] is None
    assert rows[0]["violated"] is False


def test_unknown_config_values():
    with pytest.raises(ValidationError):
        TightnessConfig(variants=("nope",))
    with pytest.raises(ValidationError):
        TightnessConfig(cut_modes=("nope",))
