"""Deterministic small-graph corpus used by the oracle check and the tests."""

from __future__ import annotations

from .graph import Graph, gen_graph
from .topology import SimplicialComplex, load_facet_list

OCTAHEDRON_FACETS = """\
# boundary of the octahedron K_{2,2,2}: antipodal pairs (a0,a1) (b0,b1) (c0,c1)
a0 b0 c0
a0 b0 c1
a0 b1 c0
a0 b1 c1
a1 b0 c0
a1 b0 c1
a1 b1 c0
a1 b1 c1
"""


def octahedron_complex() -> SimplicialComplex:
    return load_facet_list(OCTAHEDRON_FACETS)


def small_corpus(max_n: int = 8, max_edges: int = 20) -> list[tuple[str, Graph]]:
    """Named graphs from every family with ``n <= max_n`` and at most
    ``max_edges`` edges, in a fixed order."""
    specs = []
    for n in range(2, max_n + 1):
        specs += [f"complete:n={n}", f"path:n={n}", f"edgeless:n={n}"]
        if n >= 3:
            specs.append(f"cycle:n={n}")
    for n in range(4, max_n + 1):
        for p in (0.3, 0.5, 0.7):
            specs += [f"er:n={n},p={p},seed={s}" for s in range(3)]
    for n, d in ((6, 3), (8, 3), (8, 4), (7, 2), (6, 4)):
        specs += [f"rr:n={n},d={d},seed={s}" for s in range(2)]
    for n, k, beta in ((8, 4, 0.2), (7, 2, 0.5), (8, 2, 0.3)):
        specs += [f"ws:n={n},k={k},beta={beta},seed={s}" for s in range(2)]
    out = []
    seen = set()
    for s in specs:
        g = gen_graph(s)
        if g.m > max_edges or s in seen:
            continue
        seen.add(s)
        out.append((s, g))
    return out
