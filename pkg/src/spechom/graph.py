"""Undirected simple graphs, edge-list ingestion and seeded generators."""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .errors import ParseError, ValidationError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``edges`` is stored canonically: ``(min, max)`` pairs in lexicographic
    order. ``labels`` holds the original vertex labels (index -> label) when
    the graph came from a file.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"vertex count must be nonnegative, got {self.n}")
        canon = []
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={self.n}")
            canon.append((min(u, v), max(u, v)))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValidationError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValidationError("labels must cover every vertex")
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValidationError("relabel needs a permutation of 0..n-1")
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        return Graph(self.n, tuple(e for e in self.edges if e not in drop))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph(
            self.n + other.n,
            self.edges + tuple((u + shift, v + shift) for u, v in other.edges),
        )


def load_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse whitespace-separated vertex pairs, one edge per line.

    Lines starting with ``#`` and blank lines are skipped. Labels are mapped to
    dense indices in order of first appearance.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    index: dict[str, int] = {}
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected 2 vertex tokens, got {len(tokens)}")
        a, b = tokens
        if a == b:
            raise ValidationError(f"line {lineno}: self-loop on {a!r}")
        for tok in (a, b):
            if tok not in index:
                index[tok] = len(index)
        u, v = index[a], index[b]
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValidationError(f"line {lineno}: duplicate edge {a} {b}")
        seen.add(key)
        edges.append(key)
    labels = tuple(sorted(index, key=index.__getitem__))
    return Graph(len(index), tuple(edges), labels)


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh.read())


# --- generators -----------------------------------------------------------

@dataclass(frozen=True)
class GraphSpec:
    """A graph family plus its parameters and seed.

    ``params`` is a tuple of ``(name, value)`` pairs so the spec stays hashable.
    """

    family: str
    params: tuple[tuple[str, float], ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown graph family {self.family!r}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        required = FAMILIES[self.family]
        got = dict(self.params)
        missing = [p for p in required if p not in got]
        extra = [p for p in got if p not in required]
        if missing or extra:
            raise ValidationError(
                f"{self.family} takes parameters {required}; missing {missing}, unexpected {extra}"
            )
        object.__setattr__(self, "params", tuple((p, got[p]) for p in required))
        _validate_params(self.family, dict(self.params))

    def __getitem__(self, name: str):
        return dict(self.params)[name]

    @property
    def is_random(self) -> bool:
        return self.family in RANDOM_FAMILIES

    def with_params(self, **changes) -> "GraphSpec":
        params = dict(self.params)
        seed = changes.pop("seed", self.seed)
        params.update(changes)
        return GraphSpec(self.family, tuple(params.items()), seed)

    def to_string(self) -> str:
        parts = [f"{k}={_fmt_param(v)}" for k, v in self.params]
        if self.is_random:
            parts.append(f"seed={self.seed}")
        return f"{ALIASES_REV[self.family]}:{','.join(parts)}"


FAMILIES: dict[str, tuple[str, ...]] = {
    "complete": ("n",),
    "cycle": ("n",),
    "path": ("n",),
    "edgeless": ("n",),
    "erdos_renyi": ("n", "p"),
    "random_regular": ("n", "d"),
    "watts_strogatz": ("n", "k", "beta"),
}
RANDOM_FAMILIES = frozenset({"erdos_renyi", "random_regular", "watts_strogatz"})
ALIASES = {"er": "erdos_renyi", "rr": "random_regular", "ws": "watts_strogatz"}
ALIASES_REV = {f: f for f in FAMILIES} | {v: k for k, v in ALIASES.items()}
_INT_PARAMS = {"n", "d", "k"}


def _fmt_param(v) -> str:
    return str(v) if isinstance(v, int) else repr(float(v))


def _validate_params(family: str, p: dict) -> None:
    for name in _INT_PARAMS & p.keys():
        if int(p[name]) != p[name] or p[name] < 0:
            raise ValidationError(f"{family}: {name} must be a nonnegative integer")
    n = int(p["n"])
    if family == "cycle" and n < 3:
        raise ValidationError("cycle needs n >= 3")
    if family == "erdos_renyi" and not 0.0 <= p["p"] <= 1.0:
        raise ValidationError(f"erdos_renyi: p must lie in [0, 1], got {p['p']}")
    if family == "random_regular":
        d = int(p["d"])
        if (n * d) % 2:
            raise ValidationError(f"random_regular: n*d must be even (n={n}, d={d})")
        if d >= n and n > 0:
            raise ValidationError(f"random_regular: need d < n (n={n}, d={d})")
    if family == "watts_strogatz":
        k = int(p["k"])
        if k % 2 or k >= n:
            raise ValidationError(f"watts_strogatz: k must be even and < n (n={n}, k={k})")
        if not 0.0 <= p["beta"] <= 1.0:
            raise ValidationError("watts_strogatz: beta must lie in [0, 1]")


def parse_graph_spec(text: str) -> GraphSpec:
    """Parse ``"er:n=100,p=0.05,seed=7"`` style strings."""
    name, _, rest = text.strip().partition(":")
    family = ALIASES.get(name, name)
    if family not in FAMILIES:
        raise ValidationError(f"unknown graph family {name!r}")
    params: dict[str, float] = {}
    seed = 0
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValidationError(f"malformed parameter {item!r} in {text!r}")
        try:
            if key == "seed":
                seed = int(val)
            elif key in _INT_PARAMS:
                params[key] = int(val)
            else:
                params[key] = float(val)
        except ValueError:
            raise ValidationError(f"bad value for {key}: {val!r}") from None
    return GraphSpec(family, tuple(params.items()), seed)


def family_rng(family: str, seed: int) -> np.random.Generator:
    """PCG64 stream keyed by (seed, family) so families never share draws."""
    tag = zlib.crc32(family.encode())
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, tag])))


def gen_graph(spec: GraphSpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_graph_spec(spec)
    p = dict(spec.params)
    n = int(p["n"])
    fam = spec.family
    if fam == "complete":
        return Graph(n, tuple(combinations(range(n), 2)))
    if fam == "cycle":
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if fam == "path":
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if fam == "edgeless":
        return Graph(n, ())
    rng = family_rng(fam, spec.seed)
    if fam == "erdos_renyi":
        pairs = list(combinations(range(n), 2))
        draws = rng.random(len(pairs))
        return Graph(n, tuple(e for e, x in zip(pairs, draws) if x < p["p"]))
    if fam == "random_regular":
        return _random_regular(n, int(p["d"]), rng)
    return _watts_strogatz(n, int(p["k"]), p["beta"], rng)


def _random_regular(n: int, d: int, rng: np.random.Generator, max_tries: int = 1000) -> Graph:
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        edges = set()
        for u, v in pairs.tolist():
            e = (min(u, v), max(u, v))
            if u == v or e in edges:
                break
            edges.add(e)
        else:
            return Graph(n, tuple(edges))
    raise ValidationError(f"random_regular(n={n}, d={d}): no simple pairing in {max_tries} tries")


def _watts_strogatz(n: int, k: int, beta: float, rng: np.random.Generator) -> Graph:
    adj: list[set[int]] = [set() for _ in range(n)]
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    # rewire lattice edges (u, u+j) in a fixed order
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adj[u] or rng.random() >= beta:
                continue
            if len(adj[u]) >= n - 1:
                continue
            w = int(rng.integers(n))
            while w == u or w in adj[u]:
                w = int(rng.integers(n))
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    return Graph(n, tuple((u, v) for u in range(n) for v in adj[u] if u < v))


# --- basic structure --------------------------------------------------------

def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    adj = g.adjacency
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    comp.append(w)
        comps.append(sorted(comp))
    return comps


def volume(g: Graph) -> int:
    """Sum of vertex degrees (twice the edge count)."""
    return sum(g.degrees())


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1
