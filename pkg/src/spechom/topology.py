"""Clique complexes, boundary operators, Betti numbers and Hodge Laplacians.

Orientation comes from the global vertex order: every simplex is a strictly
increasing vertex tuple and the face obtained by deleting position ``i``
carries sign ``(-1)**i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ParseError, ResourceError, ValidationError
from .graph import Graph, connected_components
from .spectral import KERNEL_TOL, Spectrum, eigenvalues_symmetric

Simplex = tuple[int, ...]

MAX_SIMPLICES_PER_DIM = 2_000_000
DEFAULT_MAX_DIM = 3


@dataclass(frozen=True)
class SimplicialComplex:
    """Face-closed complex stored as one sorted simplex list per dimension."""

    max_dim: int
    simplices: tuple[tuple[Simplex, ...], ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.max_dim < 0:
            raise ValidationError("max_dim must be >= 0")
        if len(self.simplices) != self.max_dim + 1:
            raise ValidationError("need one simplex list per dimension 0..max_dim")
        for k, layer in enumerate(self.simplices):
            for s in layer:
                if len(s) != k + 1 or any(a >= b for a, b in zip(s, s[1:])):
                    raise ValidationError(f"bad {k}-simplex {s}")
            if len(set(layer)) != len(layer):
                raise ValidationError(f"repeated {k}-simplex")

    @cached_property
    def index(self) -> tuple[dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(layer)} for layer in self.simplices)

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= self.max_dim else 0

    @property
    def counts(self) -> list[int]:
        return [len(layer) for layer in self.simplices]

    @property
    def n_vertices(self) -> int:
        return len(self.simplices[0])

    def is_face_closed(self) -> bool:
        for k in range(1, self.max_dim + 1):
            below = self.index[k - 1]
            for s in self.simplices[k]:
                if any(f not in below for f in combinations(s, k)):
                    return False
        return True

    def skeleton_graph(self) -> Graph:
        """The 1-skeleton as a graph (vertices must be ``0..n-1``)."""
        verts = [s[0] for s in self.simplices[0]]
        if verts != list(range(len(verts))):
            raise ValidationError("vertex set must be 0..n-1 to form a graph")
        edges = self.simplices[1] if self.max_dim >= 1 else ()
        return Graph(len(verts), tuple(edges), self.labels)


def _maximal_cliques(adj: Sequence[frozenset[int]]) -> Iterable[list[int]]:
    """Bron-Kerbosch with Tomita pivoting, iterative."""
    stack = [([], set(range(len(adj))), set())]
    while stack:
        R, P, X = stack.pop()
        if not P:
            if not X:
                yield R
            continue
        pivot = max(P | X, key=lambda u: len(P & adj[u]))
        for v in sorted(P - adj[pivot], reverse=True):
            stack.append((R + [v], P & adj[v], X & adj[v]))
            P = P - {v}
            X = X | {v}


def clique_complex(g: Graph, max_dim: int = DEFAULT_MAX_DIM) -> SimplicialComplex:
    """Flag complex of ``g``: k-simplices are the (k+1)-cliques, k <= max_dim."""
    if max_dim < 0:
        raise ValidationError("max_dim must be >= 0")
    layers: list[set[Simplex]] = [set() for _ in range(max_dim + 1)]
    for clique in _maximal_cliques(g.adjacency):
        clique.sort()
        for k in range(min(len(clique), max_dim + 1)):
            layers[k].update(combinations(clique, k + 1))
            if len(layers[k]) > MAX_SIMPLICES_PER_DIM:
                raise ResourceError(
                    f"clique complex has more than {MAX_SIMPLICES_PER_DIM} simplices in dimension {k}"
                )
    return SimplicialComplex(max_dim, tuple(tuple(sorted(layer)) for layer in layers), g.labels)


def complex_from_facets(facets: Iterable[Sequence[int]], max_dim: Optional[int] = None,
                        labels=None) -> SimplicialComplex:
    """Downward closure of ``facets`` (vertex index tuples)."""
    facets = [tuple(sorted(set(f))) for f in facets]
    top = max((len(f) - 1 for f in facets), default=0)
    if max_dim is None:
        max_dim = top
    layers: list[set[Simplex]] = [set() for _ in range(max_dim + 1)]
    for f in facets:
        for k in range(min(len(f), max_dim + 1)):
            layers[k].update(combinations(f, k + 1))
    return SimplicialComplex(max_dim, tuple(tuple(sorted(layer)) for layer in layers), labels)


def load_facet_list(text: str, max_dim: Optional[int] = None) -> SimplicialComplex:
    """Parse one facet per line (space-separated vertex labels, ``#`` comments)."""
    index: dict[str, int] = {}
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(set(tokens)) != len(tokens):
            raise ParseError(f"line {lineno}: repeated vertex in facet")
        for tok in tokens:
            index.setdefault(tok, len(index))
        facets.append([index[t] for t in tokens])
    labels = tuple(sorted(index, key=index.__getitem__))
    return complex_from_facets(facets, max_dim, labels)


def read_facet_list(path, max_dim: Optional[int] = None) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return load_facet_list(fh.read(), max_dim)


# --- boundary operators and exact ranks ------------------------------------

def boundary_matrix(c: SimplicialComplex, k: int) -> np.ndarray:
    """Integer matrix of the boundary map from k-chains to (k-1)-chains."""
    if not 1 <= k <= c.max_dim:
        raise ValidationError(f"boundary dimension k={k} outside 1..{c.max_dim}")
    rows = c.index[k - 1]
    B = np.zeros((c.count(k - 1), c.count(k)), dtype=np.int64)
    for j, s in enumerate(c.simplices[k]):
        for i in range(k + 1):
            B[rows[s[:i] + s[i + 1:]], j] = -1 if i % 2 else 1
    return B


def matrix_rank_exact(m) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows = [[int(x) for x in row] for row in np.asarray(m, dtype=object).tolist()]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            a = row[col]
            if a:
                rows[r] = [(p * x - a * y) // prev for x, y in zip(row, prow)]
            elif p != prev:
                rows[r] = [(p * x) // prev for x in row]
        prev = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def matrix_rank_gf2(m) -> int:
    """Rank over GF(2); a fast path that never exceeds the rational rank.

    The two disagree when the integer homology has 2-torsion, so Betti numbers
    always use :func:`matrix_rank_exact`.
    """
    basis: dict[int, int] = {}
    for row in np.asarray(m).tolist():
        v = 0
        for j, x in enumerate(row):
            if x % 2:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


@dataclass(frozen=True)
class BettiProfile:
    betti: tuple[int, ...]
    ranks: tuple[int, ...]  # ranks[k] = rank of boundary_k; ranks[0] = 0
    counts: tuple[int, ...]

    def euler_from_counts(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts))

    def euler_from_betti(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def __getitem__(self, k: int) -> int:
        return self.betti[k]


def betti_numbers(c: SimplicialComplex) -> BettiProfile:
    K = c.max_dim
    ranks = [0] + [matrix_rank_exact(boundary_matrix(c, k)) for k in range(1, K + 1)] + [0]
    counts = c.counts
    betti = tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(K + 1))
    return BettiProfile(betti, tuple(ranks[:K + 1]), tuple(counts))


# --- Hodge Laplacians --------------------------------------------------------

def hodge_laplacian(c: SimplicialComplex, k: int) -> np.ndarray:
    """``B_k^T B_k + B_{k+1} B_{k+1}^T`` on k-chains, assembled in integers."""
    if not 0 <= k <= c.max_dim:
        raise ValidationError(f"Hodge Laplacian dimension k={k} outside 0..{c.max_dim}")
    nk = c.count(k)
    L = np.zeros((nk, nk), dtype=np.int64)
    if k >= 1:
        down = boundary_matrix(c, k)
        L += down.T @ down
    if k + 1 <= c.max_dim:
        up = boundary_matrix(c, k + 1)
        L += up @ up.T
    return L.astype(float)


def hodge_spectrum(c: SimplicialComplex, k: int, kernel_tol: float = KERNEL_TOL) -> Spectrum:
    L = hodge_laplacian(c, k)
    if L.shape[0] == 0:
        return Spectrum((), kernel_tol)
    return eigenvalues_symmetric(L, kernel_tol)


L2K_MODES = ("second_smallest", "smallest_nonzero")


def lambda2_k(c: SimplicialComplex, k: int, mode: str = "second_smallest",
              kernel_tol: float = KERNEL_TOL) -> float:
    """Second-eigenvalue summary of the k-th Hodge Laplacian.

    ``second_smallest`` takes the sorted eigenvalue at index 1 (so it is 0 when
    the kernel has dimension >= 2); ``smallest_nonzero`` takes the least
    eigenvalue above ``kernel_tol``. Both give 0 when there are fewer than two
    k-simplices.
    """
    if mode not in L2K_MODES:
        raise ValidationError(f"unknown lambda2_k mode {mode!r}")
    if not 0 <= k <= c.max_dim:
        raise ValidationError(f"dimension k={k} outside 0..{c.max_dim}")
    if c.count(k) <= 1:
        return 0.0
    spec = hodge_spectrum(c, k, kernel_tol)
    return spec.second_smallest() if mode == "second_smallest" else spec.smallest_nonzero()


def component_count(c: SimplicialComplex) -> int:
    """Number of components of the 1-skeleton (no linear algebra)."""
    return len(connected_components(c.skeleton_graph()))
