"""Graph Laplacians and their spectra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graph import Graph

KERNEL_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of a symmetric matrix."""

    values: tuple[float, ...]
    kernel_tol: float = KERNEL_TOL

    def __len__(self):
        return len(self.values)

    def kernel_dim(self) -> int:
        return sum(1 for x in self.values if abs(x) < self.kernel_tol)

    def second_smallest(self) -> float:
        """Eigenvalue at sorted index 1, clamped to 0 inside the kernel band."""
        if len(self.values) < 2:
            return 0.0
        x = self.values[1]
        return 0.0 if abs(x) < self.kernel_tol else x

    def smallest_nonzero(self) -> float:
        for x in self.values:
            if x > self.kernel_tol:
                return x
        return 0.0


def graph_laplacian(g: Graph) -> np.ndarray:
    """``L = D - A`` as a dense float array."""
    L = np.zeros((g.n, g.n))
    for u, v in g.edges:
        L[u, v] = L[v, u] = -1.0
        L[u, u] += 1.0
        L[v, v] += 1.0
    return L


def eigenvalues_symmetric(m: np.ndarray, kernel_tol: float = KERNEL_TOL) -> Spectrum:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValidationError("cannot take the spectrum of a 0x0 matrix")
    if not np.array_equal(m, m.T):
        raise ValidationError("matrix is not symmetric")
    # LAPACK syevd: Householder tridiagonalization + divide and conquer
    vals = np.linalg.eigvalsh(m)
    return Spectrum(tuple(float(x) for x in np.sort(vals)), kernel_tol)


def laplacian_spectrum(g: Graph, kernel_tol: float = KERNEL_TOL) -> Spectrum:
    return eigenvalues_symmetric(graph_laplacian(g), kernel_tol)


def algebraic_connectivity(g: Graph, kernel_tol: float = KERNEL_TOL) -> float:
    """Second smallest Laplacian eigenvalue; 0 exactly when ``g`` is disconnected."""
    if g.n < 2:
        raise ValidationError(f"algebraic connectivity needs n >= 2, got n={g.n}")
    return laplacian_spectrum(g, kernel_tol).second_smallest()


def cheeger_lower_bound(g: Graph, kernel_tol: float = KERNEL_TOL) -> float:
    """Spectral lower bound ``lambda2 / 2`` on the edge connectivity."""
    return algebraic_connectivity(g, kernel_tol) / 2.0
