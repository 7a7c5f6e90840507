"""Evaluation of the spectral-homological lower bound on k-component edge
connectivity, and bound-versus-exact tightness tables.

The bound is

    lambda2(G) * min(beta_{k-1} / beta_0, 1) + lambda2^{(k-1)}(Delta) * vol(G) / D

with ``D = 2`` in the ``statement`` variant and ``D = 2k`` in the ``proof``
variant. Nothing here asserts the inequality; violations are recorded as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .connectivity import CUT_MODES, SIZE_BOUNDED, Budget, CutResult, lambda_s
from .errors import ValidationError
from .graph import Graph, volume
from .spectral import KERNEL_TOL, algebraic_connectivity
from .topology import (
    DEFAULT_MAX_DIM,
    BettiProfile,
    SimplicialComplex,
    betti_numbers,
    clique_complex,
    lambda2_k,
)

STATEMENT = "statement_vol_over_2"
PROOF = "proof_vol_over_2k"
VARIANTS = (STATEMENT, PROOF)
VIOLATION_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    k: int
    variant: str
    l2k_mode: str
    lambda2: float
    beta0: int
    beta_km1: int
    lambda2_km1: float
    vol: int
    term1: float
    term2: float
    bound: float
    actual: dict[str, CutResult] = field(default_factory=dict)
    violated: dict[str, Optional[bool]] = field(default_factory=dict)


def homological_ratio(beta_km1: int, beta0: int) -> float:
    """``min(beta_{k-1} / beta_0, 1)``; 0 when there are no (k-1)-holes."""
    if beta0 <= 0:
        raise ValidationError("beta_0 must be positive")
    return min(beta_km1 / beta0, 1.0)


def spectral_terms(lambda2_km1: float, vol: int, k: int) -> dict[str, float]:
    """Second term for both variants; the statement term is built as ``k`` times
    the proof term so the two differ by exactly that factor."""
    proof = lambda2_km1 * vol / (2 * k)
    return {PROOF: proof, STATEMENT: k * proof}


def violation(bound: float, cut: CutResult) -> Optional[bool]:
    """True/False against a proven optimum; against an upper bound only a
    violation can be certified, otherwise the answer is unknown (None)."""
    if bound > cut.size + VIOLATION_TOL:
        return True
    return False if cut.proven_optimal else None


def theorem34_bound(
    g: Graph,
    c: SimplicialComplex,
    k: int,
    variant: str = STATEMENT,
    l2k_mode: str = "second_smallest",
    cut_modes: Iterable[str] = (SIZE_BOUNDED,),
    budget: Optional[Budget] = None,
    betti: Optional[BettiProfile] = None,
    lambda2: Optional[float] = None,
    actual: Optional[dict[str, CutResult]] = None,
    kernel_tol: float = KERNEL_TOL,
) -> BoundReport:
    """Evaluate the bound for one ``k`` and attach exact cut values.

    ``betti``, ``lambda2`` and ``actual`` may be passed in to reuse work across
    calls on the same graph.
    """
    if k < 2:
        raise ValidationError(f"bound needs k >= 2, got k={k}")
    if variant not in VARIANTS:
        raise ValidationError(f"unknown bound variant {variant!r}")
    if k - 1 > c.max_dim:
        raise ValidationError(
            f"k={k} needs a complex of dimension >= {k - 1}; rebuild with max_dim={k - 1}"
        )
    if betti is None:
        betti = betti_numbers(c)
    if lambda2 is None:
        lambda2 = algebraic_connectivity(g, kernel_tol)
    beta0, beta_km1 = betti[0], betti[k - 1]
    l2 = lambda2_k(c, k - 1, l2k_mode, kernel_tol)
    vol = volume(g)
    term1 = lambda2 * homological_ratio(beta_km1, beta0)
    term2 = spectral_terms(l2, vol, k)[variant]
    bound = term1 + term2

    cuts = dict(actual or {})
    for mode in cut_modes:
        if mode not in cuts:
            cuts[mode] = lambda_s(g, k, mode, budget)
    violated = {mode: violation(bound, cut) for mode, cut in cuts.items()}
    return BoundReport(k, variant, l2k_mode, lambda2, beta0, beta_km1, l2, vol,
                       term1, term2, bound, cuts, violated)


def random_graph_prediction(n: int, p: float, beta_km1: int) -> float:
    """``n p min(1 / beta_{k-1}, 1)``, reading ``1/0`` as infinity (cap at 1)."""
    if n < 1 or not 0.0 <= p <= 1.0 or beta_km1 < 0:
        raise ValidationError("need n >= 1, p in [0, 1], beta >= 0")
    factor = 1.0 if beta_km1 == 0 else min(1.0 / beta_km1, 1.0)
    return n * p * factor


@dataclass
class TightnessConfig:
    variants: Sequence[str] = (STATEMENT,)
    cut_modes: Sequence[str] = (SIZE_BOUNDED,)
    l2k_modes: Sequence[str] = ("second_smallest",)
    max_dim: int = DEFAULT_MAX_DIM
    budget: Budget = field(default_factory=Budget)
    kernel_tol: float = KERNEL_TOL

    def __post_init__(self):
        for v in self.variants:
            if v not in VARIANTS:
                raise ValidationError(f"unknown bound variant {v!r}")
        for mde in self.cut_modes:
            if mde not in CUT_MODES:
                raise ValidationError(f"unknown cut mode {mde!r}")


@dataclass
class TightnessTable:
    rows: list[dict]

    @property
    def violation_fraction(self) -> float:
        known = [r["violated"] for r in self.rows if r["violated"] is not None]
        return sum(known) / len(known) if known else 0.0


def analyze_graph(g: Graph, ks: Sequence[int], config: TightnessConfig,
                  c: Optional[SimplicialComplex] = None) -> list[BoundReport]:
    """Bound reports for every (k, variant, l2k mode) on one graph.

    Spectra, Betti numbers and exact cuts are computed once and shared.
    """
    if c is None:
        c = clique_complex(g, config.max_dim)
    betti = betti_numbers(c)
    lam2 = algebraic_connectivity(g, config.kernel_tol)
    reports = []
    for k in ks:
        cuts = {m: lambda_s(g, k, m, config.budget) for m in config.cut_modes
                if not (m != SIZE_BOUNDED and k > g.n)}
        for variant in config.variants:
            for l2k_mode in config.l2k_modes:
                reports.append(theorem34_bound(
                    g, c, k, variant, l2k_mode, (), betti=betti, lambda2=lam2,
                    actual=cuts, kernel_tol=config.kernel_tol,
                ))
    return reports


def tightness_report(corpus: Iterable[tuple[str, Graph, Sequence[int]]],
                     config: Optional[TightnessConfig] = None) -> TightnessTable:
    """One row per (graph, k, variant, cut mode, l2k mode), sorted by that key."""
    config = config or TightnessConfig()
    rows = []
    for name, g, ks in corpus:
        for rep in analyze_graph(g, ks, config):
            for mode in config.cut_modes:
                cut = rep.actual.get(mode)
                rows.append({
                    "graph": name,
                    "k": rep.k,
                    "variant": rep.variant,
                    "cut_mode": mode,
                    "l2k_mode": rep.l2k_mode,
                    "term1": rep.term1,
                    "term2": rep.term2,
                    "bound": rep.bound,
                    "actual": cut.size if cut else None,
                    "proven_optimal": cut.proven_optimal if cut else None,
                    "ratio": (cut.size / rep.bound) if cut and rep.bound > 0 else None,
                    "violated": rep.violated.get(mode),
                })
    rows.sort(key=lambda r: (r["graph"], r["k"], r["variant"], r["cut_mode"], r["l2k_mode"]))
    return TightnessTable(rows)
