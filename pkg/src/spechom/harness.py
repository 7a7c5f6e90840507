"""Single-graph analysis, random-graph sweeps and the oracle self-check."""

from __future__ import annotations

import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .bounds import PROOF, STATEMENT, TightnessConfig, analyze_graph, random_graph_prediction
from .connectivity import (
    COMPONENT_COUNT,
    CUT_MODES,
    SIZE_BOUNDED,
    Budget,
    lambda_s,
    lambda_s_oracle,
    satisfies,
)
from .errors import ValidationError
from .graph import Graph, GraphSpec, connected_components, gen_graph, parse_graph_spec, read_edge_list, volume
from .topology import DEFAULT_MAX_DIM, SimplicialComplex, betti_numbers, clique_complex, lambda2_k, read_facet_list
from .report import LEDGER

VARIANT_CHOICES = {"statement": (STATEMENT,), "proof": (PROOF,), "both": (STATEMENT, PROOF)}
CUT_CHOICES = {"size": (SIZE_BOUNDED,), "count": (COMPONENT_COUNT,), "both": CUT_MODES}
L2K_CHOICES = {"second": "second_smallest", "nonzero": "smallest_nonzero"}


@dataclass
class AnalysisConfig:
    input: Optional[str] = None
    gen: Optional[str] = None
    facets: Optional[str] = None
    k_values: Sequence[int] = (2,)
    max_dim: int = DEFAULT_MAX_DIM
    variant: str = "statement"
    cut_mode: str = "size"
    l2k: str = "second"
    node_budget: int = Budget().nodes
    time_budget: float = Budget().seconds
    format: str = "json"
    seed: Optional[int] = None

    def validate(self) -> None:
        sources = [x for x in (self.input, self.gen, self.facets) if x is not None]
        if len(sources) != 1:
            raise ValidationError("input: give exactly one of --input, --gen, --facets")
        if not self.k_values:
            raise ValidationError("k: at least one k value is required")
        if min(self.k_values) < 2:
            raise ValidationError(f"k: every k must be >= 2, got {list(self.k_values)}")
        if self.max_dim < max(self.k_values) - 1:
            raise ValidationError(
                f"max_dim: must be >= max(k) - 1 = {max(self.k_values) - 1}, got {self.max_dim}"
            )
        if self.variant not in VARIANT_CHOICES:
            raise ValidationError(f"variant: expected one of {sorted(VARIANT_CHOICES)}")
        if self.cut_mode not in CUT_CHOICES:
            raise ValidationError(f"cut_mode: expected one of {sorted(CUT_CHOICES)}")
        if self.l2k not in L2K_CHOICES:
            raise ValidationError(f"l2k: expected one of {sorted(L2K_CHOICES)}")
        if self.node_budget < 1 or self.time_budget <= 0:
            raise ValidationError("budget: node and time budgets must be positive")
        if self.format not in ("json", "csv", "markdown"):
            raise ValidationError("format: expected json, csv or markdown")

    def tightness(self) -> TightnessConfig:
        return TightnessConfig(
            variants=VARIANT_CHOICES[self.variant],
            cut_modes=CUT_CHOICES[self.cut_mode],
            l2k_modes=(L2K_CHOICES[self.l2k],),
            max_dim=self.max_dim,
            budget=Budget(self.node_budget, self.time_budget),
        )


def parse_k_values(items: Sequence[str]) -> list[int]:
    """Accept ``3``, ``2,3`` and ``2..5`` forms."""
    ks: list[int] = []
    for item in items:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                if ".." in part:
                    lo, hi = part.split("..")
                    ks.extend(range(int(lo), int(hi) + 1))
                else:
                    ks.append(int(part))
            except ValueError:
                raise ValidationError(f"k: cannot parse {part!r}") from None
    return sorted(set(ks))


def _load(config: AnalysisConfig) -> tuple[str, Graph, SimplicialComplex]:
    if config.input is not None:
        g = read_edge_list(config.input)
        return config.input, g, clique_complex(g, config.max_dim)
    if config.facets is not None:
        c = read_facet_list(config.facets)
        if c.max_dim < config.max_dim:
            c = read_facet_list(config.facets, config.max_dim)
        return config.facets, c.skeleton_graph(), c
    spec = parse_graph_spec(config.gen)
    if config.seed is not None and "seed=" not in config.gen:
        spec = replace(spec, seed=config.seed)
    g = gen_graph(spec)
    return spec.to_string(), g, clique_complex(g, config.max_dim)


def analysis_rows(g: Graph, c: SimplicialComplex, ks: Sequence[int],
                  tc: TightnessConfig) -> tuple[list[dict], list[dict], dict]:
    """Table rows (fixed columns), per-row details and graph-level data."""
    betti = betti_numbers(c)
    l2k_mode = tc.l2k_modes[0]
    lam_k = {d: (lambda2_k(c, d, l2k_mode) if d <= c.max_dim else None) for d in (1, 2)}
    reports = analyze_graph(g, ks, tc, c)
    rows, details = [], []
    for rep in reports:
        for mode in tc.cut_modes:
            cut = rep.actual.get(mode)
            rows.append({
                "k": rep.k,
                "lambda2": rep.lambda2,
                "beta0": betti[0],
                "beta1": betti[1] if c.max_dim >= 1 else None,
                "beta2": betti[2] if c.max_dim >= 2 else None,
                "lambda2_1": lam_k[1],
                "lambda2_2": lam_k[2],
                "bound": rep.bound,
                "actual": cut.size if cut and cut.proven_optimal else None,
                "variant": rep.variant,
                "cut_mode": mode,
                "l2k_mode": rep.l2k_mode,
                "proven_optimal": cut.proven_optimal if cut else None,
                "violated": rep.violated.get(mode),
            })
            details.append({
                "k": rep.k,
                "variant": rep.variant,
                "cut_mode": mode,
                "term1": rep.term1,
                "term2": rep.term2,
                "beta_km1": rep.beta_km1,
                "lambda2_km1": rep.lambda2_km1,
                "vol": rep.vol,
                "cut": cut.to_dict() if cut else None,
            })
    graph_info = {
        "n": g.n,
        "m": g.m,
        "vol": volume(g),
        "components": len(connected_components(g)),
        "simplex_counts": list(betti.counts),
        "betti": list(betti.betti),
        "max_dim": c.max_dim,
    }
    return rows, details, graph_info


def analyze_command(config: AnalysisConfig) -> tuple[dict, list[dict]]:
    config.validate()
    source, g, c = _load(config)
    if g.n < 2:
        raise ValidationError("input: graph needs at least 2 vertices")
    tc = config.tightness()
    rows, details, info = analysis_rows(g, c, config.k_values, tc)
    doc = {
        "command": "analyze",
        "input": source,
        "graph": info,
        "config": {
            "k_values": list(config.k_values),
            "max_dim": config.max_dim,
            "variants": list(tc.variants),
            "cut_modes": list(tc.cut_modes),
            "l2k_mode": tc.l2k_modes[0],
            "node_budget": config.node_budget,
            "time_budget": config.time_budget,
        },
        "rows": rows,
        "details": details,
    }
    return doc, rows


# --- sweeps --------------------------------------------------------------------

def parse_vary(text: str, n: int) -> tuple[str, list[float]]:
    """``p=0.1,0.2`` or ``p=log:0.5,1,2`` (multiples of log(n)/n)."""
    name, eq, vals = text.partition("=")
    if not eq or not vals:
        raise ValidationError(f"vary: expected NAME=V1,V2,..., got {text!r}")
    scale = 1.0
    if vals.startswith("log:"):
        if name != "p":
            raise ValidationError("vary: log: multiples only apply to p")
        scale = math.log(n) / n
        vals = vals[4:]
    try:
        values = [float(v) * scale for v in vals.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"vary: cannot parse values in {text!r}") from None
    if name in ("p", "beta"):
        values = [min(1.0, v) for v in values]
    elif name in ("n", "d", "k"):
        values = [int(v) for v in values]
    return name, values


def seed_stream(master: int, count: int) -> list[int]:
    """Per-run 64-bit seeds derived from a master seed."""
    ss = np.random.SeedSequence(master)
    return [int(child.generate_state(1, np.uint64)[0]) for child in ss.spawn(count)]


def nominal_density(spec: GraphSpec) -> float:
    n = int(spec["n"])
    if spec.family == "erdos_renyi":
        return float(spec["p"])
    if spec.family == "random_regular":
        return spec["d"] / (n - 1)
    return spec["k"] / (n - 1)


@dataclass(frozen=True)
class _SweepTask:
    spec: GraphSpec
    ks: tuple[int, ...]
    tc: TightnessConfig


def _run_one(task: _SweepTask) -> list[dict]:
    g = gen_graph(task.spec)
    c = clique_complex(g, task.tc.max_dim)
    betti = betti_numbers(c)
    n = g.n
    p = nominal_density(task.spec)
    out = []
    for rep in analyze_graph(g, task.ks, task.tc, c):
        for mode in task.tc.cut_modes:
            cut = rep.actual.get(mode)
            if cut is None:
                continue
            out.append({
                "k": rep.k,
                "variant": rep.variant,
                "cut_mode": mode,
                "l2k_mode": rep.l2k_mode,
                "bound": rep.bound,
                "actual": cut.size,
                "proven_optimal": cut.proven_optimal,
                "violated": rep.violated[mode],
                "prediction": random_graph_prediction(n, p, betti[rep.k - 1]),
                "seed": task.spec.seed,
            })
    return out


@dataclass
class SweepConfig:
    gen: str
    vary: Optional[str] = None
    seeds: int = 20
    k_values: Sequence[int] = (3,)
    max_dim: int = DEFAULT_MAX_DIM
    variant: str = "statement"
    cut_mode: str = "size"
    l2k: str = "second"
    node_budget: int = Budget().nodes
    time_budget: float = Budget().seconds
    format: str = "csv"
    seed: int = 0
    jobs: Optional[int] = 1

    def validate(self) -> GraphSpec:
        AnalysisConfig(gen=self.gen, k_values=self.k_values, max_dim=self.max_dim,
                       variant=self.variant, cut_mode=self.cut_mode, l2k=self.l2k,
                       node_budget=self.node_budget, time_budget=self.time_budget,
                       format=self.format).validate()
        spec = parse_graph_spec(self.gen)
        if not spec.is_random:
            raise ValidationError(f"gen: sweep needs a random family, got {spec.family}")
        if self.seeds < 1:
            raise ValidationError("seeds: need at least one seed")
        return spec


def _agg(xs):
    return (statistics.fmean(xs), min(xs), max(xs)) if xs else (None, None, None)


def sweep_command(config: SweepConfig) -> tuple[dict, list[dict]]:
    base = config.validate()
    n = int(base["n"])
    if config.vary:
        param, values = parse_vary(config.vary, n)
        if param not in dict(base.params):
            raise ValidationError(f"vary: {base.family} has no parameter {param!r}")
    else:
        param, values = None, [None]
    tc = AnalysisConfig(gen=config.gen, k_values=config.k_values, max_dim=config.max_dim,
                        variant=config.variant, cut_mode=config.cut_mode, l2k=config.l2k,
                        node_budget=config.node_budget,
                        time_budget=config.time_budget).tightness()
    seeds = seed_stream(config.seed, config.seeds)
    tasks = []
    for v in values:
        spec = base.with_params(**{param: v}) if param else base
        for s in seeds:
            tasks.append(_SweepTask(replace(spec, seed=s), tuple(config.k_values), tc))
    jobs = config.jobs or os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=1))
    else:
        results = [_run_one(t) for t in tasks]

    threshold = math.log(n) / n if base.family == "erdos_renyi" and n > 1 else None
    rows = []
    per_value = len(seeds)
    for vi, v in enumerate(values):
        runs = [r for res in results[vi * per_value:(vi + 1) * per_value] for r in res]
        keys = sorted({(r["k"], r["variant"], r["cut_mode"], r["l2k_mode"]) for r in runs})
        value = v if param else None
        for key in keys:
            sel = [r for r in runs if (r["k"], r["variant"], r["cut_mode"], r["l2k_mode"]) == key]
            bound = _agg([r["bound"] for r in sel])
            actual = _agg([r["actual"] for r in sel])
            pred = _agg([r["prediction"] for r in sel])
            known = [r["violated"] for r in sel if r["violated"] is not None]
            p_val = v if param == "p" else (float(base["p"]) if base.family == "erdos_renyi" else None)
            rows.append({
                "family": base.family,
                "param": param or "",
                "value": value,
                "n": n,
                "k": key[0],
                "variant": key[1],
                "cut_mode": key[2],
                "l2k_mode": key[3],
                "seeds": len(sel),
                "bound_mean": bound[0], "bound_min": bound[1], "bound_max": bound[2],
                "actual_mean": actual[0], "actual_min": actual[1], "actual_max": actual[2],
                "upper_bound_runs": sum(1 for r in sel if not r["proven_optimal"]),
                "prediction_mean": pred[0], "prediction_min": pred[1], "prediction_max": pred[2],
                "ratio_actual_prediction": actual[0] / pred[0] if pred[0] else None,
                "ratio_actual_bound": actual[0] / bound[0] if bound[0] else None,
                "violation_fraction": sum(known) / len(known) if known else None,
                "threshold_p": threshold,
                "above_threshold": (p_val >= threshold) if threshold is not None and p_val is not None else None,
            })
    doc = {
        "command": "sweep",
        "family": base.to_string(),
        "vary": config.vary,
        "master_seed": config.seed,
        "seeds": config.seeds,
        "config": {
            "k_values": list(config.k_values),
            "max_dim": config.max_dim,
            "variants": list(tc.variants),
            "cut_modes": list(tc.cut_modes),
            "l2k_mode": tc.l2k_modes[0],
            "node_budget": config.node_budget,
            "time_budget": config.time_budget,
        },
        "rows": rows,
    }
    return doc, rows


# --- oracle self-check -----------------------------------------------------------

def oracle_check(max_n: int = 8, max_edges: int = 20,
                 budget: Optional[Budget] = None) -> dict:
    """Compare the branch-and-bound solver with exhaustive enumeration."""
    from .corpus import small_corpus

    passed = failed = 0
    failures = []
    graphs = small_corpus(max_n, max_edges)
    for name, g in graphs:
        for k in range(2, g.n + 1):
            for mode in CUT_MODES:
                fast = lambda_s(g, k, mode, budget)
                slow = lambda_s_oracle(g, k, mode)
                ok = (fast.proven_optimal and fast.size == slow.size
                      and satisfies(g, fast.witness, k, mode)
                      and satisfies(g, slow.witness, k, mode))
                if ok:
                    passed += 1
                else:
                    failed += 1
                    failures.append({"graph": name, "k": k, "mode": mode,
                                     "search": fast.size, "oracle": slow.size})
    return {"graphs": len(graphs), "passed": passed, "failed": failed, "failures": failures}


def ledger_text() -> str:
    return LEDGER
