"""Serialization of analysis and sweep tables to JSON, CSV and markdown."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Sequence

SCHEMA_VERSION = 1
SIG_DIGITS = 12

ANALYZE_COLUMNS = (
    "k", "lambda2", "beta0", "beta1", "beta2", "lambda2_1", "lambda2_2",
    "bound", "actual",
    # mode flags
    "variant", "cut_mode", "l2k_mode", "proven_optimal", "violated",
)

SWEEP_COLUMNS = (
    "family", "param", "value", "n", "k", "variant", "cut_mode", "l2k_mode",
    "seeds", "bound_mean", "bound_min", "bound_max",
    "actual_mean", "actual_min", "actual_max", "upper_bound_runs",
    "prediction_mean", "prediction_min", "prediction_max",
    "ratio_actual_prediction", "ratio_actual_bound",
    "violation_fraction", "threshold_p", "above_threshold",
)

LEDGER = """\
Conventions used by every report
================================

bound / term2
    Two variants of the spectral term are evaluated. 'statement' multiplies
    lambda2^(k-1) by vol(G)/2; 'proof' multiplies it by vol(G)/(2k). The two
    differ by exactly a factor of k.

vol(G)
    Sum of vertex degrees, 2|E|.

Delta(G)
    Clique (flag) complex of G truncated at --max-dim.

Hodge Laplacian
    L_k = B_k^T B_k + B_{k+1} B_{k+1}^T with B_k the (k-1)-by-k boundary
    matrix. Swapping the transposes would give a matrix of the wrong size, so
    the standard operator is used.

lambda2_1, lambda2_2 (--l2k)
    'second' = sorted eigenvalue at index 1 (0 whenever the kernel has
    dimension >= 2). 'nonzero' = smallest eigenvalue above the kernel
    tolerance 1e-8.

actual / cut_mode
    'size_bounded': fewest removed edges leaving every component with < k
    vertices. 'component_count': fewest removed edges leaving >= k
    components. Only the second reduces to the classical edge connectivity
    at k=2; under the first, k=2 always equals |E|.
    actual is null when the search budget ran out (proven_optimal=false);
    JSON details then carry the greedy upper bound.

term1
    lambda2 * min(beta_{k-1}/beta_0, 1); equals 0 when beta_{k-1} = 0.

prediction (sweep)
    n p min(1/beta_{k-1}, 1) with 1/0 read as +inf, i.e. capped at n p. This
    ratio is the inverse of the one inside the bound; each is kept in its
    own place.

Cut lower bound
    lambda2/2 <= edge connectivity holds because lambda2 <= vertex
    connectivity <= edge connectivity.

Known inconsistencies (no column depends on them)
    - lambda2/2 >= lambda2 * beta_0/beta_1 is not an identity; it fails
      whenever beta_1 < 2 beta_0 and lambda2 > 0.
    - The vol(G)/2 and vol(G)/(2k) readings of the spectral term cannot
      both hold; both are reported.
    - Under the size_bounded reading any cut value for k=2 other than |E| is
      impossible, so small reported values at k=2 imply the component_count
      reading.
"""


def clean_number(x: Any) -> Any:
    """Round floats to 12 significant digits; non-finite floats become None."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            return None
        y = float(f"{x:.{SIG_DIGITS}g}")
        return 0.0 if y == 0 else y
    if isinstance(x, dict):
        return {k: clean_number(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [clean_number(v) for v in x]
    return x


def to_json(doc: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    return json.dumps(clean_number(doc), sort_keys=True, indent=2) + "\n"


def _cell(x: Any) -> str:
    x = clean_number(x)
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS}g}"
    return str(x)


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def to_markdown(rows: Sequence[dict], columns: Sequence[str]) -> str:
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(c)) or "-" for c in columns) + " |")
    return "\n".join(lines) + "\n"


def render(doc: dict, rows: Sequence[dict], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(rows, columns)
    if fmt == "markdown":
        return to_markdown(rows, columns)
    raise ValueError(f"unknown format {fmt!r}")
