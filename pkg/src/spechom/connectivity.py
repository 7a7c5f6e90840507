"""Exact k-component edge connectivity and classical edge connectivity.

Two cut semantics are supported:

``size_bounded``
    fewest edges whose removal leaves every component with fewer than ``k``
    vertices.
``component_count``
    fewest edges whose removal leaves at least ``k`` components. With ``k=2``
    this is the classical edge connectivity.

The main solver is iterative deepening on the cut size with a depth-first
branch and bound inside each round. The oracle enumerates every edge subset.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import ResourceError, ValidationError
from .graph import Edge, Graph, connected_components

SIZE_BOUNDED = "size_bounded"
COMPONENT_COUNT = "component_count"
CUT_MODES = (SIZE_BOUNDED, COMPONENT_COUNT)

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_TIME_BUDGET = 60.0
ORACLE_MAX_EDGES = 25


@dataclass(frozen=True)
class Budget:
    nodes: int = DEFAULT_NODE_BUDGET
    seconds: float = DEFAULT_TIME_BUDGET


@dataclass(frozen=True)
class CutResult:
    k: int
    mode: str
    size: int
    witness: tuple[Edge, ...]
    proven_optimal: bool
    nodes: int = 0
    seconds: float = field(default=0.0, compare=False)
    lower_bound: int = 0

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "mode": self.mode,
            "size": self.size,
            "witness": [list(e) for e in self.witness],
            "proven_optimal": self.proven_optimal,
            "lower_bound": self.lower_bound,
            "nodes": self.nodes,
        }


def _check_k(g: Graph, k: int, mode: str) -> None:
    if mode not in CUT_MODES:
        raise ValidationError(f"unknown cut mode {mode!r}; expected one of {CUT_MODES}")
    if mode == SIZE_BOUNDED and k < 2:
        raise ValidationError(f"size_bounded needs k >= 2, got k={k}")
    if mode == COMPONENT_COUNT:
        if k < 1:
            raise ValidationError(f"component_count needs k >= 1, got k={k}")
        if k > g.n:
            raise ValidationError(f"cannot reach {k} components on {g.n} vertices")


def satisfies(g: Graph, removed, k: int, mode: str) -> bool:
    """Does ``g`` minus ``removed`` meet the cut condition for ``k``?"""
    comps = connected_components(g.without_edges(removed))
    if mode == SIZE_BOUNDED:
        return all(len(c) < k for c in comps)
    return len(comps) >= k


# --- branch and bound --------------------------------------------------------

class _OutOfBudget(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, k: int, mode: str, budget: Budget):
        self.g, self.k, self.mode, self.budget = g, k, mode, budget
        self.m = g.m
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for i, (u, v) in enumerate(g.edges):
            self.inc[u].append((v, i))
            self.inc[v].append((u, i))
        self.nodes = 0
        self.deadline = time.perf_counter() + budget.seconds

    def components(self, alive: int) -> tuple[list[int], list[list[int]]]:
        """Component id per vertex and vertex lists, using edges in ``alive``."""
        comp = [-1] * self.g.n
        groups = []
        for s in range(self.g.n):
            if comp[s] >= 0:
                continue
            cid = len(groups)
            comp[s] = cid
            members = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w, i in self.inc[u]:
                    if comp[w] < 0 and alive >> i & 1:
                        comp[w] = cid
                        members.append(w)
                        stack.append(w)
            groups.append(members)
        return comp, groups

    def satisfied(self, groups) -> bool:
        if self.mode == SIZE_BOUNDED:
            return all(len(c) < self.k for c in groups)
        return len(groups) >= self.k

    def lower_bound(self, alive: int, kept: int, comp, groups, limit: int) -> float:
        """Fewest further removals any minimal completion needs."""
        k = self.k
        kcomp, kept_groups = self.components(kept)
        # a minimal cut never removes an edge whose ends stay joined
        for i, (u, v) in enumerate(self.g.edges):
            if not alive >> i & 1 and kcomp[u] == kcomp[v]:
                return math.inf
        if self.mode == SIZE_BOUNDED:
            if any(len(c) >= k for c in kept_groups):
                return math.inf
            total = 0
            for c in groups:
                s = len(c)
                if s < k:
                    continue
                # each vertex keeps at most k-2 neighbours in its final part
                excess = sum(max(0, self._degree(v, alive) - (k - 2)) for v in c)
                total += max((excess + 1) // 2, -(-s // (k - 1)) - 1)
            return total
        need = k - len(groups)
        if need > limit or len(kept_groups) < k:
            return math.inf if len(kept_groups) < k else need
        lb = self._split_dp(alive, kcomp, groups, need, None)
        if lb > limit:
            return lb
        cuts = [self._min_cut(alive, kept, kcomp, c, limit) for c in groups]
        return self._split_dp(alive, kcomp, groups, need, cuts)

    def _degree(self, v: int, alive: int) -> int:
        return sum(1 for _, i in self.inc[v] if alive >> i & 1)

    def _split_dp(self, alive, kcomp, groups, need, cuts) -> float:
        """Cheapest way to create ``need`` extra components, bounded per component.

        Splitting a component with ``s`` vertices and ``e`` edges into ``p``
        parts leaves every vertex at most ``s - p`` neighbours, and costs at
        least ``p - 1`` edges and at least its min cut.
        """
        best = [0.0] + [math.inf] * need
        for j, c in enumerate(groups):
            s = len(c)
            supers = len({kcomp[v] for v in c})
            if supers < 2:
                continue
            degs = [self._degree(v, alive) for v in c]
            e = sum(degs) // 2
            costs = []
            for p in range(2, min(supers, need + 1) + 1):
                left = sum(min(d, s - p) for d in degs) // 2
                cost = max(p - 1, e - left)
                if cuts is not None:
                    cost = max(cost, cuts[j])
                costs.append((p - 1, cost))
            nxt = best[:]
            for t in range(need + 1):
                if best[t] == math.inf:
                    continue
                for extra, cost in costs:
                    u = min(need, t + extra)
                    nxt[u] = min(nxt[u], best[t] + cost)
            best = nxt
        return best[need]

    def _min_cut(self, alive, kept, kcomp, c, limit) -> float:
        """Cut value of component ``c`` with kept edges uncuttable."""
        supers = sorted({kcomp[v] for v in c})
        if len(supers) < 2:
            return math.inf
        cap: dict[int, dict[int, int]] = {x: {} for x in supers}
        for v in c:
            for w, i in self.inc[v]:
                if v < w and alive >> i & 1 and not kept >> i & 1:
                    a, b = kcomp[v], kcomp[w]
                    cap[a][b] = cap[a].get(b, 0) + 1
                    cap[b][a] = cap[b].get(a, 0) + 1
        return _global_min_cut(cap, supers, limit + 1)

    def dfs(self, alive: int, kept: int, left: int) -> Optional[int]:
        self.nodes += 1
        if self.nodes > self.budget.nodes or (
            self.nodes & 255 == 0 and time.perf_counter() > self.deadline
        ):
            raise _OutOfBudget
        comp, groups = self.components(alive)
        if self.satisfied(groups):
            return alive
        if left == 0 or self.lower_bound(alive, kept, comp, groups, left) > left:
            return None
        if self.mode == SIZE_BOUNDED:
            # lowest-indexed offending component (groups are ordered by min vertex)
            target = next(c for c in groups if len(c) >= self.k)
            cid = comp[target[0]]
            cands = [i for i, (u, _) in enumerate(self.g.edges)
                     if alive >> i & 1 and comp[u] == cid]
        else:
            cands = [i for i in range(self.m) if alive >> i & 1]
        cands = [i for i in cands if not kept >> i & 1]
        for i in cands:
            found = self.dfs(alive & ~(1 << i), kept, left - 1)
            if found is not None:
                return found
            kept |= 1 << i
        return None

    def root_lower_bound(self) -> int:
        alive = (1 << self.m) - 1
        comp, groups = self.components(alive)
        if self.satisfied(groups):
            return 0
        lb = self.lower_bound(alive, 0, comp, groups, self.m)
        return min(lb, self.m)


def lambda_s(g: Graph, k: int, mode: str = SIZE_BOUNDED,
             budget: Optional[Budget] = None) -> CutResult:
    """Exact k-component edge connectivity with a witness edge set.

    Runs iterative deepening over the cut size ``c = lb, lb+1, ...``. When the
    node or time budget runs out the greedy upper bound is returned with
    ``proven_optimal=False``.
    """
    _check_k(g, k, mode)
    budget = budget or Budget()
    t0 = time.perf_counter()
    search = _Search(g, k, mode, budget)
    full = (1 << g.m) - 1
    c = lb = search.root_lower_bound()
    try:
        while c <= g.m:
            alive = search.dfs(full, 0, c)
            if alive is not None:
                witness = tuple(e for i, e in enumerate(g.edges) if not alive >> i & 1)
                return CutResult(k, mode, len(witness), witness, True, search.nodes,
                                 time.perf_counter() - t0, len(witness))
            lb = c + 1
            c += 1
    except _OutOfBudget:
        pass
    witness = greedy_cut(g, k, mode)
    return CutResult(k, mode, len(witness), witness, False, search.nodes,
                     time.perf_counter() - t0, min(lb, len(witness)))


def greedy_cut(g: Graph, k: int, mode: str) -> tuple[Edge, ...]:
    """Upper bound: remove the most damaging edge until the condition holds,
    then put back any edge that is not needed."""
    _check_k(g, k, mode)
    alive = set(g.edges)
    removed: list[Edge] = []

    def score(edges):
        comps = connected_components(Graph(g.n, tuple(edges)))
        sizes = sorted((len(c) for c in comps), reverse=True)
        big = sizes[0] if sizes else 0
        if mode == SIZE_BOUNDED:
            return (big, sizes.count(big))
        return (-len(comps), big)

    def ok(edges):
        return satisfies(g, set(g.edges) - set(edges), k, mode)

    while not ok(alive):
        if mode == SIZE_BOUNDED:
            comps = connected_components(Graph(g.n, tuple(alive)))
            bad = {v for c in comps if len(c) >= k for v in c}
            cands = sorted(e for e in alive if e[0] in bad)
        else:
            cands = sorted(alive)
        e = min(cands, key=lambda e: (score(alive - {e}), e))
        alive.remove(e)
        removed.append(e)
    for e in sorted(removed):
        if ok(alive | {e}):
            alive.add(e)
    return tuple(sorted(set(g.edges) - alive))


# --- max flow ----------------------------------------------------------------

def _max_flow(cap: dict[int, dict[int, int]], s: int, t: int, limit: float = math.inf) -> int:
    """Edmonds-Karp on an undirected capacitated graph, stopping at ``limit``."""
    res = {u: dict(nbrs) for u, nbrs in cap.items()}
    flow = 0
    while flow < limit:
        parent = {s: None}
        q = deque([s])
        while q and t not in parent:
            u = q.popleft()
            for w, r in res[u].items():
                if r > 0 and w not in parent:
                    parent[w] = u
                    q.append(w)
        if t not in parent:
            break
        # bottleneck along the path
        path = []
        v = t
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        push = min(res[u][w] for u, w in path)
        for u, w in path:
            res[u][w] -= push
            res[w][u] = res[w].get(u, 0) + push
        flow += push
    return flow


def _global_min_cut(cap, nodes, limit=math.inf) -> int:
    s = nodes[0]
    best = limit
    for t in nodes[1:]:
        best = min(best, _max_flow(cap, s, t, best))
        if best == 0:
            break
    return best


def classical_edge_connectivity(g: Graph) -> int:
    """Edge connectivity via unit-capacity max flows from vertex 0."""
    if g.n < 2:
        raise ValidationError(f"edge connectivity needs n >= 2, got n={g.n}")
    cap: dict[int, dict[int, int]] = {v: {} for v in range(g.n)}
    for u, v in g.edges:
        cap[u][v] = cap[v][u] = 1
    return int(_global_min_cut(cap, list(range(g.n))))


# --- exhaustive oracle -------------------------------------------------------

@lru_cache(maxsize=8)
def _subset_table(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For every removal mask: (popcount, largest component, component count)."""
    m = g.m
    touched = sorted({v for e in g.edges for v in e})
    isolated = g.n - len(touched)
    pos = {v: i for i, v in enumerate(touched)}
    ends = [(pos[u], pos[v]) for u, v in g.edges]
    nv = len(touched)
    total = 1 << m
    pop = np.empty(total, dtype=np.uint8)
    big = np.empty(total, dtype=np.uint8)
    ncomp = np.empty(total, dtype=np.uint16)
    chunk = 1 << 18
    bits = np.uint64(1) << np.arange(nv, dtype=np.uint64)
    for lo in range(0, total, chunk):
        masks = np.arange(lo, min(total, lo + chunk), dtype=np.uint64)
        keep = [((masks >> np.uint64(i)) & np.uint64(1)) == 0 for i in range(m)]
        reach = np.repeat(bits[:, None], len(masks), axis=1)
        while True:
            before = reach.copy()
            for i, (a, b) in enumerate(ends):
                joined = reach[a] | reach[b]
                reach[a] = np.where(keep[i], joined, reach[a])
                reach[b] = np.where(keep[i], joined, reach[b])
            if np.array_equal(before, reach):
                break
        sl = slice(lo, lo + len(masks))
        pop[sl] = np.bitwise_count(masks)
        sizes = np.bitwise_count(reach)
        largest = sizes.max(axis=0) if nv else np.zeros(len(masks), dtype=np.uint8)
        big[sl] = np.maximum(largest, 1 if isolated else 0)
        lowest = (reach & (bits[:, None] - np.uint64(1))) == 0
        ncomp[sl] = lowest.sum(axis=0) + isolated
    return pop, big, ncomp


def lambda_s_oracle(g: Graph, k: int, mode: str = SIZE_BOUNDED) -> CutResult:
    """Ground truth by checking every edge subset.

    Among the feasible subsets of minimum size the lexicographically first
    (by sorted edge index) is returned, i.e. the first one met when subsets are
    enumerated by increasing size in combination order.
    """
    _check_k(g, k, mode)
    if g.m > ORACLE_MAX_EDGES:
        raise ResourceError(f"oracle limited to {ORACLE_MAX_EDGES} edges, graph has {g.m}")
    t0 = time.perf_counter()
    pop, big, ncomp = _subset_table(g)
    feasible = big < k if mode == SIZE_BOUNDED else ncomp >= k
    idx = np.flatnonzero(feasible)
    size = int(pop[idx].min())
    best = idx[pop[idx] == size]
    # lexicographically first index tuple = largest bit-reversed mask
    rev = np.zeros(len(best), dtype=np.uint64)
    for i in range(g.m):
        rev |= ((best.astype(np.uint64) >> np.uint64(i)) & np.uint64(1)) << np.uint64(g.m - 1 - i)
    mask = int(best[int(np.argmax(rev))])
    witness = tuple(e for i, e in enumerate(g.edges) if mask >> i & 1)
    return CutResult(k, mode, size, witness, True, int(len(pop)),
                     time.perf_counter() - t0, size)
