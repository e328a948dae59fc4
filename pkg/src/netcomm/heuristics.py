"""Edge-selection strategies for robustness tuning under a budget.

Downdating removes the K least important edges (connectivity preserved by
construction when the check is on); updating adds the K most promising
virtual edges from a candidate set; rewiring alternates one downdate with
one update so the edge count is conserved.  Every strategy exists in a
greedy variant (scores recomputed as the graph changes) and a one-shot
variant (rank once on the input graph), plus seeded-random and brute-force
optimal baselines.  All ties break lexicographically, so a (method, seed,
input) triple fully determines the plan.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .graph import (EdgeRef, Graph, GraphError, ModificationRecord,
                    apply_modification, bridges, downdate_edge, edge,
                    is_connected, remains_connected_without, update_edge)
from .centrality import (NodeScores, eigenvector_centrality, node_scores,
                         pair_scores, rank_edges)
from .spectral import DEFAULT_TOL, ORACLE_CAP, top_eigenpairs

#: method tag -> node measure driving the edge scores
METHOD_MEASURE = {
    "subgraph": "subgraph",
    "eigenvector": "eigenvector",
    "nodeTC": "tc",
    "degree": "degree",
}

CENTRALITY_METHODS = tuple(METHOD_MEASURE)
DOWNDATE_METHODS = CENTRALITY_METHODS + ("random", "optimal")
UPDATE_METHODS = CENTRALITY_METHODS + ("random", "optimal")
REWIRE_METHODS = CENTRALITY_METHODS + ("random", "node")


@dataclass
class StrategyConfig:
    """Knobs shared by the selection strategies.

    ``greedy=False`` freezes scores at the input graph (the cheap one-shot
    variant).  ``connectivity_check`` guards downdates against bridges; the
    command-line driver always keeps it on for removal modes, but library
    callers may disable it to get the unguarded fast path.
    """

    method: str = "eigenvector"
    greedy: bool = True
    connectivity_check: bool = True
    rng_seed: int | None = None
    chan_t: int = 50
    candidate_pct: float = 0.1
    candidate_mode: str = "induced"
    oracle_cap: int = ORACLE_CAP
    quad_steps: int = 5
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.candidate_mode not in ("induced", "incident"):
            raise ValueError(f"unknown candidate mode {self.candidate_mode!r}")
        if not 0 < self.candidate_pct <= 1:
            raise ValueError("candidate_pct must lie in (0, 1]")
        if self.chan_t < 1:
            raise ValueError("chan_t must be >= 1")

    def _measure_kw(self) -> dict:
        return {"oracle_cap": self.oracle_cap, "quad_steps": self.quad_steps, "tol": self.tol}


@dataclass(frozen=True)
class CandidateSet:
    """Virtual edges eligible for updating, anchored to a node subset."""

    nodes: tuple[int, ...]
    virtual_edges: tuple[EdgeRef, ...]
    pct: float
    mode: str

    @property
    def size(self) -> int:
        return len(self.virtual_edges)


@dataclass
class ModificationPlan:
    """The outcome of a selection run: ordered records plus bookkeeping."""

    mode: str
    method: str
    greedy: bool
    requested: int
    records: list[ModificationRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    selection_seconds: float = 0.0
    trace: list | None = None

    @property
    def selected(self) -> int:
        return len(self.records)

    def apply(self, g: Graph) -> Graph:
        for rec in self.records:
            g = apply_modification(g, rec)
        return g

    def _warn(self, msg: str) -> None:
        self.warnings.append(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=3)


def build_candidate_set(
    g: Graph,
    pct: float,
    *,
    mode: str = "induced",
    scores: NodeScores | None = None,
) -> CandidateSet:
    """Candidate virtual edges anchored to the top ``ceil(pct * n)`` nodes.

    Nodes are ranked by eigenvector centrality unless ``scores`` overrides
    that.  ``induced`` keeps virtual edges with both endpoints in the subset;
    ``incident`` requires only one endpoint.  An empty result (the subset can
    be a clique) only warns — callers escalate ``pct``.
    """
    if not 0 < pct <= 1:
        raise ValueError("pct must lie in (0, 1]")
    if mode not in ("induced", "incident"):
        raise ValueError(f"unknown candidate mode {mode!r}")
    if scores is None:
        scores = eigenvector_centrality(g)
    k = min(g.n, max(1, math.ceil(pct * g.n)))
    top = np.sort(scores.top(k))
    virt: list[EdgeRef] = []
    if mode == "induced":
        if k >= 2:
            # all pairs inside the subset, minus existing edges; top is
            # sorted ascending so i < j and lexicographic order hold
            ii, jj = np.triu_indices(k, 1)
            a, b = top[ii], top[jj]
            keep = np.ones(a.size, dtype=bool)
            if g.m:
                keep = np.asarray(g.adjacency()[a, b]).ravel() == 0
            virt = [EdgeRef(int(x), int(y)) for x, y in zip(a[keep], b[keep])]
    else:
        in_set = np.zeros(g.n, dtype=bool)
        in_set[top] = True
        for i in range(g.n):
            for j in range(i + 1, g.n):
                if (in_set[i] or in_set[j]) and not g.has_edge(i, j):
                    virt.append(EdgeRef(i, j))
    virt.sort()
    if not virt:
        warnings.warn(f"candidate set empty at pct={pct:g} (subset is a clique); "
                      "escalate pct", RuntimeWarning, stacklevel=2)
    return CandidateSet(nodes=tuple(int(v) for v in top), virtual_edges=tuple(virt),
                        pct=pct, mode=mode)


def escalate_candidates(g: Graph, pct: float, *, mode: str = "induced",
                        scores: NodeScores | None = None) -> CandidateSet:
    """Double ``pct`` until the candidate set is nonempty (or pct reaches 1)."""
    while True:
        cs = build_candidate_set(g, pct, mode=mode, scores=scores)
        if cs.virtual_edges or pct >= 1.0:
            return cs
        pct = min(1.0, 2.0 * pct)


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("input graph must be connected")


def _as_virtual_candidates(g: Graph, cand) -> list[EdgeRef]:
    if isinstance(cand, CandidateSet):
        # build_candidate_set guarantees sorted, deduplicated virtual edges,
        # so the per-pair revalidation below would only burn time on pools
        # that can reach a few hundred thousand entries
        out = list(cand.virtual_edges)
        if not out:
            raise ValueError("empty candidate set")
        return out
    out = sorted({edge(*e) for e in cand})
    if not out:
        raise ValueError("empty candidate set")
    for e in out:
        if e in g:
            raise GraphError(f"candidate {e} is already an edge")
        if e.j >= g.n:
            raise GraphError(f"candidate {e} out of range")
    return out


def select_downdates(g: Graph, cfg: StrategyConfig, K: int) -> ModificationPlan:
    """Choose ``K`` edges to remove, least-important first.

    Centrality methods remove the edge with the smallest endpoint-derived
    score; with ``connectivity_check`` a bridge is skipped and permanently
    consumed, so the surviving graph stays connected after every prefix of
    the plan.  The one-shot variant ranks once on the input graph and walks
    that ranking; the random baseline draws uniformly from the currently
    feasible edges.
    """
    _require_connected(g)
    if K < 1:
        raise ValueError("K must be >= 1")
    if cfg.method == "optimal":
        return optimal_modifications(g, "downdate", K, cfg=cfg)
    if cfg.method not in DOWNDATE_METHODS:
        raise ValueError(f"unknown downdate method {cfg.method!r}")
    plan = ModificationPlan(mode="downdate", method=cfg.method, greedy=cfg.greedy, requested=K)
    rng = np.random.default_rng(cfg.rng_seed)
    t0 = time.perf_counter()
    current = g
    if cfg.method == "random":
        remaining = set(g.edges)
        for step in range(1, K + 1):
            s0 = time.perf_counter()
            pool = remaining - bridges(current) if cfg.connectivity_check else remaining
            feasible = sorted(pool)
            if not feasible:
                plan._warn(f"downdate budget exhausted at {step - 1}/{K}: no feasible edge")
                break
            e = feasible[int(rng.integers(len(feasible)))]
            remaining.discard(e)
            current = downdate_edge(current, e)
            plan.records.append(ModificationRecord(
                step, "downdate", e, (time.perf_counter() - s0) * 1e3))
    elif cfg.greedy:
        measure = METHOD_MEASURE[cfg.method]
        pool = list(g.edges)  # lexicographically sorted by construction
        P = np.asarray(pool, dtype=np.int64)
        alive = np.ones(len(pool), dtype=bool)
        for step in range(1, K + 1):
            idx = np.flatnonzero(alive)
            if idx.size == 0:
                plan._warn(f"downdate budget exhausted at {step - 1}/{K}: no feasible edge")
                break
            s0 = time.perf_counter()
            cache = node_scores(current, measure, **cfg._measure_kw())
            vals = pair_scores(cache, P[idx])
            # walk the fresh ascending ranking, (i, j) breaking ties
            order = np.lexsort((P[idx, 1], P[idx, 0], vals))
            chosen = None
            for t in order:
                k = int(idx[t])
                e = pool[k]
                if not cfg.connectivity_check or remains_connected_without(current, e):
                    chosen, chosen_k = e, k
                    break
                alive[k] = False  # bridge: consumed, never retried
            if chosen is None:
                plan._warn(f"downdate budget exhausted at {step - 1}/{K}: no feasible edge")
                break
            alive[chosen_k] = False
            current = downdate_edge(current, chosen)
            plan.records.append(ModificationRecord(
                step, "downdate", chosen, (time.perf_counter() - s0) * 1e3))
    else:
        measure = METHOD_MEASURE[cfg.method]
        ranking = rank_edges(g, measure, g.edges, order="ascending", **cfg._measure_kw())
        s0 = time.perf_counter()
        for s in ranking.scores:
            if len(plan.records) == K:
                break
            if cfg.connectivity_check and not remains_connected_without(current, s.edge):
                continue  # consumed
            current = downdate_edge(current, s.edge)
            plan.records.append(ModificationRecord(
                len(plan.records) + 1, "downdate", s.edge,
                (time.perf_counter() - s0) * 1e3))
            s0 = time.perf_counter()
        if len(plan.records) < K:
            plan._warn(f"downdate budget exhausted at {len(plan.records)}/{K}: "
                       "ranking consumed")
    plan.selection_seconds = time.perf_counter() - t0
    return plan


def select_updates(g: Graph, cfg: StrategyConfig, K: int, cand) -> ModificationPlan:
    """Choose ``K`` virtual edges from ``cand`` to add, most promising first.

    Updates cannot disconnect anything, so no feasibility filter applies;
    the one-shot variant simply takes the top ``K`` of the initial ranking.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if cfg.method == "optimal":
        return optimal_modifications(g, "update", K, cfg=cfg, candidates=cand)
    if cfg.method not in UPDATE_METHODS:
        raise ValueError(f"unknown update method {cfg.method!r}")
    remaining = _as_virtual_candidates(g, cand)
    P = np.asarray(remaining, dtype=np.int64)  # normalized before the clock starts
    plan = ModificationPlan(mode="update", method=cfg.method, greedy=cfg.greedy, requested=K)
    rng = np.random.default_rng(cfg.rng_seed)
    t0 = time.perf_counter()
    current = g
    if cfg.method == "random":
        for step in range(1, K + 1):
            if not remaining:
                plan._warn(f"update budget exhausted at {step - 1}/{K}: no candidate left")
                break
            s0 = time.perf_counter()
            e = remaining.pop(int(rng.integers(len(remaining))))
            current = update_edge(current, e)
            plan.records.append(ModificationRecord(
                step, "update", e, (time.perf_counter() - s0) * 1e3))
    elif cfg.greedy:
        measure = METHOD_MEASURE[cfg.method]
        alive = np.ones(len(remaining), dtype=bool)
        for step in range(1, K + 1):
            idx = np.flatnonzero(alive)
            if idx.size == 0:
                plan._warn(f"update budget exhausted at {step - 1}/{K}: no candidate left")
                break
            s0 = time.perf_counter()
            cache = node_scores(current, measure, **cfg._measure_kw())
            vals = pair_scores(cache, P[idx])
            # argmax with (i, j) tie-break: candidates are sorted, so the
            # first maximal entry is the canonical winner
            best = int(idx[np.flatnonzero(vals == vals.max())[0]])
            e = remaining[best]
            alive[best] = False
            current = update_edge(current, e)
            plan.records.append(ModificationRecord(
                step, "update", e, (time.perf_counter() - s0) * 1e3))
    else:
        # one-shot: rank once on the input graph and take the top K; edge
        # additions need no feasibility filter, so there is nothing to
        # recheck against the evolving graph
        measure = METHOD_MEASURE[cfg.method]
        cache = node_scores(g, measure, **cfg._measure_kw())
        vals = pair_scores(cache, P)
        take = min(K, len(remaining))
        if take < len(remaining):
            # exact top-take under (value desc, i, j): partition down to
            # the take-th value, keep every pair tied with it, and only
            # sort that slice -- the pool can dwarf the budget
            thresh = vals[np.argpartition(-vals, take - 1)[take - 1]]
            sub = np.flatnonzero(vals >= thresh)
        else:
            sub = np.arange(len(remaining))
        order = sub[np.lexsort((P[sub, 1], P[sub, 0], -vals[sub]))]
        s0 = time.perf_counter()
        for k in order[:K]:
            plan.records.append(ModificationRecord(
                len(plan.records) + 1, "update", remaining[int(k)],
                (time.perf_counter() - s0) * 1e3))
            s0 = time.perf_counter()
        if len(plan.records) < K:
            plan._warn(f"update budget exhausted at {len(plan.records)}/{K}: "
                       "no candidate left")
    plan.selection_seconds = time.perf_counter() - t0
    return plan


def rewire(g: Graph, cfg: StrategyConfig, K: int, cand=None) -> ModificationPlan:
    """``K`` rewiring steps: each removes one edge, then adds one virtual edge.

    The removal ranking is computed once on the input graph for the
    centrality methods (single removals barely move the scores); update
    scores are refreshed after every applied update when ``greedy``.  The
    ``node`` method instead detaches the most central node from its least
    central neighbor and reattaches it to the most central non-neighbor.
    Edges removed by the plan are never re-added by it, and the edge count
    is conserved: a step with no legal add is not half-applied.
    """
    _require_connected(g)
    if K < 1:
        raise ValueError("K must be >= 1")
    if cfg.method not in REWIRE_METHODS:
        raise ValueError(f"unknown rewire method {cfg.method!r}")
    if cand is None:
        cand = g.virtual_edges()
    pool = _as_virtual_candidates(g, cand)
    plan = ModificationPlan(mode="rewire", method=cfg.method, greedy=cfg.greedy, requested=K)
    rng = np.random.default_rng(cfg.rng_seed)
    t0 = time.perf_counter()
    current = g
    removed: set[EdgeRef] = set()

    def valid_updates(h: Graph) -> list[EdgeRef]:
        return [e for e in pool if e not in h and e not in removed]

    if cfg.method == "node":
        cache = node_scores(g, "subgraph", **cfg._measure_kw())
        for step in range(1, K + 1):
            s0 = time.perf_counter()
            if cfg.greedy and step > 1:
                cache = node_scores(current, "subgraph", **cfg._measure_kw())
            vals = cache.values
            centre = int(np.lexsort((np.arange(current.n), -vals))[0])
            nbrs = sorted(current.neighbors(centre),
                          key=lambda u: (vals[u], u))
            drop = None
            for u in nbrs:
                if remains_connected_without(current, (centre, int(u))):
                    drop = edge(centre, int(u))
                    break
            if drop is None:
                plan._warn(f"rewire stopped at {step - 1}/{K}: every incident edge "
                           "is a bridge")
                break
            nbr_set = set(int(u) for u in current.neighbors(centre))
            adds = [w for w in range(current.n)
                    if w != centre and w not in nbr_set
                    and edge(centre, w) not in removed and edge(centre, w) != drop]
            adds.sort(key=lambda w: (-vals[w], w))
            if not adds:
                plan._warn(f"rewire stopped at {step - 1}/{K}: no reattachment target")
                break
            add = edge(centre, adds[0])
            removed.add(drop)
            current = update_edge(downdate_edge(current, drop), add)
            ms = (time.perf_counter() - s0) * 1e3
            plan.records.append(ModificationRecord(2 * step - 1, "downdate", drop, ms))
            plan.records.append(ModificationRecord(2 * step, "update", add, 0.0))
    elif cfg.method == "random":
        remaining_edges = set(g.edges)
        for step in range(1, K + 1):
            s0 = time.perf_counter()
            feas = sorted(remaining_edges - bridges(current))
            if not feas:
                plan._warn(f"rewire stopped at {step - 1}/{K}: no removable edge")
                break
            drop = feas[int(rng.integers(len(feas)))]
            ups = [e for e in valid_updates(current) if e != drop]
            if not ups:
                plan._warn(f"rewire stopped at {step - 1}/{K}: no candidate to add")
                break
            add = ups[int(rng.integers(len(ups)))]
            remaining_edges.discard(drop)
            removed.add(drop)
            current = update_edge(downdate_edge(current, drop), add)
            ms = (time.perf_counter() - s0) * 1e3
            plan.records.append(ModificationRecord(2 * step - 1, "downdate", drop, ms))
            plan.records.append(ModificationRecord(2 * step, "update", add, 0.0))
    else:
        measure = METHOD_MEASURE[cfg.method]
        down_ranking = rank_edges(g, measure, g.edges, order="ascending",
                                  **cfg._measure_kw())
        up_cache = node_scores(g, measure, **cfg._measure_kw())
        down_queue = [s.edge for s in down_ranking.scores]
        down_pos = 0
        for step in range(1, K + 1):
            s0 = time.perf_counter()
            drop = None
            while down_pos < len(down_queue):
                e = down_queue[down_pos]
                down_pos += 1
                if remains_connected_without(current, e):
                    drop = e
                    break
            if drop is None:
                plan._warn(f"rewire stopped at {step - 1}/{K}: no removable edge")
                break
            trial = downdate_edge(current, drop)
            ups = rank_edges(trial, measure,
                             [e for e in valid_updates(trial) if e != drop],
                             order="descending", cache=up_cache)
            if not ups.scores:
                plan._warn(f"rewire stopped at {step - 1}/{K}: no candidate to add")
                break
            add = ups.scores[0].edge
            removed.add(drop)
            current = update_edge(trial, add)
            if cfg.greedy:
                up_cache = node_scores(current, measure, **cfg._measure_kw())
            ms = (time.perf_counter() - s0) * 1e3
            plan.records.append(ModificationRecord(2 * step - 1, "downdate", drop, ms))
            plan.records.append(ModificationRecord(2 * step, "update", add, 0.0))
    plan.selection_seconds = time.perf_counter() - t0
    return plan


def _dense_tc(g: Graph) -> float:
    w, Q = np.linalg.eigh(g.adjacency().toarray())
    s = Q.T @ np.ones(g.n)
    return float(np.sum(np.exp(w) * s * s))


def optimal_modifications(g: Graph, mode: str, K: int, *, cfg: StrategyConfig | None = None,
                          candidates=None, cap: int = 200) -> ModificationPlan:
    """Brute-force baseline: per step, try every feasible modification and
    keep the one with the highest resulting total communicability.

    Exact but O(candidates * n^3) per step, so it refuses graphs above
    ``cap`` nodes.  Downdates respect connectivity; updates draw from
    ``candidates`` (all virtual edges when omitted).
    """
    if mode not in ("downdate", "update"):
        raise ValueError(f"unknown mode {mode!r}")
    if K < 1:
        raise ValueError("K must be >= 1")
    if g.n > cap:
        raise ValueError(f"brute-force baseline capped at n={cap}, got n={g.n}")
    check = cfg.connectivity_check if cfg is not None else True
    if mode == "downdate":
        _require_connected(g)
    plan = ModificationPlan(mode=mode, method="optimal", greedy=True, requested=K)
    t0 = time.perf_counter()
    current = g
    if mode == "update":
        pool = _as_virtual_candidates(g, candidates if candidates is not None
                                      else g.virtual_edges())
    for step in range(1, K + 1):
        s0 = time.perf_counter()
        if mode == "downdate":
            feas = sorted(set(current.edges) - bridges(current)) if check \
                else list(current.edges)
        else:
            feas = [e for e in pool if e not in current]
        if not feas:
            plan._warn(f"{mode} budget exhausted at {step - 1}/{K}: no feasible choice")
            break
        best_edge, best_tc = None, -math.inf
        for e in feas:
            h = downdate_edge(current, e) if mode == "downdate" else update_edge(current, e)
            tc = _dense_tc(h)
            if tc > best_tc:
                best_edge, best_tc = e, tc
        current = downdate_edge(current, best_edge) if mode == "downdate" \
            else update_edge(current, best_edge)
        plan.records.append(ModificationRecord(
            step, mode, best_edge, (time.perf_counter() - s0) * 1e3))
    plan.selection_seconds = time.perf_counter() - t0
    return plan


@dataclass
class ChanTrace:
    """Per-step internals of :func:`chan_select` (for diagnostics/tests)."""

    step: int
    candidates: tuple[int, ...]
    lam: np.ndarray
    q1: np.ndarray
    edge: EdgeRef


def chan_select(g: Graph, K: int, t: int = 50, *, tol: float = DEFAULT_TOL,
                keep_trace: bool = False) -> ModificationPlan:
    """Spectral update selection with rank-one eigenpair corrections.

    Keeps ``t`` leading eigenpairs; per step restricts attention to the
    ``d_max`` nodes with the largest current Perron estimate (``d_max`` =
    current maximum degree), scores every virtual pair (i, j) there by
    ``exp(lam_1) * (exp(2 q_1(i) q_1(j)) + sum_h exp(lam_h - lam_1) *
    exp(2 q_h(i) q_h(j)))``, adds the best pair, and first-order-updates all
    kept eigenpairs instead of recomputing them.  Near-degenerate pairs have
    their correction term skipped (flagged once in the plan warnings).
    """
    _require_connected(g)
    if K < 1:
        raise ValueError("K must be >= 1")
    if not 1 <= t < max(g.n, 2):
        raise ValueError(f"t={t} out of range for n={g.n}")
    pairs = top_eigenpairs(g, t, tol=tol)
    lam = pairs.values.astype(np.float64).copy()
    Q = pairs.vectors.astype(np.float64).copy()
    plan = ModificationPlan(mode="update", method="chan", greedy=True, requested=K)
    trace: list[ChanTrace] = []
    t0 = time.perf_counter()
    current = g
    flagged = False
    for step in range(1, K + 1):
        s0 = time.perf_counter()
        dmax = int(current.degrees.max()) if current.m else 1
        dmax = min(dmax, current.n)
        order = np.lexsort((np.arange(current.n), -Q[:, 0]))
        subset = np.sort(order[:dmax])
        cand = [EdgeRef(int(subset[a]), int(subset[b]))
                for a in range(len(subset)) for b in range(a + 1, len(subset))
                if not current.has_edge(int(subset[a]), int(subset[b]))]
        if not cand:
            plan._warn(f"update budget exhausted at {step - 1}/{K}: candidate subset "
                       "is a clique")
            break
        ii = np.array([e.i for e in cand])
        jj = np.array([e.j for e in cand])
        prod = Q[ii, :] * Q[jj, :]  # (ncand, t)
        # the exp(lam_1) prefactor is a shared positive constant: drop it so
        # large lambda_1 cannot overflow, argmax is unchanged
        rel = np.exp(lam - lam[0])
        scores = np.exp(2.0 * prod) @ rel
        e = cand[int(np.argmax(scores))]
        if keep_trace:
            trace.append(ChanTrace(step=step, candidates=tuple(int(v) for v in subset),
                                   lam=lam.copy(), q1=Q[:, 0].copy(), edge=e))
        current = update_edge(current, e)
        a, b = Q[e.i, :].copy(), Q[e.j, :].copy()
        new_lam = lam + 2.0 * a * b
        denom = lam[:, None] - lam[None, :]
        numer = np.outer(b, a) - np.outer(a, b)  # [k, h] = a_h b_k - a_k b_h
        scale = max(1.0, float(np.max(np.abs(lam))))
        ok = np.abs(denom) > 1e-10 * scale
        np.fill_diagonal(ok, False)
        if t > 1 and not np.all(ok | np.eye(t, dtype=bool)):
            if not flagged:
                plan._warn("near-degenerate eigenvalues: skipped first-order "
                           "correction terms")
                flagged = True
        coef = np.zeros_like(denom)
        np.divide(numer, denom, out=coef, where=ok)
        Q = Q + Q @ coef.T
        lam = new_lam
        plan.records.append(ModificationRecord(
            step, "update", e, (time.perf_counter() - s0) * 1e3))
    plan.selection_seconds = time.perf_counter() - t0
    if keep_trace:
        plan.trace = trace
    return plan
