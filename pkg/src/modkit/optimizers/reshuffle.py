"""Reshuffle: alternate node moves and whole-part merges on the original node set."""

from __future__ import annotations

from ..errors import DomainError
from ..generators import make_rng
from ..graph import Graph, Partition, ScoreBreakdown, score
from ._moves import EPS, OptimizerConfig, Tracker, WorkGraph, move_nodes


def reshuffle(
    graph: Graph, cfg: OptimizerConfig | None = None, trace: list | None = None
) -> tuple[ScoreBreakdown, Partition]:
    """Node-move phase, then a greedy merge phase, repeated until neither helps.

    Unlike Louvain no reduced graph is formed, so later node phases can
    undo earlier decisions.
    """
    cfg = cfg or OptimizerConfig()
    if graph.total_weight <= 0:
        raise DomainError("reshuffle needs at least one edge of positive weight")
    rng = make_rng(cfg.seed)
    wg = WorkGraph.from_graph(graph)
    tracker = Tracker(wg.singleton_q(), trace)
    comm = list(range(graph.n))
    for _ in range(cfg.max_sweeps):
        move_nodes(wg, comm, rng, cfg, tracker)
        if not _merge_parts(wg, comm, rng, cfg, tracker):
            break
    part = Partition(graph, comm)
    return score(graph, part), part


def _merge_parts(wg: WorkGraph, comm: list[int], rng, cfg: OptimizerConfig, tracker: Tracker) -> bool:
    W = wg.W
    inv_w = 1.0 / W
    half_inv_w2 = 1.0 / (2 * W * W)
    threshold = max(cfg.min_improvement, EPS)
    vol: dict[int, float] = {}
    links: dict[int, dict[int, float]] = {}
    for v in range(wg.size):
        c = comm[v]
        vol[c] = vol.get(c, 0.0) + wg.deg[v]
        links.setdefault(c, {})
        for u, w in wg.nbrs[v]:
            cu = comm[u]
            if cu != c:
                links[c][cu] = links[c].get(cu, 0.0) + w
    tracker.sweep += 1
    alias = {c: c for c in vol}
    order = sorted(vol)
    merged_any = False
    for idx in rng.permutation(len(order)).tolist():
        c = order[idx]
        if c not in links:
            continue
        best_c, best = None, threshold
        vc = vol[c]
        for d, w in links[c].items():
            gain = w * inv_w - vc * vol[d] * half_inv_w2
            if gain > best:
                best_c, best = d, gain
        if best_c is None:
            continue
        keep, gone = (c, best_c) if len(links[c]) >= len(links[best_c]) else (best_c, c)
        for d, w in links.pop(gone).items():
            if d == keep:
                continue
            row = links[d]
            del row[gone]
            row[keep] = row.get(keep, 0.0) + w
            links[keep][d] = links[keep].get(d, 0.0) + w
        del links[keep][gone]
        vol[keep] += vol.pop(gone)
        alias[gone] = keep
        tracker.accept(best)
        merged_any = True
    if merged_any:
        for c in list(alias):
            root = c
            while alias[root] != root:
                root = alias[root]
            alias[c] = root
        for v in range(wg.size):
            comm[v] = alias[comm[v]]
    return merged_any
