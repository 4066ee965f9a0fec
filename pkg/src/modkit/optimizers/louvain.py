"""Multi-level Louvain modularity optimisation."""

from __future__ import annotations

from ..generators import make_rng
from ..graph import Graph, Partition, ScoreBreakdown, score
from ..errors import DomainError
from ._moves import OptimizerConfig, Tracker, WorkGraph, compact, move_nodes


def louvain(
    graph: Graph, cfg: OptimizerConfig | None = None, trace: list | None = None
) -> tuple[ScoreBreakdown, Partition]:
    """Greedy node moves to a local optimum, then contract parts and repeat.

    Starting from singletons, each level sweeps nodes (fresh seeded order per
    sweep) until no move improves modularity, then builds the weighted
    reduced graph with one node per part. Stops at the first level with no
    move. If ``trace`` is a list, one ``(sweep, q)`` tuple is appended per
    accepted move.
    """
    cfg = cfg or OptimizerConfig()
    if graph.total_weight <= 0:
        raise DomainError("louvain needs at least one edge of positive weight")
    rng = make_rng(cfg.seed)
    wg = WorkGraph.from_graph(graph)
    tracker = Tracker(wg.singleton_q(), trace)
    assignment = list(range(graph.n))
    while True:
        comm = list(range(wg.size))
        if not move_nodes(wg, comm, rng, cfg, tracker):
            break
        comm, count = compact(comm)
        assignment = [comm[c] for c in assignment]
        if count == wg.size:
            break
        wg = wg.contract(comm, count)
    part = Partition(graph, assignment)
    return score(graph, part), part
