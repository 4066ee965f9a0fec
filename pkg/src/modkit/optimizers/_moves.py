"""Greedy single-node move phase shared by Louvain and Reshuffle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from modkit.errors import DomainError

# Gains below this are float noise, not improvements.
EPS = 1e-12


@dataclass
class OptimizerConfig:
    """Knobs shared by the heuristic optimizers.

    Attributes:
        seed: seed for the per-sweep node permutations.
        max_sweeps: cap on node-move sweeps per phase (and on outer rounds).
        min_improvement: a move or merge must raise modularity by strictly more than this.
    """

    seed: int | None = 0
    max_sweeps: int = 100
    min_improvement: float = 0.0

    def __post_init__(self):
        if self.min_improvement < 0:
            raise DomainError("min_improvement must be >= 0")
        if self.max_sweeps < 1:
            raise DomainError("max_sweeps must be >= 1")


class Tracker:
    """Running modularity plus the optional (sweep, q) trace."""

    def __init__(self, q: float, trace: list | None):
        self.q = q
        self.sweep = 0
        self.trace = trace

    def accept(self, gain: float) -> None:
        self.q += gain
        if self.trace is not None:
            self.trace.append((self.sweep, self.q))


class WorkGraph:
    """Compact adjacency for one optimisation level: loops split from neighbour lists."""

    __slots__ = ("size", "nbrs", "deg", "loops", "W")

    def __init__(self, size, nbrs, deg, loops, W):
        self.size = size
        self.nbrs = nbrs
        self.deg = deg
        self.loops = loops
        self.W = W

    @classmethod
    def from_graph(cls, graph) -> "WorkGraph":
        nbrs = [list(graph.adj[v].items()) for v in range(graph.n)]
        return cls(graph.n, nbrs, list(graph.degree), list(graph.loops), graph.total_weight)

    def singleton_q(self) -> float:
        W = self.W
        return sum(self.loops) / W - sum(d * d for d in self.deg) / (4 * W * W)

    def contract(self, comm: list[int], count: int) -> "WorkGraph":
        """Reduced graph with one node per community; internal weight becomes a loop."""
        loops = [0.0] * count
        deg = [0.0] * count
        nb: list[dict[int, float]] = [dict() for _ in range(count)]
        for v in range(self.size):
            c = comm[v]
            loops[c] += self.loops[v]
            deg[c] += self.deg[v]
            for u, w in self.nbrs[v]:
                cu = comm[u]
                if cu == c:
                    if u > v:
                        loops[c] += w
                else:
                    nb[c][cu] = nb[c].get(cu, 0.0) + w
        return WorkGraph(count, [list(d.items()) for d in nb], deg, loops, self.W)


def compact(comm: list[int]) -> tuple[list[int], int]:
    mapping: dict[int, int] = {}
    out = []
    for c in comm:
        if c not in mapping:
            mapping[c] = len(mapping)
        out.append(mapping[c])
    return out, len(mapping)


def move_nodes(
    wg: WorkGraph,
    comm: list[int],
    rng: np.random.Generator,
    cfg: OptimizerConfig,
    tracker: Tracker,
) -> bool:
    """Sweep nodes in fresh random orders, moving each to its best part, until stable.

    ``comm`` is updated in place. A node may also leave for an empty part of
    its own. Returns True if any node moved.
    """
    W = wg.W
    inv_w = 1.0 / W
    half_inv_w2 = 1.0 / (2 * W * W)
    threshold = max(cfg.min_improvement, EPS)
    size = wg.size
    vol = [0.0] * size
    members = [0] * size
    for v in range(size):
        vol[comm[v]] += wg.deg[v]
        members[comm[v]] += 1
    empty = [c for c in range(size - 1, -1, -1) if members[c] == 0]
    nbrs = wg.nbrs
    deg = wg.deg
    moved_any = False
    for _ in range(cfg.max_sweeps):
        tracker.sweep += 1
        moved = False
        for i in rng.permutation(size).tolist():
            ci = comm[i]
            di = deg[i]
            links: dict[int, float] = {}
            for j, w in nbrs[i]:
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            vol[ci] -= di
            stay = links.get(ci, 0.0) * inv_w - vol[ci] * di * half_inv_w2
            best_c, best = ci, stay
            for c, kc in links.items():
                if c != ci:
                    gain = kc * inv_w - vol[c] * di * half_inv_w2
                    if gain > best:
                        best_c, best = c, gain
            if members[ci] > 1 and 0.0 > best:
                best_c, best = -1, 0.0
            if best_c != ci and best - stay > threshold:
                if best_c == -1:
                    best_c = empty.pop()
                members[ci] -= 1
                if members[ci] == 0:
                    empty.append(ci)
                members[best_c] += 1
                comm[i] = best_c
                vol[best_c] += di
                tracker.accept(best - stay)
                moved = True
            else:
                vol[ci] += di
        if not moved:
            break
        moved_any = True
    return moved_any
