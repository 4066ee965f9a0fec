"""Exact modularity optima for small graphs and the random-partition baseline."""

from __future__ import annotations

import math

from .errors import DomainError, SizeLimitError
from .graph import Graph, Partition, ScoreBreakdown, score

UNRESTRICTED_CAP = 12
CONNECTED_CAP = 18

# Later candidates must beat the incumbent by more than float noise to win.
_TIE = 1e-12


def brute_force_optimum(
    graph: Graph, connected_parts_only: bool = False, max_n: int | None = None
) -> tuple[ScoreBreakdown, Partition]:
    """Exact maximum modularity and one optimal partition.

    Without ``connected_parts_only`` every set partition is visited in
    restricted-growth-string order with incremental scoring. With it, only
    partitions into connected parts are searched, via memoised recursion on
    the set of still-unassigned vertices; no optimum is lost because
    splitting a disconnected part into its components keeps the edge
    contribution and strictly lowers the degree tax.

    Raises:
        SizeLimitError: if ``graph.n`` exceeds ``max_n`` (default 12, or 18
            for connected parts).
    """
    cap = max_n if max_n is not None else (CONNECTED_CAP if connected_parts_only else UNRESTRICTED_CAP)
    if graph.n > cap:
        raise SizeLimitError(f"brute force is capped at n={cap}, got n={graph.n}")
    if graph.n == 0:
        return ScoreBreakdown(1.0, 1.0, 0.0), Partition(graph, [])
    if graph.total_weight == 0:
        part = Partition.singletons(graph)
        return score(graph, part), part
    if connected_parts_only:
        labels = _connected_search(graph)
    else:
        labels = _rgs_search(graph)
    part = Partition(graph, labels)
    return score(graph, part), part


def _rgs_search(graph: Graph) -> list[int]:
    n = graph.n
    W = graph.total_weight
    inv_w = 1.0 / W
    inv_4w2 = 1.0 / (4 * W * W)
    back = [[(u, w) for u, w in graph.adj[v].items() if u < v] for v in range(n)]
    loops = graph.loops
    deg = graph.degree
    labels = [0] * n
    vol = [0.0] * n
    best = [-math.inf, None]

    def rec(v: int, k: int, internal: float, sumsq: float) -> None:
        if v == n:
            val = internal * inv_w - sumsq * inv_4w2
            if val > best[0] + _TIE:
                best[0] = val
                best[1] = labels.copy()
            return
        d = deg[v]
        for p in range(k + 1):
            add = loops[v]
            for u, w in back[v]:
                if labels[u] == p:
                    add += w
            vp = vol[p]
            labels[v] = p
            vol[p] = vp + d
            rec(v + 1, k + 1 if p == k else k, internal + add, sumsq + 2 * vp * d + d * d)
            vol[p] = vp

    rec(0, 0, 0.0, 0.0)
    return best[1]


def _connected_search(graph: Graph) -> list[int]:
    n = graph.n
    W = graph.total_weight
    inv_w = 1.0 / W
    inv_4w2 = 1.0 / (4 * W * W)
    nbr_mask = [0] * n
    for v in range(n):
        for u in graph.adj[v]:
            nbr_mask[v] |= 1 << u
    adj = graph.adj
    loops = graph.loops
    deg = graph.degree
    memo: dict[int, tuple[float, int]] = {0: (0.0, 0)}

    def connected_sets(v: int, allowed: int):
        # Each connected vertex set containing v inside `allowed` is produced once.
        out = []

        def grow(members: int, internal: float, volume: float, ext: int, excluded: int):
            out.append((members, internal, volume))
            while ext:
                bit = ext & -ext
                ext ^= bit
                w = bit.bit_length() - 1
                add = loops[w]
                for u, wt in adj[w].items():
                    if members >> u & 1:
                        add += wt
                new_ext = ext | (nbr_mask[w] & allowed & ~members & ~excluded & ~bit)
                grow(members | bit, internal + add, volume + deg[w], new_ext, excluded)
                excluded |= bit

        start = 1 << v
        grow(start, loops[v], deg[v], nbr_mask[v] & allowed & ~start, start)
        return out

    def solve(rest: int) -> float:
        hit = memo.get(rest)
        if hit is not None:
            return hit[0]
        v = (rest & -rest).bit_length() - 1
        best = -math.inf
        choice = 0
        for members, internal, volume in connected_sets(v, rest):
            val = internal * inv_w - volume * volume * inv_4w2 + solve(rest & ~members)
            if val > best + _TIE:
                best, choice = val, members
        memo[rest] = (best, choice)
        return best

    full = (1 << n) - 1
    solve(full)
    labels = [0] * n
    rest = full
    part = 0
    while rest:
        members = memo[rest][1]
        for v in range(n):
            if members >> v & 1:
                labels[v] = part
        rest &= ~members
        part += 1
    return labels


def random_partition_expectation(graph: Graph, k: int) -> float:
    """Expected modularity of a uniform random ``k``-colouring of the vertices.

    Each non-loop edge is internal with probability ``1/k`` and the expected
    degree tax is ``1/k + (1 - 1/k) * sum(d^2) / (4W^2)``, giving
    ``(1 - 1/k) * (L/W - sum(d^2) / (4W^2))`` with ``L`` the loop weight.
    For loopless graphs this is always negative.
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    W = graph.total_weight
    if W <= 0:
        raise DomainError("random partition expectation needs at least one edge")
    loop_weight = math.fsum(graph.loops)
    sq = math.fsum(d * d for d in graph.degree)
    return (1 - 1 / k) * (loop_weight / W - sq / (4 * W * W))
