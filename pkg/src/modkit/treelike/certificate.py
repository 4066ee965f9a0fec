"""Constructive lower bounds for graphs that are a bounded-width graph plus a few edges.

Given ``G``, an edge set ``E'`` and a tree decomposition of ``H = G - E'``
of width ``t``, :func:`cut_partition` repeatedly cuts off pieces of degree
weight below a threshold ``s`` by deleting one bag, and returns the
resulting partition of ``V(G)`` together with what was certified.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from ..errors import DomainError, NoExtraEdgeError, NumericError
from ..graph import Graph, Partition, ScoreBreakdown, score
from .decomposition import TreeDecomposition, check, decompose_unicyclic, normalize


@dataclass(frozen=True)
class CutStep:
    """One bag deletion: the bag, the pieces it split off, and the threshold used."""

    bag: frozenset
    pieces: tuple[frozenset, ...]
    threshold: float


@dataclass
class CutCertificate:
    """Partition produced by bag cutting and the bound it certifies.

    Attributes:
        partition: the partition of ``V(G)``.
        deleted_bag_vertices: vertex sets of the deleted bags, in order.
        threshold: the piece weight cap ``s``.
        final_threshold: ``s - maxdeg``, used for the last cut only.
        edges_cut: total weight of ``H`` edges crossing the partition.
        edges_deleted: weight of ``H`` edges touching a deleted bag when it was removed.
        claimed_bound: ``1 - 2 sqrt((t+1) maxdeg / m) - w(E') / m``; may be negative.
        score: modularity of ``partition`` recomputed from ``G``.
        trivial: True when ``m`` is too small and the whole vertex set is returned.
    """

    partition: Partition
    deleted_bag_vertices: list[frozenset]
    threshold: float
    final_threshold: float
    edges_cut: float
    edges_deleted: float
    claimed_bound: float
    score: ScoreBreakdown
    trivial: bool = False
    steps: list[CutStep] = field(default_factory=list)

    @property
    def usable_bound(self) -> float:
        return max(0.0, self.claimed_bound)

    @property
    def holds(self) -> bool:
        return self.score.q >= self.claimed_bound - 1e-9


def _weight(vertices, w) -> float:
    return math.fsum(w[v] for v in vertices)


def _split_once(td: TreeDecomposition, w, s: float):
    """Find a node whose subtree pieces all weigh below ``s`` while its own subtree does not.

    Returns ``(bag, pieces, covered)`` where ``covered`` is every vertex in the
    chosen node's subtree.
    """
    nb = td.neighbors()
    root = min(i for i in range(td.num_nodes) if len(nb[i]) <= 1)
    parent = [-1] * td.num_nodes
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(nb[x]):
            if y not in seen:
                seen.add(y)
                parent[y] = x
                order.append(y)
                queue.append(y)
    top: dict[int, int] = {}
    for node in order:
        for v in td.bags[node]:
            top.setdefault(v, node)
    sub = [0.0] * td.num_nodes
    for v, node in top.items():
        sub[node] += w[v]
    for node in reversed(order[1:]):
        sub[parent[node]] += sub[node]
    heavy = [
        sub[c] + sum(w[v] for v in td.bags[c] if top[v] != c) >= s for c in range(td.num_nodes)
    ]
    children: list[list[int]] = [[] for _ in range(td.num_nodes)]
    for node in order[1:]:
        children[parent[node]].append(node)
    chosen = None
    for c in range(td.num_nodes):
        out = sum(1 for ch in children[c] if heavy[ch])
        if c != root and not heavy[c]:
            out += 1
        if out == 0:
            chosen = c
            break
    if chosen is None or chosen == root:
        raise NumericError("no bag splits the residual below the threshold")

    def subtree_vertices(node):
        acc = set()
        stack = [node]
        while stack:
            x = stack.pop()
            acc |= td.bags[x]
            stack.extend(children[x])
        return acc

    bag = td.bags[chosen]
    pieces = []
    covered: set = set()
    for ch in sorted(children[chosen]):
        part = subtree_vertices(ch) - covered
        if part:
            pieces.append(frozenset(part))
            covered |= part
    for v in sorted(bag - covered):
        pieces.append(frozenset((v,)))
        covered.add(v)
    return bag, pieces, covered


def cut_partition(graph: Graph, extra_edges, td: TreeDecomposition, t: int | None = None) -> CutCertificate:
    """Cut ``graph`` into light pieces guided by a decomposition of ``graph - extra_edges``.

    Args:
        graph: the full graph ``G`` with total edge weight ``m > 0``.
        extra_edges: indices into ``graph.edges`` forming ``E'``.
        td: a valid tree decomposition of ``G - E'``.
        t: claimed width; defaults to ``td.width``.

    Raises:
        DecompositionError: if ``td`` is invalid for ``G - E'`` or wider than ``t``.
    """
    m = graph.total_weight
    if m <= 0:
        raise DomainError("graph needs positive total edge weight")
    extra = sorted(set(int(i) for i in extra_edges))
    if extra and not (0 <= extra[0] and extra[-1] < len(graph.edges)):
        raise DomainError("extra edge index out of range")
    H = graph.without_edges(extra)
    if t is None:
        t = td.width
    check(H, td, t)
    d = graph.max_degree
    w = graph.degree
    extra_w = math.fsum(graph.edges[i][2] for i in extra)
    claimed = 1.0 - 2.0 * math.sqrt((t + 1) * d / m) - extra_w / m
    s = 2.0 * math.sqrt((t + 1) * d * m)
    s_final = s - d

    if m < 4 * (t + 1) * d:
        part = Partition.whole(graph)
        return CutCertificate(part, [], s, s_final, 0.0, 0.0, claimed, score(graph, part), trivial=True)

    parts: list[frozenset] = []
    steps: list[CutStep] = []
    deleted = 0.0
    residual = set(range(graph.n))
    current = normalize(td)
    x = _weight(residual, w)
    while x >= s:
        cap = s if x >= s + d else s_final
        bag, pieces, covered = _split_once(current, w, cap)
        for v in bag:
            for u, wt in H.adj[v].items():
                if u in residual and (u not in bag or u > v):
                    deleted += wt
        parts.extend(pieces)
        steps.append(CutStep(bag, tuple(pieces), cap))
        residual -= covered
        x = _weight(residual, w)
        if cap == s_final or not residual:
            break
        current = normalize(current.restrict(residual))
    if residual:
        parts.append(frozenset(residual))
    part = Partition.from_parts(graph, parts)
    labels = part.labels
    cut = math.fsum(wt for u, v, wt in H.edges if labels[u] != labels[v])
    return CutCertificate(
        part,
        [st.bag for st in steps],
        s,
        s_final,
        cut,
        deleted,
        claimed,
        score(graph, part),
        steps=steps,
    )


def spanning_structure_edges(graph: Graph) -> list[int]:
    """Edge indices outside a spanning forest plus one extra edge per component.

    What remains after deleting them is a spanning subgraph whose components
    each contain exactly one cycle, so ``|E'| = m - n`` for unit weights.

    Raises:
        NoExtraEdgeError: if some component is a tree.
    """
    inc: list[list[int]] = [[] for _ in range(graph.n)]
    for idx, (u, v, _) in enumerate(graph.edges):
        inc[u].append(idx)
        if v != u:
            inc[v].append(idx)
    keep = set()
    seen = [False] * graph.n
    for start in range(graph.n):
        if seen[start]:
            continue
        seen[start] = True
        tree_edges = set()
        comp_edges = []
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for idx in inc[x]:
                comp_edges.append(idx)
                u, v, _ = graph.edges[idx]
                y = v if u == x else u
                if not seen[y]:
                    seen[y] = True
                    tree_edges.add(idx)
                    queue.append(y)
        spare = sorted(set(comp_edges) - tree_edges)
        if not spare:
            raise NoExtraEdgeError(f"component of vertex {start} is a tree")
        keep |= tree_edges
        keep.add(spare[0])
    return [i for i in range(len(graph.edges)) if i not in keep]


def unicyclic_lower_bound(graph: Graph) -> tuple[float, CutCertificate]:
    """Lower bound ``2/r - 2 sqrt(6/n)`` for an ``r``-regular graph, with a witness partition.

    Keeps a spanning forest plus one edge per component (width 2 after
    decomposition) and cuts along it.
    """
    r = graph.regular_degree()
    if r is None or r < 2 or not graph.is_unit_weight():
        raise DomainError("needs a unit-weight r-regular graph with r >= 2")
    extra = spanning_structure_edges(graph)
    H = graph.without_edges(extra)
    td = decompose_unicyclic(H)
    cert = cut_partition(graph, extra, td, 2)
    bound = 2.0 / r - 2.0 * math.sqrt(6.0 / graph.n)
    return bound, cert
