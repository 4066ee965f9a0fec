"""Tree decompositions: builders for forests and unicyclic graphs, validation,
normalisation, and the PACE ``.td`` text format."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from ..errors import DecompositionError, NotAForestError, NotUnicyclicError
from ..graph import Graph


class TreeDecomposition:
    """Bags ``X_i`` on the nodes ``0..N-1`` of a tree.

    Attributes:
        bags: one frozenset of graph vertices per tree node.
        tree_edges: sorted ``(i, j)`` pairs with ``i < j``.
    """

    __slots__ = ("bags", "tree_edges")

    def __init__(self, bags: Sequence[Iterable[int]], tree_edges: Iterable[tuple[int, int]] = ()):
        self.bags = tuple(frozenset(b) for b in bags)
        self.tree_edges = tuple(sorted((min(i, j), max(i, j)) for i, j in tree_edges))

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for i, j in self.tree_edges:
            nb[i].append(j)
            nb[j].append(i)
        return nb

    def restrict(self, vertices) -> "TreeDecomposition":
        """Intersect every bag with ``vertices``; valid for the induced subgraph."""
        keep = frozenset(vertices)
        return TreeDecomposition([b & keep for b in self.bags], self.tree_edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TreeDecomposition)
            and self.bags == other.bags
            and self.tree_edges == other.tree_edges
        )

    def __repr__(self) -> str:
        return f"TreeDecomposition(nodes={self.num_nodes}, width={self.width})"


@dataclass(frozen=True)
class Violation:
    """First failed condition: ``kind`` is one of tree, vertex, edge, subtree."""

    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def _tree_violation(td: TreeDecomposition) -> Violation | None:
    N = td.num_nodes
    if N == 0:
        return Violation("tree", "decomposition has no nodes")
    for i, j in td.tree_edges:
        if not (0 <= i < N and 0 <= j < N) or i == j:
            return Violation("tree", f"bad tree edge ({i}, {j})")
    if len(set(td.tree_edges)) != len(td.tree_edges) or len(td.tree_edges) != N - 1:
        return Violation("tree", f"{len(td.tree_edges)} edges on {N} nodes is not a tree")
    nb = td.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != N:
        return Violation("tree", "tree edges do not connect all nodes")
    return None


def _subtree_violation(td: TreeDecomposition) -> Violation | None:
    nb = td.neighbors()
    holders: dict[int, list[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders.setdefault(v, []).append(i)
    for v, nodes in sorted(holders.items()):
        inside = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y in inside and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(inside):
            return Violation("subtree", f"nodes holding vertex {v} are not connected in the tree")
    return None


def validate(graph: Graph, td: TreeDecomposition) -> Violation | None:
    """Check the three decomposition conditions; None means valid."""
    bad = _tree_violation(td)
    if bad:
        return bad
    covered = set().union(*td.bags)
    stray = sorted(v for v in covered if not 0 <= v < graph.n)
    if stray:
        return Violation("vertex", f"bag holds vertex {stray[0]} not in the graph")
    for v in range(graph.n):
        if v not in covered:
            return Violation("vertex", f"vertex {v} is in no bag")
    holders: dict[int, set[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders.setdefault(v, set()).add(i)
    for u, v, _ in graph.edges:
        if u != v and not holders[u] & holders[v]:
            return Violation("edge", f"edge ({u}, {v}) is in no bag")
    return _subtree_violation(td)


def check(graph: Graph, td: TreeDecomposition, width: int | None = None) -> None:
    """Raise :class:`DecompositionError` unless ``td`` is valid (and at most ``width`` wide)."""
    bad = validate(graph, td)
    if bad:
        raise DecompositionError(str(bad))
    if width is not None and td.width > width:
        raise DecompositionError(f"decomposition has width {td.width} > {width}")


# ---------------------------------------------------------------------------
# builders


def _component_edge_counts(graph: Graph, comps: list[list[int]]) -> list[int]:
    where = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            where[v] = idx
    counts = [0] * len(comps)
    for u, _, _ in graph.edges:
        counts[where[u]] += 1
    return counts


class _Builder:
    def __init__(self):
        self.bags: list[frozenset] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, bag, link: int | None = None) -> int:
        self.bags.append(frozenset(bag))
        node = len(self.bags) - 1
        if link is not None:
            self.edges.append((link, node))
        return node

    def result(self) -> TreeDecomposition:
        return TreeDecomposition(self.bags, self.edges)


def _hang_trees(graph: Graph, b: _Builder, start: dict[int, int], blocked: set[int]) -> None:
    """Attach bags ``{parent, v}`` for tree vertices reached by BFS from ``start``.

    ``start`` maps already-placed vertices to a node whose bag holds them.
    """
    home = dict(start)
    queue = deque(sorted(start))
    while queue:
        p = queue.popleft()
        for v in sorted(graph.adj[p]):
            if v in home or v in blocked:
                continue
            home[v] = b.add((p, v), home[p])
            queue.append(v)


def _tree_component(graph: Graph, comp: list[int], b: _Builder) -> int:
    root = comp[0]
    if len(comp) == 1:
        return b.add((root,))
    first = None
    prev = None
    home = {}
    for v in sorted(graph.adj[root]):
        prev = b.add((root, v), prev)
        if first is None:
            first = prev
        home[v] = prev
    queue = deque(sorted(graph.adj[root]))
    home[root] = first
    while queue:
        p = queue.popleft()
        for v in sorted(graph.adj[p]):
            if v in home:
                continue
            home[v] = b.add((p, v), home[p])
            queue.append(v)
    return first


def decompose_tree(graph: Graph) -> TreeDecomposition:
    """Width-1 decomposition of a forest: one bag per edge, singletons for isolated vertices."""
    comps = graph.components()
    counts = _component_edge_counts(graph, comps)
    if not graph.is_simple() or any(c != len(comp) - 1 for c, comp in zip(counts, comps)):
        raise NotAForestError("graph contains a cycle")
    b = _Builder()
    anchors = [_tree_component(graph, comp, b) for comp in comps]
    for a, c in zip(anchors, anchors[1:]):
        b.edges.append((a, c))
    return b.result()


def _cycle_of(graph: Graph, comp: list[int]) -> list[int]:
    """Vertices of the unique cycle of a unicyclic component, walked from its least vertex."""
    # count edge entries, not neighbours, so double edges and loops stay cycles
    deg = {v: 0 for v in comp}
    inc: dict[int, list[int]] = {v: [] for v in comp}
    members = set(comp)
    for u, v, _ in graph.edges:
        if u in members:
            deg[u] += 1
            deg[v] += 1
            inc[u].append(v)
            if u != v:
                inc[v].append(u)
    alive = set(comp)
    leaves = [v for v in comp if deg[v] == 1]
    while leaves:
        v = leaves.pop()
        alive.discard(v)
        for u in inc[v]:
            if u in alive:
                deg[u] -= 1
                if deg[u] == 1:
                    leaves.append(u)
    core = sorted(alive)
    if len(core) <= 2:
        return core
    order = [core[0]]
    prev = None
    cur = core[0]
    while True:
        nxt = min(u for u in inc[cur] if u in alive and u != prev and u != cur)
        if nxt == core[0]:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def decompose_unicyclic(graph: Graph) -> TreeDecomposition:
    """Width-2 decomposition when every component has at most one cycle.

    The cycle is fan-triangulated from its least vertex and the attached trees
    hang off as edge bags.
    """
    comps = graph.components()
    counts = _component_edge_counts(graph, comps)
    b = _Builder()
    anchors = []
    for comp, count in zip(comps, counts):
        if count > len(comp):
            raise NotUnicyclicError(f"component of vertex {comp[0]} has more than one cycle")
        if count < len(comp):
            anchors.append(_tree_component(graph, comp, b))
            continue
        ring = _cycle_of(graph, comp)
        anchor = ring[0]
        start: dict[int, int] = {}
        if len(ring) <= 2:
            node = b.add(ring)
            start = {v: node for v in ring}
        else:
            prev = None
            for i in range(1, len(ring) - 1):
                prev = b.add((anchor, ring[i], ring[i + 1]), prev)
                for v in (anchor, ring[i], ring[i + 1]):
                    start.setdefault(v, prev)
        anchors.append(start[anchor])
        _hang_trees(graph, b, start, set())
    for a, c in zip(anchors, anchors[1:]):
        b.edges.append((a, c))
    return b.result()


# ---------------------------------------------------------------------------
# normal form


def is_normal(td: TreeDecomposition) -> bool:
    """Adjacent bags differ in one element, siblings' bags differ, leaf bags are singletons."""
    if _tree_violation(td):
        return False
    nb = td.neighbors()
    for i, j in td.tree_edges:
        if len(td.bags[i] ^ td.bags[j]) != 1:
            return False
    for i, ns in enumerate(nb):
        if len({td.bags[j] for j in ns}) != len(ns):
            return False
        if len(ns) <= 1 and len(td.bags[i]) != 1:
            return False
    return True


def normalize(td: TreeDecomposition) -> TreeDecomposition:
    """Rewrite ``td`` into the normal form used by the cutting argument, same width.

    Raises:
        DecompositionError: if ``td`` is not a tree or breaks the subtree condition.
    """
    bad = _tree_violation(td) or _subtree_violation(td)
    if bad:
        raise DecompositionError(str(bad))
    bags = dict(enumerate(td.bags))
    adj = {i: set() for i in bags}
    for i, j in td.tree_edges:
        adj[i].add(j)
        adj[j].add(i)
    next_id = len(bags)

    def new_node(bag) -> int:
        nonlocal next_id
        node = next_id
        next_id += 1
        bags[node] = frozenset(bag)
        adj[node] = set()
        return node

    def link(i, j):
        adj[i].add(j)
        adj[j].add(i)

    def unlink(i, j):
        adj[i].discard(j)
        adj[j].discard(i)

    def absorb(keep, gone):
        for x in adj.pop(gone):
            adj[x].discard(gone)
            if x != keep:
                link(keep, x)
        del bags[gone]

    # empty leaves carry nothing
    changed = True
    while changed and len(bags) > 1:
        changed = False
        for i in sorted(bags):
            if len(adj[i]) <= 1 and not bags[i] and len(bags) > 1:
                for x in list(adj[i]):
                    unlink(i, x)
                del bags[i], adj[i]
                changed = True

    # contract equal neighbours
    changed = True
    while changed:
        changed = False
        for i, j in sorted((i, j) for i in adj for j in adj[i] if i < j):
            if i in bags and j in bags and j in adj[i] and bags[i] == bags[j]:
                absorb(i, j)
                changed = True

    # one element per step along every tree edge
    for i, j in sorted((i, j) for i in adj for j in adj[i] if i < j):
        a, b = bags[i], bags[j]
        if len(a ^ b) == 1:
            continue
        unlink(i, j)
        prev = i
        cur = set(a)
        for v in sorted(a - b):
            cur.discard(v)
            if frozenset(cur) == b:
                break
            node = new_node(cur)
            link(prev, node)
            prev = node
        for v in sorted(b - a):
            cur.add(v)
            if frozenset(cur) == b:
                break
            node = new_node(cur)
            link(prev, node)
            prev = node
        link(prev, j)

    # siblings with equal bags become one node
    changed = True
    while changed:
        changed = False
        for i in sorted(adj):
            if i not in adj:
                continue
            by_bag: dict[frozenset, int] = {}
            for j in sorted(adj[i]):
                if j not in adj:
                    continue
                twin = by_bag.get(bags[j])
                if twin is None:
                    by_bag[bags[j]] = j
                else:
                    absorb(twin, j)
                    changed = True

    # leaves shrink to single vertices
    pending = [i for i in sorted(adj) if len(adj[i]) <= 1 and len(bags[i]) > 1]
    while pending:
        i = pending.pop(0)
        neighbour_bags = {bags[x] for x in adj[i]}
        bag = bags[i]
        drop = min(v for v in bag if bag - {v} not in neighbour_bags)
        cur = set(bag)
        cur.discard(drop)
        prev = i
        while True:
            node = new_node(cur)
            link(prev, node)
            prev = node
            if len(cur) == 1:
                break
            cur.discard(min(cur))
        if len(adj[i]) <= 1:
            pending.append(i)

    order = sorted(bags)
    index = {old: new for new, old in enumerate(order)}
    edges = {(index[i], index[j]) for i in adj for j in adj[i] if i < j}
    return TreeDecomposition([bags[i] for i in order], edges)


# ---------------------------------------------------------------------------
# PACE-style text format: 1-based bag ids and vertices


def write_td(td: TreeDecomposition, n: int, fh: IO[str]) -> None:
    fh.write(f"s td {td.num_nodes} {td.width + 1} {n}\n")
    for i, bag in enumerate(td.bags, 1):
        members = " ".join(str(v + 1) for v in sorted(bag))
        fh.write(f"b {i} {members}".rstrip() + "\n")
    for i, j in td.tree_edges:
        fh.write(f"{i + 1} {j + 1}\n")


def parse_td(lines: Iterable[str]) -> tuple[TreeDecomposition, int]:
    header = None
    bags: dict[int, frozenset] = {}
    edges = []
    for lineno, raw in enumerate(lines, 1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "s":
            if len(fields) != 5 or fields[1] != "td":
                raise DecompositionError(f"line {lineno}: bad header {raw.rstrip()!r}")
            header = tuple(int(x) for x in fields[2:])
        elif fields[0] == "b":
            bags[int(fields[1]) - 1] = frozenset(int(v) - 1 for v in fields[2:])
        elif len(fields) == 2:
            edges.append((int(fields[0]) - 1, int(fields[1]) - 1))
        else:
            raise DecompositionError(f"line {lineno}: cannot parse {raw.rstrip()!r}")
    if header is None:
        raise DecompositionError("missing 's td' header")
    count, _, n = header
    if sorted(bags) != list(range(count)):
        raise DecompositionError(f"expected bags 1..{count}")
    return TreeDecomposition([bags[i] for i in range(count)], edges), n


def read_td(source) -> tuple[TreeDecomposition, int]:
    if hasattr(source, "read"):
        return parse_td(source)
    with open(source, encoding="utf-8") as fh:
        return parse_td(fh)
