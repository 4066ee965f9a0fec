"""Weighted multigraphs, vertex partitions and exact modularity scoring.

Conventions used throughout the package:

* a loop ``(v, v, w)`` contributes ``2w`` to ``degree(v)`` and ``w`` to the
  internal weight of the part holding ``v``;
* parallel edges are kept as separate entries of :attr:`Graph.edges` but are
  summed in the adjacency maps;
* ``W`` is the total edge weight, which equals the edge count ``m`` for
  unit-weight graphs.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .errors import DomainError, InvalidPartitionError

Edge = tuple[int, int, float]


class Graph:
    """Undirected weighted multigraph on vertices ``0..n-1``.

    Instances are treated as immutable once built.
    """

    __slots__ = ("n", "edges", "degree", "total_weight", "adj", "loops")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise DomainError(f"vertex count must be non-negative, got {n}")
        normalized: list[Edge] = []
        degree = [0.0] * n
        adj: list[dict[int, float]] = [dict() for _ in range(n)]
        loops = [0.0] * n
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            else:
                u, v, w = e
                w = float(w)
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if w < 0 or math.isnan(w):
                raise DomainError(f"edge ({u}, {v}) has invalid weight {w}")
            if u > v:
                u, v = v, u
            normalized.append((u, v, w))
            if u == v:
                loops[u] += w
                degree[u] += 2 * w
            else:
                adj[u][v] = adj[u].get(v, 0.0) + w
                adj[v][u] = adj[v].get(u, 0.0) + w
                degree[u] += w
                degree[v] += w
        self.n = n
        self.edges = tuple(normalized)
        self.degree = tuple(degree)
        self.total_weight = math.fsum(e[2] for e in normalized)
        self.adj = tuple(adj)
        self.loops = tuple(loops)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, W={self.total_weight:g})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and sorted(self.edges) == sorted(other.edges)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.edges))))

    @property
    def m(self) -> int:
        """Number of edge entries (parallel edges counted separately)."""
        return len(self.edges)

    @property
    def max_degree(self) -> float:
        return max(self.degree, default=0.0)

    def neighbors(self, v: int) -> list[int]:
        return list(self.adj[v])

    def is_simple(self) -> bool:
        seen = set()
        for u, v, _ in self.edges:
            if u == v or (u, v) in seen:
                return False
            seen.add((u, v))
        return True

    def is_unit_weight(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)

    def regular_degree(self) -> int | None:
        """Return ``r`` if every vertex has integer degree ``r``, else None."""
        if self.n == 0:
            return None
        d = self.degree[0]
        if d != int(d) or any(x != d for x in self.degree):
            return None
        return int(d)

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack = [s]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def without_edges(self, indices: Iterable[int]) -> "Graph":
        """Copy of the graph with the edges at the given positions removed."""
        drop = set(indices)
        return Graph(self.n, (e for i, e in enumerate(self.edges) if i not in drop))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the old labels."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub = [(index[u], index[v], w) for u, v, w in self.edges if u in index and v in index]
        return Graph(len(keep), sub), keep

    def adjacency_matrix(self):
        """Symmetric scipy CSR adjacency; a loop of weight w sits on the diagonal as 2w."""
        import numpy as np
        from scipy.sparse import coo_matrix

        rows, cols, vals = [], [], []
        for u, v, w in self.edges:
            if u == v:
                rows.append(u)
                cols.append(u)
                vals.append(2 * w)
            else:
                rows += [u, v]
                cols += [v, u]
                vals += [w, w]
        return coo_matrix(
            (np.asarray(vals, dtype=float), (rows, cols)), shape=(self.n, self.n)
        ).tocsr()


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; vertices of later graphs are shifted past earlier ones."""
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset, w) for u, v, w in g.edges)
        offset += g.n
    return Graph(offset, edges)


def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    """Relabel parts ``0, 1, ...`` in order of first appearance (a restricted growth string)."""
    mapping: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in mapping:
            mapping[x] = len(mapping)
        out.append(mapping[x])
    return tuple(out)


class Partition:
    """A vertex partition of a specific graph, with per-part summaries.

    Attributes:
        labels: canonical part id of every vertex.
        sizes: member count of each part.
        internal: internal edge weight ``e(A)`` of each part.
        volume: degree sum ``vol(A)`` of each part.
    """

    __slots__ = ("n", "labels", "sizes", "internal", "volume")

    def __init__(self, graph: Graph, labels: Sequence[int]):
        if len(labels) != graph.n:
            raise InvalidPartitionError(
                f"partition covers {len(labels)} vertices, graph has {graph.n}"
            )
        try:
            raw = [operator.index(x) for x in labels]
        except TypeError:
            raise InvalidPartitionError("part ids must be integers") from None
        self.n = graph.n
        self.labels = canonical_labels(raw)
        k = max(self.labels, default=-1) + 1
        sizes = [0] * k
        volume = [0.0] * k
        internal = [0.0] * k
        for v, p in enumerate(self.labels):
            sizes[p] += 1
            volume[p] += graph.degree[v]
        for u, v, w in graph.edges:
            if self.labels[u] == self.labels[v]:
                internal[self.labels[u]] += w
        self.sizes = tuple(sizes)
        self.internal = tuple(internal)
        self.volume = tuple(volume)

    @classmethod
    def from_parts(cls, graph: Graph, parts: Iterable[Iterable[int]]) -> "Partition":
        labels = [-1] * graph.n
        for i, part in enumerate(parts):
            for v in part:
                if not 0 <= v < graph.n:
                    raise InvalidPartitionError(f"unknown vertex {v}")
                if labels[v] != -1:
                    raise InvalidPartitionError(f"vertex {v} appears in two parts")
                labels[v] = i
        missing = [v for v, x in enumerate(labels) if x == -1]
        if missing:
            raise InvalidPartitionError(f"vertices {missing[:5]} are not covered")
        return cls(graph, labels)

    @classmethod
    def singletons(cls, graph: Graph) -> "Partition":
        return cls(graph, range(graph.n))

    @classmethod
    def whole(cls, graph: Graph) -> "Partition":
        return cls(graph, [0] * graph.n)

    @property
    def k(self) -> int:
        return len(self.sizes)

    def parts(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, p in enumerate(self.labels):
            out[p].append(v)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"Partition(k={self.k}, sizes={list(self.sizes)})"


@dataclass(frozen=True)
class ScoreBreakdown:
    q: float
    q_E: float
    q_D: float


def _labels_of(graph: Graph, partition) -> Sequence[int]:
    labels = partition.labels if isinstance(partition, Partition) else list(partition)
    if len(labels) != graph.n:
        raise InvalidPartitionError(
            f"partition covers {len(labels)} vertices, graph has {graph.n}"
        )
    return labels


def score(graph: Graph, partition) -> ScoreBreakdown:
    """Modularity of a partition together with its edge-contribution and degree tax.

    ``partition`` is a :class:`Partition` or any sequence of part ids, one
    per vertex. Everything is recomputed from the graph, so a partition built
    for a different graph on the same vertex count is scored correctly.
    """
    labels = _labels_of(graph, partition)
    W = graph.total_weight
    if W == 0:
        return ScoreBreakdown(1.0, 1.0, 0.0)
    internal: dict[int, list[float]] = {}
    volume: dict[int, list[float]] = {}
    for v, p in enumerate(labels):
        volume.setdefault(p, []).append(graph.degree[v])
    for u, v, w in graph.edges:
        if labels[u] == labels[v]:
            internal.setdefault(labels[u], []).append(w)
    q_E = math.fsum(math.fsum(ws) for ws in internal.values()) / W
    q_D = math.fsum(math.fsum(ds) ** 2 for ds in volume.values()) / (4 * W * W)
    return ScoreBreakdown(q_E - q_D, q_E, q_D)


def merge_delta(graph: Graph, partition: Partition, a: int, b: int) -> float:
    """Change in modularity from merging parts ``a`` and ``b``."""
    if a == b:
        return 0.0
    W = graph.total_weight
    labels = partition.labels
    cross = math.fsum(
        w for u, v, w in graph.edges if {labels[u], labels[v]} == {a, b}
    )
    return cross / W - 2 * partition.volume[a] * partition.volume[b] / (4 * W * W)


# ---------------------------------------------------------------------------
# text formats


def _open_text(source):
    if hasattr(source, "read"):
        return source, False
    return open(source, "r", encoding="utf-8"), True


def parse_edgelist(lines: Iterable[str]) -> Graph:
    """Parse ``u v [w]`` lines; ``#`` starts a comment, ``# n=<count>`` fixes the vertex count."""
    edges = []
    n_declared = None
    top = -1
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n="):
                n_declared = int(body[2:])
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise DomainError(f"line {lineno}: expected 'u v [w]', got {raw.rstrip()!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
            w = float(fields[2]) if len(fields) == 3 else 1.0
        except ValueError as exc:
            raise DomainError(f"line {lineno}: {exc}") from None
        if u < 0 or v < 0:
            raise DomainError(f"line {lineno}: negative vertex index")
        edges.append((u, v, w))
        top = max(top, u, v)
    n = top + 1 if n_declared is None else n_declared
    return Graph(n, edges)


def read_edgelist(source) -> Graph:
    fh, close = _open_text(source)
    try:
        return parse_edgelist(fh)
    finally:
        if close:
            fh.close()


def format_weight(w: float) -> str:
    return str(int(w)) if w == int(w) else repr(w)


def write_edgelist(graph: Graph, fh: IO[str]) -> None:
    fh.write(f"# n={graph.n}\n")
    unit = graph.is_unit_weight()
    for u, v, w in graph.edges:
        if unit:
            fh.write(f"{u} {v}\n")
        else:
            fh.write(f"{u} {v} {format_weight(w)}\n")


def read_partition(source, n: int | None = None) -> list[int]:
    """Read ``v<TAB>part_id`` lines into a label list indexed by vertex."""
    fh, close = _open_text(source)
    try:
        pairs = {}
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise InvalidPartitionError(f"line {lineno}: expected 'v<TAB>part'")
            v, p = int(fields[0]), int(fields[1])
            if v in pairs:
                raise InvalidPartitionError(f"vertex {v} listed twice")
            pairs[v] = p
    finally:
        if close:
            fh.close()
    size = n if n is not None else (max(pairs) + 1 if pairs else 0)
    if set(pairs) != set(range(size)):
        unknown = sorted(set(pairs) - set(range(size)))
        if unknown:
            raise InvalidPartitionError(f"partition references unknown vertex {unknown[0]}")
        raise InvalidPartitionError("partition does not cover every vertex")
    return [pairs[v] for v in range(size)]


def write_partition(partition, fh: IO[str]) -> None:
    labels = partition.labels if isinstance(partition, Partition) else partition
    for v, p in enumerate(labels):
        fh.write(f"{v}\t{p}\n")
