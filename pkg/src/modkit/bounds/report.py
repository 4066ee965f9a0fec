"""Collect bounds into a report and check that lower and upper entries agree."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from ..errors import DomainError
from ..graph import Graph
from . import closed_forms as cf
from .expansion import expansion_upper_bound
from .spectral import spectral_upper

KINDS = ("deterministic", "whp", "asymptotic")

# scope names what is bounded:
#   graph        q* of the given graph
#   min_regular  least q* over r-regular graphs on n vertices
#   max_regular  largest q* over r-regular graphs on n vertices
#   random       q* of a random r-regular graph
REGISTRY = {
    "q2_minus_asymp": ("asymptotic", "exact", "min_regular"),
    "q2_plus_exact": ("deterministic", "exact", "max_regular"),
    "qr_plus_upper": ("deterministic", "upper", "max_regular"),
    "g_r_lower": ("deterministic", "lower", "max_regular"),
    "unicyclic_lower": ("deterministic", "lower", "min_regular"),
    "conn_upper": ("deterministic", "upper", "graph"),
    "two_edge_conn_upper": ("deterministic", "upper", "graph"),
    "bw_lower": ("whp", "lower", "random"),
    "spectral_upper": ("deterministic", "upper", "graph"),
    "expansion_upper": ("whp", "upper", "random"),
    "sqrt_r_lower": ("asymptotic", "lower", "random"),
    "sqrt_r_upper": ("asymptotic", "upper", "random"),
}

# a lower bound on the least value also bounds every other quantity from below, etc.
_LOWER_IMPLIES = {
    "min_regular": {"min_regular", "graph", "random", "max_regular"},
    "graph": {"graph", "max_regular"},
    "random": {"random", "max_regular"},
    "max_regular": {"max_regular"},
}


@dataclass(frozen=True)
class BoundEntry:
    name: str
    value: float
    kind: str
    side: str
    scope: str
    inputs: dict = field(default_factory=dict)


@dataclass
class BoundsReport:
    entries: list[BoundEntry] = field(default_factory=list)

    def add(self, name: str, value: float, **inputs) -> None:
        if name not in REGISTRY:
            raise DomainError(f"unknown bound name {name!r}")
        kind, side, scope = REGISTRY[name]
        self.entries.append(BoundEntry(name, float(value), kind, side, scope, dict(inputs)))

    def extend(self, other: "BoundsReport") -> None:
        self.entries.extend(other.entries)

    def get(self, name: str) -> float | None:
        for e in self.entries:
            if e.name == name:
                return e.value
        return None

    def as_dict(self) -> dict[str, float]:
        return {e.name: e.value for e in self.entries}

    def rows(self) -> list[dict]:
        return [asdict(e) for e in self.entries]

    def conflicts(self, tol: float = 1e-12) -> list[tuple[str, str]]:
        """Pairs ``(lower, upper)`` with lower > upper, ignoring asymptotic entries.

        Only whp entries are compared with whp entries of the random scope;
        deterministic entries are compared with everything in their reach.
        """
        lows = [e for e in self.entries if e.kind != "asymptotic" and e.side in ("lower", "exact")]
        ups = [e for e in self.entries if e.kind != "asymptotic" and e.side in ("upper", "exact")]
        bad = []
        for lo in lows:
            for up in ups:
                if lo is up:
                    continue
                if up.scope not in _LOWER_IMPLIES[lo.scope]:
                    continue
                if lo.kind == "whp" and up.kind == "whp" and lo.scope != up.scope:
                    continue
                if lo.value > up.value + tol:
                    bad.append((lo.name, up.name))
        return bad


def closed_forms(n: int, r: int) -> BoundsReport:
    """Formula bounds for ``r``-regular graphs on ``n`` vertices.

    Raises:
        DomainError: if no such graph exists.
    """
    cf.check_feasible(n, r)
    rep = BoundsReport()
    if r == 2:
        rep.add("q2_plus_exact", cf.q2_plus_exact(n), n=n)
        rep.add("q2_minus_asymp", cf.q2_minus_asymp(n), n=n)
    if cf.g_r_attainable(n, r):
        rep.add("g_r_lower", cf.g_r(n, r), n=n, r=r)
    rep.add("qr_plus_upper", cf.qr_plus_upper(n, r), n=n, r=r)
    if r >= 2:
        rep.add("unicyclic_lower", cf.unicyclic_lower(n, r), n=n, r=r)
    return rep


def random_regular_bounds(r: int, n: int | None = None, grid_size: int = 1000) -> BoundsReport:
    """Whp and asymptotic bounds for random ``r``-regular graphs."""
    rep = BoundsReport()
    if r in cf.BISECTION_RATIOS:
        rep.add("bw_lower", cf.bisection_lower(n, r), r=r, bw_ratio=cf.BISECTION_RATIOS[r])
    if r >= 3:
        rep.add("expansion_upper", expansion_upper_bound(r, grid_size), r=r, grid_size=grid_size)
    if r >= 1:
        rep.add("sqrt_r_lower", cf.sqrt_r_lower(r), r=r)
        rep.add("sqrt_r_upper", cf.sqrt_r_upper(r), r=r)
    return rep


def _has_bridge(graph: Graph) -> bool:
    """Iterative bridge search; parallel edges are never bridges."""
    inc = [[] for _ in range(graph.n)]
    for idx, (u, v, _) in enumerate(graph.edges):
        if u != v:
            inc[u].append((v, idx))
            inc[v].append((u, idx))
    disc = [-1] * graph.n
    low = [0] * graph.n
    clock = 0
    for root in range(graph.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            v, via, it = stack[-1]
            for u, idx in it:
                if idx == via:
                    continue
                if disc[u] < 0:
                    disc[u] = low[u] = clock
                    clock += 1
                    stack.append((u, idx, iter(inc[u])))
                    break
                low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        return True
    return False


def graph_bounds(graph: Graph, grid_size: int = 1000, include_random: bool = False) -> BoundsReport:
    """Every bound that applies to ``graph``; random-graph entries only on request."""
    rep = BoundsReport()
    m = graph.total_weight
    if graph.is_connected() and m >= 1 and graph.is_unit_weight():
        rep.add("conn_upper", cf.connectivity_upper(m), m=m)
        if not _has_bridge(graph):
            rep.add("two_edge_conn_upper", cf.connectivity_upper(m, True), m=m)
    r = graph.regular_degree()
    if r is not None and graph.n >= 2 and r >= 1:
        if graph.is_simple() and graph.is_unit_weight():
            rep.extend(closed_forms(graph.n, int(r)))
        rep.add("spectral_upper", spectral_upper(graph), n=graph.n, r=r)
        if include_random:
            rep.extend(random_regular_bounds(int(r), graph.n, grid_size))
    return rep
