"""Named graph families and configuration-model sampling of random regular graphs.

Randomness comes from numpy's ``PCG64`` bit generator seeded through
``SeedSequence``; replica streams are derived with ``spawn_key`` so a
``(seed, replica)`` pair always yields the same sample on every platform.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, DomainError, SamplingError
from .graph import Graph, disjoint_union

DEFAULT_MAX_ATTEMPTS = 10**6


def make_rng(seed=None, *keys: int) -> np.random.Generator:
    """Build a PCG64 generator from an int seed, optionally derived by ``keys``.

    A ``Generator`` passed as ``seed`` is returned unchanged (``keys`` must be empty).
    """
    if isinstance(seed, np.random.Generator):
        if keys:
            raise ValueError("cannot derive a child stream from a live Generator")
        return seed
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    else:
        ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(ss))


# ---------------------------------------------------------------------------
# deterministic families


def cycle(n: int) -> Graph:
    if n < 3:
        raise ConstructionError(f"a simple cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ConstructionError(f"a path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ConstructionError(f"K_n needs n >= 1, got {n}")
    return Graph(n, itertools.combinations(range(n), 2))


def complete_multipartite(sizes) -> Graph:
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise ConstructionError(f"part sizes must be positive, got {sizes}")
    starts = np.cumsum([0] + sizes)
    edges = []
    for i, j in itertools.combinations(range(len(sizes)), 2):
        for u in range(starts[i], starts[i + 1]):
            for v in range(starts[j], starts[j + 1]):
                edges.append((int(u), int(v)))
    return Graph(int(starts[-1]), edges)


def star(m: int) -> Graph:
    """``K_{1,m}`` with centre 0."""
    if m < 1:
        raise ConstructionError(f"a star needs m >= 1 leaves, got {m}")
    return Graph(m + 1, [(0, i) for i in range(1, m + 1)])


def clique_pack(n: int, r: int) -> Graph:
    """``n/(r+1)`` disjoint copies of ``K_{r+1}``."""
    if r < 0 or n < r + 1 or n % (r + 1):
        raise ConstructionError(f"clique pack needs (r+1) | n, got n={n}, r={r}")
    return disjoint_union(*[complete(r + 1)] * (n // (r + 1)))


def h_r_plus_2(r: int) -> Graph:
    """``K_{r+2}`` minus the perfect matching ``{0,1}, {2,3}, ...`` (r even)."""
    if r < 0 or r % 2:
        raise ConstructionError(f"H_(r+2) needs even r >= 0, got {r}")
    k = r + 2
    return Graph(k, [(u, v) for u, v in itertools.combinations(range(k), 2) if not (u % 2 == 0 and v == u + 1)])


def h_r_plus_3(r: int) -> Graph:
    """``K_{r+3}`` minus the Hamilton cycle ``0-1-...-(r+2)-0``."""
    if r < 0:
        raise ConstructionError(f"H_(r+3) needs r >= 0, got {r}")
    k = r + 3
    ham = {(i, i + 1) for i in range(k - 1)} | {(0, k - 1)}
    return Graph(k, [e for e in itertools.combinations(range(k), 2) if e not in ham])


def extremal_regular(n: int, r: int) -> Graph:
    """The most modular ``r``-regular graph on ``n`` vertices for large ``n``.

    With ``n = a(r+1) + b``: for even ``r``, ``b`` copies of ``H_{r+2}`` and
    ``a-b`` copies of ``K_{r+1}``; for odd ``r``, ``b/2`` copies of
    ``H_{r+3}`` and ``a-b/2`` copies of ``K_{r+1}``. ``(n, r) = (5, 2)`` gives
    ``C_5``, the optimum in that lone small case.
    """
    if r < 1:
        raise ConstructionError(f"extremal construction needs r >= 1, got {r}")
    if (r * n) % 2 or n < r + 1:
        raise ConstructionError(f"no {r}-regular graph on {n} vertices")
    if r == 2 and n == 5:
        return cycle(5)
    a, b = divmod(n, r + 1)
    if r % 2 == 0:
        if a < b:
            raise ConstructionError(f"construction needs a >= b (n={n}, r={r}: a={a}, b={b})")
        blocks = [h_r_plus_2(r)] * b + [complete(r + 1)] * (a - b)
    else:
        if a < b // 2:
            raise ConstructionError(f"construction needs a >= b/2 (n={n}, r={r}: a={a}, b={b})")
        blocks = [h_r_plus_3(r)] * (b // 2) + [complete(r + 1)] * (a - b // 2)
    return disjoint_union(*blocks)


def cycle_union(lengths) -> Graph:
    """Disjoint union of cycles with the given lengths."""
    lengths = [int(t) for t in lengths]
    if not lengths:
        raise ConstructionError("need at least one cycle length")
    return disjoint_union(*(cycle(t) for t in lengths))


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))


def _need(spec: FamilySpec, count: int) -> tuple[int, ...]:
    if len(spec.params) != count:
        raise ConstructionError(f"{spec.kind} takes {count} parameter(s), got {len(spec.params)}")
    return spec.params


_BUILDERS = {
    "cycle": lambda s: cycle(*_need(s, 1)),
    "path": lambda s: path(*_need(s, 1)),
    "complete": lambda s: complete(*_need(s, 1)),
    "multipartite": lambda s: complete_multipartite(s.params),
    "star": lambda s: star(*_need(s, 1)),
    "cliquepack": lambda s: clique_pack(*_need(s, 2)),
    "hr2": lambda s: h_r_plus_2(*_need(s, 1)),
    "hr3": lambda s: h_r_plus_3(*_need(s, 1)),
    "extremal": lambda s: extremal_regular(*_need(s, 2)),
    "union": lambda s: cycle_union(s.params),
}

_ALIASES = {
    "complete_multipartite": "multipartite",
    "regular_clique_pack": "cliquepack",
    "H_r_plus_2": "hr2",
    "H_r_plus_3": "hr3",
    "extremal_regular": "extremal",
    "disjoint_union": "union",
}

FAMILY_NAMES = tuple(_BUILDERS)


def build(spec: FamilySpec) -> Graph:
    """Construct the graph named by ``spec`` (see :data:`FAMILY_NAMES`)."""
    kind = _ALIASES.get(spec.kind, spec.kind)
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ConstructionError(f"unknown family {spec.kind!r}") from None
    return builder(spec)


# ---------------------------------------------------------------------------
# configuration model


def _check_regular_params(n: int, r: int) -> None:
    if r < 1 or n < r + 1 or (n * r) % 2:
        raise ConstructionError(f"no {r}-regular graph on {n} vertices")


def _pairing(n: int, r: int, rng: np.random.Generator) -> np.ndarray:
    points = np.repeat(np.arange(n, dtype=np.int64), r)
    return rng.permutation(points).reshape(-1, 2)


def _is_simple_pairing(pairs: np.ndarray, n: int) -> bool:
    if np.any(pairs[:, 0] == pairs[:, 1]):
        return False
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keys = lo * n + hi
    return np.unique(keys).size == keys.size


def random_regular_multigraph(n: int, r: int, rng=None) -> Graph:
    """One uniform pairing of ``n*r`` half-edges; loops and parallel edges are kept."""
    _check_regular_params(n, r)
    rng = make_rng(rng)
    pairs = _pairing(n, r, rng)
    return Graph(n, pairs.tolist())


def random_regular(
    n: int, r: int, rng=None, method: str = "auto", max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> Graph:
    """Sample a simple ``r``-regular graph on ``n`` vertices.

    Methods:
        ``"pairing"``: whole-sample rejection on the configuration model; the
            first attempt uses the same random stream as
            :func:`random_regular_multigraph`, so the two agree whenever that
            pairing is simple.
        ``"steger-wormald"``: pair two random unpaired points at a time,
            rejecting only pairs that would create a loop or a multi-edge,
            restarting if the pairing gets stuck. Asymptotically uniform.
        ``"auto"``: ``"pairing"`` for ``r <= 5``, otherwise
            ``"steger-wormald"``; simple pairings become rare as ``r`` grows
            (acceptance is roughly ``exp(-(r^2-1)/4)``).
    """
    _check_regular_params(n, r)
    rng = make_rng(rng)
    if method == "auto":
        method = "pairing" if r <= 5 else "steger-wormald"
    if method == "pairing":
        for _ in range(max_attempts):
            pairs = _pairing(n, r, rng)
            if _is_simple_pairing(pairs, n):
                return Graph(n, pairs.tolist())
        raise SamplingError(f"no simple pairing in {max_attempts} attempts (n={n}, r={r})")
    if method == "steger-wormald":
        for _ in range(max_attempts):
            edges = _steger_wormald_attempt(n, r, rng)
            if edges is not None:
                return Graph(n, edges)
        raise SamplingError(f"Steger-Wormald failed {max_attempts} times (n={n}, r={r})")
    raise DomainError(f"unknown sampling method {method!r}")


def _steger_wormald_attempt(n: int, r: int, rng: np.random.Generator):
    free = np.repeat(np.arange(n, dtype=np.int64), r).tolist()
    adj = [set() for _ in range(n)]
    edges = []
    failures = 0
    draws: list[float] = []
    while free:
        if len(draws) < 2:
            draws = rng.random(4096).tolist()
        size = len(free)
        i = int(draws.pop() * size)
        j = int(draws.pop() * size)
        a, b = free[i], free[j]
        if i != j and a != b and b not in adj[a]:
            adj[a].add(b)
            adj[b].add(a)
            edges.append((a, b))
            for idx in sorted((i, j), reverse=True):
                free[idx] = free[-1]
                free.pop()
            failures = 0
            continue
        failures += 1
        if failures >= 64 and not _has_suitable_pair(free, adj):
            return None
    return edges


def _has_suitable_pair(free: list[int], adj: list[set]) -> bool:
    verts = sorted(set(free))
    for a, b in itertools.combinations(verts, 2):
        if b not in adj[a]:
            return True
    return False


def expected_cycle_count(k: int, n: int) -> float:
    """Expected number of ``k``-cycles in a random 2-regular pairing multigraph on ``n`` vertices.

    ``(n)_k / 2k`` vertex cycles, ``2^k`` ways to pick the half-edges used at
    each vertex, and probability ``1 / prod_{i<k} (2n - 2i - 1)`` that those
    ``k`` pairs all appear, giving ``(1/2k) * prod_{i<k} (2n - 2i) / (2n - 2i - 1)``.
    """
    if not (3 <= k <= n):
        raise DomainError(f"need 3 <= k <= n, got k={k}, n={n}")
    ratio = 1.0
    for i in range(k):
        ratio *= (2 * n - 2 * i) / (2 * n - 2 * i - 1)
    return ratio / (2 * k)
