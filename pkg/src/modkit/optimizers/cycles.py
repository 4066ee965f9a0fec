"""Exact modularity of cycles and disjoint unions of cycles.

For a 2-regular graph on ``n`` vertices an optimal partition never spans
two components and cuts each cycle ``C_t`` into contiguous arcs, so
``1 - q*`` is a sum over components of the cheapest *n-cost*

    F_k(t) = k/n + (sizes of the k arcs, squared and summed) / n^2,

minimised by balanced arcs. :class:`CostTable` holds this cost, its convex
relaxation ``f_k`` and the unit cost ``g_k = f_k / t``.
"""

from __future__ import annotations

import math

from ..errors import DomainError
from ..generators import cycle_union
from ..graph import Graph

GAMMA = 5 / math.sqrt(6)


class CostTable:
    """n-costs of splitting a cycle component, for ambient vertex count ``n``."""

    gamma = GAMMA

    def __init__(self, n: int):
        if n < 1:
            raise DomainError(f"ambient vertex count must be positive, got {n}")
        self.n = n

    def F(self, k: int, t: int) -> float:
        if not 1 <= k <= t:
            raise DomainError(f"need 1 <= k <= t, got k={k}, t={t}")
        n = self.n
        if k == 1:
            return t * t / (n * n)
        a, b = divmod(t, k)
        return k / n + ((k - b) * a * a + b * (a + 1) ** 2) / (n * n)

    def f(self, k: int, t: float) -> float:
        n = self.n
        if k == 1:
            return t * t / (n * n)
        return k / n + t * t / (k * n * n)

    def g(self, k: int, t: float) -> float:
        return self.f(k, t) / t

    def _window(self, t: float, upper: int | None) -> list[int]:
        # f_k is convex in k with real minimiser t/sqrt(n); the integer
        # rounding term b(k-b)/(kn^2) is far smaller than the gap to k0 +- 3.
        k0 = int(round(t / math.sqrt(self.n)))
        lo = max(2, k0 - 3)
        hi = k0 + 3 if upper is None else min(upper, k0 + 3)
        return [1] + list(range(lo, hi + 1))

    def F_star(self, t: int) -> tuple[float, int]:
        """Cheapest exact split of ``C_t``; ties go to the smaller ``k``."""
        best, arg = math.inf, 0
        for k in self._window(t, t):
            c = self.F(k, t)
            if c < best:
                best, arg = c, k
        return best, arg

    def F_star_scan(self, t: int) -> tuple[float, int]:
        """Same as :meth:`F_star` but scanning every ``k`` (slow reference)."""
        best, arg = math.inf, 0
        for k in range(1, t + 1):
            c = self.F(k, t)
            if c < best:
                best, arg = c, k
        return best, arg

    def f_star(self, t: float) -> float:
        return min(self.f(k, t) for k in self._window(t, None))

    def g_star(self, t: float) -> float:
        return self.f_star(t) / t

    def crossing(self, k: int) -> float:
        """Where ``g_k`` and ``g_{k+1}`` meet (k >= 2)."""
        return math.sqrt(k * (k + 1) * self.n)


def exact_cycle(n: int) -> tuple[float, int]:
    """``q*(C_n)`` and the optimal number of arcs."""
    if n < 3:
        raise DomainError(f"a cycle needs n >= 3, got {n}")
    cost, k = CostTable(n).F_star(n)
    return 1.0 - cost, k


def exact_two_regular(cycle_lengths) -> tuple[float, list[tuple[int, int]]]:
    """Exact modularity of a disjoint union of cycles.

    Returns:
        ``(q, splits)`` where ``splits`` lists ``(length, optimal arc count)``
        per cycle in input order.
    """
    lengths = [int(t) for t in cycle_lengths]
    if not lengths or any(t < 3 for t in lengths):
        raise DomainError(f"cycle lengths must all be >= 3, got {lengths}")
    table = CostTable(sum(lengths))
    costs, splits = [], []
    for t in lengths:
        c, k = table.F_star(t)
        costs.append(c)
        splits.append((t, k))
    return 1.0 - math.fsum(costs), splits


def near_extremal_cycle_lengths(n: int) -> list[int]:
    if n < 54:
        raise DomainError(f"near-extremal construction needs n >= 54, got {n}")
    count = math.ceil(math.sqrt(n / 6))
    a, b = divmod(n, count)
    return [a + 1] * b + [a] * (count - b)


def near_extremal_two_regular(n: int) -> Graph:
    """A 2-regular graph of ``ceil(sqrt(n/6))`` near-equal cycles, close to the least modular."""
    return cycle_union(near_extremal_cycle_lengths(n))
