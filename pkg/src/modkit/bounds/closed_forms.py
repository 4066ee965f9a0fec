"""Closed-form modularity bounds for regular graphs and for connected graphs."""

from __future__ import annotations

import math

from ..errors import DomainError, MissingInputError

# whp bisection width / n of random r-regular graphs
BISECTION_RATIOS = {9: 1.2317, 10: 1.4278, 11: 1.624, 12: 1.823}


def check_feasible(n: int, r: int) -> None:
    if r < 0 or n < r + 1 or (n * r) % 2:
        raise DomainError(f"no {r}-regular simple graph on {n} vertices")


def q2_plus_exact(n: int) -> float:
    """Largest modularity of any 2-regular graph on ``n`` vertices."""
    if n < 3:
        raise DomainError(f"a 2-regular graph needs n >= 3, got {n}")
    penalty = (0, 4, 8)[n % 3]
    return 1 - 3 / n - penalty / n**2


def g_r(n: int, r: int) -> float:
    """Components-partition score of the densest-clique packing; equals the maximum for large ``n``."""
    check_feasible(n, r)
    b = n % (r + 1)
    extra = r + 2 + (r % 2)
    return 1 - (r + 1) / n - b * extra / n**2


def g_r_floor(n: int, r: int) -> float:
    """Lower envelope ``1 - (r+1)/n - r(r+2)/n^2`` of :func:`g_r`."""
    return 1 - (r + 1) / n - r * (r + 2) / n**2


def qr_plus_upper(n: int, r: int) -> float:
    """No ``r``-regular graph on ``n`` vertices beats this; tight iff ``r+1`` divides ``n``."""
    check_feasible(n, r)
    return 1 - (r + 1) / n


def g_r_attainable(n: int, r: int) -> bool:
    """Whether the block construction behind :func:`g_r` exists for this ``(n, r)``."""
    if r == 2 and n == 5:
        return True
    a, b = divmod(n, r + 1)
    if r % 2 == 0:
        return a >= b
    return b % 2 == 0 and a >= b // 2


def unicyclic_lower(n: int, r: int) -> float:
    """Every ``r``-regular graph on ``n`` vertices has modularity at least this (may be negative)."""
    return 2 / r - 2 * math.sqrt(6 / n)


def q2_minus_asymp(n: int) -> float:
    """Leading terms of the least modularity of a 2-regular graph, up to ``O(1/n)``."""
    return 1 - 5 / math.sqrt(6 * n)


def connectivity_upper(m: float, two_edge_connected: bool = False) -> float:
    """Upper bound on ``q*`` of a connected graph with ``m`` edges.

    ``1 - 2/sqrt(m) + 1/m`` in general, ``1 - 2/sqrt(m)`` if no edge is a bridge.
    The second form only covers partitions with two or more parts, so it is
    clamped at 0 (the single part) for ``m < 4``.
    """
    if m < 1:
        raise DomainError(f"need m >= 1, got {m}")
    base = 1 - 2 / math.sqrt(m)
    return max(0.0, base) if two_edge_connected else base + 1 / m


def bisection_lower(n: int | None, r: int, bw_ratio: float | None = None) -> float:
    """Lower bound from a bisection of width ``bw_ratio * n``.

    ``n=None`` (or even ``n``) drops the ``1/(2n^2)`` odd-size correction.

    Raises:
        MissingInputError: if no ratio is given and ``r`` has no built-in value.
    """
    if bw_ratio is None:
        if r not in BISECTION_RATIOS:
            raise MissingInputError(f"no built-in bisection ratio for r={r}; pass bw_ratio")
        bw_ratio = BISECTION_RATIOS[r]
    if bw_ratio < 0:
        raise DomainError("bisection ratio must be non-negative")
    value = 0.5 - 2 * bw_ratio / r
    if n is not None and n % 2:
        value -= 1 / (2 * n * n)
    return value


def sqrt_r_lower(r: int) -> float:
    """Asymptotic whp lower bound ``0.7631/sqrt(r)`` for random ``r``-regular graphs."""
    return 0.7631 / math.sqrt(r)


def sqrt_r_upper(r: int) -> float:
    """Asymptotic whp upper bound ``2/sqrt(r)`` for random ``r``-regular graphs."""
    return 2 / math.sqrt(r)
