"""Whp upper bound on the modularity of random regular graphs via edge expansion.

For each ``u`` on a grid, the first-moment exponent :func:`expansion_exponent`
is negative exactly for the ``y`` where sets of size ``un`` with at most
``y n`` boundary edges whp do not exist; its root ``y*`` gives ``i_u >= y*/u``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, NumericError


def _xlogx(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0, x * np.log(np.where(x > 0, x, 1.0)), 0.0)


def _exponent(r, u, y):
    head = 0.5 * r * np.log(r) + (r - 1) * (_xlogx(u) + _xlogx(1 - u))
    tail = _xlogx(y) + 0.5 * _xlogx(r * u - y) + 0.5 * _xlogx(r - r * u - y)
    return head - tail


def expansion_exponent(r: float, u: float, y: float) -> float:
    """Log of the expected number of ``un``-sets with ``yn`` boundary edges, per vertex.

    Valid for ``0 < u <= 1/2`` and ``0 <= y <= r u (1-u)``; uses ``0 log 0 = 0``.
    """
    if not (0 < u <= 0.5):
        raise DomainError(f"u must lie in (0, 1/2], got {u}")
    if not (0 <= y <= r * u * (1 - u)) or r <= 0:
        raise DomainError(f"y must lie in [0, r u (1-u)] = [0, {r * u * (1 - u)}], got {y}")
    return float(_exponent(r, u, y))


@dataclass(frozen=True)
class ExpansionProfile:
    """Grid of ``(u, lower bound on i_u, root y*)`` for degree ``r``.

    Attributes:
        alpha_lower: ``min(u + i_u/r) - epsilon/2``.
        upper_bound: ``1 - alpha_lower``, the whp upper bound on ``q*``.
    """

    r: int
    grid: tuple[tuple[float, float, float], ...]
    epsilon: float
    alpha_lower: float

    @property
    def upper_bound(self) -> float:
        return 1.0 - self.alpha_lower


def expansion_profile(r: int, grid_size: int = 1000, tol: float = 1e-10) -> ExpansionProfile:
    """Bisect for the root of the exponent at ``u = i/(2 grid_size)``, ``i = 1..grid_size``.

    Raises:
        DomainError: for ``r < 3`` or ``grid_size < 1``.
        NumericError: if the exponent does not change sign on some grid point.
    """
    if r < 3:
        raise DomainError(f"need r >= 3, got {r}")
    if grid_size < 1:
        raise DomainError(f"grid_size must be positive, got {grid_size}")
    u = np.arange(1, grid_size + 1) / (2.0 * grid_size)
    lo = np.zeros_like(u)
    hi = r * u * (1 - u)
    f_lo = _exponent(r, u, lo)
    f_hi = _exponent(r, u, hi)
    bad = np.flatnonzero((f_lo >= 0) | (f_hi <= 0))
    if bad.size:
        i = bad[0]
        raise NumericError(
            f"no sign change for r={r} at u={u[i]:.6g}: f(0)={f_lo[i]:.6g}, f(ru(1-u))={f_hi[i]:.6g}"
        )
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        neg = _exponent(r, u, mid) < 0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    y_star = lo
    i_u = y_star / u
    eps = 1.0 / grid_size
    alpha = float(np.min(u + i_u / r)) - eps / 2
    grid = tuple(zip(u.tolist(), i_u.tolist(), y_star.tolist()))
    return ExpansionProfile(r, grid, eps, alpha)


def expansion_upper_bound(r: int, grid_size: int = 1000) -> float:
    """Whp upper bound on the modularity of a random ``r``-regular graph."""
    return expansion_profile(r, grid_size).upper_bound
