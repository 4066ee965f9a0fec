"""Eigenvalue and densest-subset upper bounds for regular graphs."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ..errors import DomainError, NumericError
from ..graph import Graph

MAX_EXACT_N = 22


def _require_regular(graph: Graph) -> int:
    r = graph.regular_degree()
    if r is None or graph.n < 2:
        raise DomainError("needs a regular graph on at least 2 vertices")
    return r


def _top_deflated(matvec, n: int, tol: float, max_iter: int, seed: int) -> float:
    """Largest eigenvalue of a PSD operator restricted to the complement of the all-ones vector."""
    x = np.random.default_rng(seed).standard_normal(n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    for _ in range(max_iter):
        y = matvec(x)
        y -= y.mean()
        rho = float(x @ y)
        if np.linalg.norm(y - rho * x) <= tol * max(rho, 1.0):
            return rho
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        x = y / norm
    raise NumericError(f"power iteration did not converge in {max_iter} steps")


def second_eigenvalues(graph: Graph, tol: float = 1e-8, max_iter: int = 10**6) -> tuple[float, float]:
    """``(lambda_2, lambda_n)`` of the adjacency matrix of a regular graph."""
    r = _require_regular(graph)
    A = graph.adjacency_matrix()
    if graph.n == 2:
        # the only nontrivial eigenvector is (1, -1)
        v = np.array([1.0, -1.0])
        lam = float(v @ (A @ v)) / 2
        return lam, lam
    up = _top_deflated(lambda x: A @ x + r * x, graph.n, tol, max_iter, 0) - r
    down = r - _top_deflated(lambda x: r * x - A @ x, graph.n, tol, max_iter, 1)
    return up, down


def spectral_upper(graph: Graph, tol: float = 1e-8) -> float:
    """``lambda / r`` with ``lambda`` the largest nontrivial adjacency eigenvalue in absolute value."""
    r = _require_regular(graph)
    up, down = second_eigenvalues(graph, tol)
    return max(abs(up), abs(down)) / r


class BetaAlpha(NamedTuple):
    """Densest-subset excess and expansion quantities of a small regular graph.

    ``beta`` maximises ``dbar(S)/r - |S|/n`` over nonempty ``S``; ``beta_prime``
    does the same over ``|S| <= n/2``; ``alpha`` minimises
    ``|S|/n + e(S, V-S)/(r |S|)`` over ``|S| <= n/2``; ``profile`` lists
    ``(u, i_u)`` for ``u = 1/n .. floor(n/2)/n``.
    """

    beta: float
    beta_prime: float
    alpha: float
    profile: list[tuple[float, float]]


def _internal_weights(graph: Graph) -> np.ndarray:
    """Edge weight inside every vertex subset, indexed by bitmask."""
    n = graph.n
    A = np.zeros((n, n))
    for u, v, w in graph.edges:
        if u == v:
            A[u, u] += w
        else:
            A[u, v] += w
            A[v, u] += w
    e = np.zeros(1)
    for b in range(n):
        # weight from b to each subset of the lower vertices
        links = np.zeros(1)
        for u in range(b):
            links = np.concatenate([links, links + A[b, u]])
        e = np.concatenate([e, e + links + A[b, b]])
    return e


def beta_alpha_exact(graph: Graph) -> BetaAlpha:
    """Enumerate all vertex subsets (``n <= 22``)."""
    r = _require_regular(graph)
    n = graph.n
    if n > MAX_EXACT_N:
        raise DomainError(f"subset enumeration limited to n <= {MAX_EXACT_N}, got {n}")
    e = _internal_weights(graph)[1:]
    masks = np.arange(1, 1 << n, dtype=np.int64)
    size = np.bitwise_count(masks).astype(float)
    excess = 2 * e / (r * size) - size / n
    half = size <= n / 2
    cut = r * size - 2 * e
    beta = float(excess.max())
    beta_prime = float(excess[half].max())
    alpha = float((size[half] / n + cut[half] / (r * size[half])).min())
    ratio = cut / size
    profile = []
    best = math.inf
    for k in range(1, n // 2 + 1):
        best = min(best, float(ratio[size == k].min()))
        profile.append((k / n, best))
    return BetaAlpha(beta, beta_prime, alpha, profile)
