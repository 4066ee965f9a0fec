"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records one ``criterion N: PASS|FAIL`` line (printed and echoed in
the terminal summary) before asserting, so a red criterion still reports.
"""

import math
import os
import time

import numpy as np
import pytest

from modkit import experiment
from modkit.bounds import (
    beta_alpha_exact,
    bisection_lower,
    expansion_upper_bound,
    g_r,
    q2_plus_exact,
    spectral_upper,
    unicyclic_lower,
)
from modkit.errors import ConstructionError
from modkit.exact import brute_force_optimum, random_partition_expectation
from modkit.generators import (
    complete,
    cycle,
    cycle_union,
    expected_cycle_count,
    extremal_regular,
    make_rng,
    random_regular,
    random_regular_multigraph,
)
from modkit.graph import Graph, Partition, score
from modkit.optimizers import OptimizerConfig, exact_cycle, exact_two_regular, louvain, reshuffle
from modkit.treelike import cut_partition, decompose_tree, decompose_unicyclic, unicyclic_lower_bound

import conftest
from oracles import sample_cycle_counts, sample_random_partition_q

EXPANSION_TABLE = [0.804, 0.684, 0.603, 0.544, 0.499, 0.463, 0.433, 0.408, 0.388, 0.370]
BISECTION_TABLE = {9: 0.226, 10: 0.214, 11: 0.204, 12: 0.196}
UNICYCLIC_TABLE = {3: 0.666, 4: 0.499, 5: 0.399, 6: 0.333, 7: 0.285, 8: 0.249}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE_RESULTS[number] = line
    print(line)


def _cycle_partitions(n, smallest=3):
    if n == 0:
        yield []
        return
    for t in range(smallest, n + 1):
        for rest in _cycle_partitions(n - t, t):
            yield [t] + rest


def _claimed(g, extra, t):
    m = g.total_weight
    extra_w = math.fsum(g.edges[i][2] for i in extra)
    return 1 - 2 * math.sqrt((t + 1) * g.max_degree / m) - extra_w / m


# ---------------------------------------------------------------- 1


def test_criterion_1_exact_formulas():
    start = time.perf_counter()
    worst_max = worst_split = worst_cycle = 0.0
    for n in range(3, 13):
        best = -math.inf
        for lengths in _cycle_partitions(n):
            g = cycle_union(lengths)
            q = brute_force_optimum(g, connected_parts_only=True)[0].q
            worst_split = max(worst_split, abs(exact_two_regular(lengths)[0] - q))
            best = max(best, q)
        worst_max = max(worst_max, abs(best - q2_plus_exact(n)))
    for n in range(3, 17):
        q = brute_force_optimum(cycle(n), connected_parts_only=True)[0].q
        worst_cycle = max(worst_cycle, abs(exact_cycle(n)[0] - q))
    ok = max(worst_max, worst_split, worst_cycle) <= 1e-9
    record(
        1,
        ok,
        f"max over 2-regular graphs err {worst_max:.1e}, per-graph split err {worst_split:.1e}, "
        f"cycle err {worst_cycle:.1e} ({time.perf_counter() - start:.1f}s)",
    )
    assert ok


# ---------------------------------------------------------------- 2


def _extremal_sizes(r):
    ns = set(range(r + 1, 401)) | set(range(4960, 5001)) | set(range(500, 5000, 250))
    return sorted(n for n in ns if (n * r) % 2 == 0)


def test_criterion_2_extremal_attainment():
    start = time.perf_counter()
    worst = 0.0
    checked = 0
    for r in range(2, 7):
        for n in _extremal_sizes(r):
            if (n, r) == (5, 2):
                # C_5 is returned here, not a block construction; its optimum splits the cycle
                continue
            try:
                g = extremal_regular(n, r)
            except ConstructionError:
                continue
            part = Partition.from_parts(g, g.components())
            worst = max(worst, abs(score(g, part).q - g_r(n, r)))
            checked += 1
    c5_err = abs(brute_force_optimum(extremal_regular(5, 2))[0].q - g_r(5, 2))
    ok = worst <= 1e-12 and c5_err <= 1e-12 and checked > 0
    record(
        2,
        ok,
        f"{checked} block-built (n, r) pairs up to n=5000, max err {worst:.1e}; C_5 optimum err {c5_err:.1e} "
        f"({time.perf_counter() - start:.1f}s)",
    )
    assert ok


# ---------------------------------------------------------------- 3


def test_criterion_3_table_bounds():
    start = time.perf_counter()
    upper = [expansion_upper_bound(r, 1000) for r in range(3, 13)]
    up_err = max(abs(a - b) for a, b in zip(upper, EXPANSION_TABLE))
    up_secs = time.perf_counter() - start
    bw_err = max(abs(bisection_lower(None, r) - v) for r, v in BISECTION_TABLE.items())
    uni_err = max(abs(unicyclic_lower(10**14, r) - v) for r, v in UNICYCLIC_TABLE.items())
    ok = up_err <= 0.005 and up_secs < 10 and bw_err <= 0.001 and uni_err <= 0.001
    record(
        3,
        ok,
        f"upper row err {up_err:.4f} in {up_secs:.2f}s, bisection err {bw_err:.5f}, unicyclic limit err {uni_err:.5f}",
    )
    assert ok


# ---------------------------------------------------------------- 4


def _treelike_instance(rng):
    n = int(rng.integers(2, 61))
    edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    extra = []
    for _ in range(int(rng.integers(0, 5))):
        u, v = (int(x) for x in rng.integers(0, n, 2))
        if u != v:
            extra.append((u, v))
    g = Graph(n, edges + extra)
    return g, list(range(n - 1, n - 1 + len(extra)))


def test_criterion_4_cut_certificate():
    start = time.perf_counter()
    failures = []
    formula_err = 0.0
    rng = np.random.default_rng(4)
    for i in range(200):
        g, extra = _treelike_instance(rng)
        if g.total_weight == 0:
            continue
        cert = cut_partition(g, extra, decompose_tree(g.without_edges(extra)), 1)
        formula_err = max(formula_err, abs(cert.claimed_bound - _claimed(g, extra, 1)))
        if score(g, cert.partition).q < cert.claimed_bound:
            failures.append(f"treelike#{i}")
    c600 = cycle(600)
    cert = cut_partition(c600, [], decompose_unicyclic(c600), 2)
    formula_err = max(formula_err, abs(cert.claimed_bound - 0.8))
    if score(c600, cert.partition).q < cert.claimed_bound:
        failures.append("C600")
    for seed in range(20):
        g = random_regular(600, 3, make_rng(seed, 600, 3))
        bound, cert = unicyclic_lower_bound(g)
        formula_err = max(formula_err, abs(cert.claimed_bound - (2 / 3 - 2 * math.sqrt(6 / 600))))
        if score(g, cert.partition).q < cert.claimed_bound:
            failures.append(f"cubic#{seed}")
    secs = time.perf_counter() - start
    ok = not failures and formula_err <= 1e-12 and secs < 30
    record(4, ok, f"222 certificates, failures {failures or 'none'}, formula err {formula_err:.1e} ({secs:.1f}s)")
    assert ok


# ---------------------------------------------------------------- 5


def test_criterion_5_simulation_scaled():
    start = time.perf_counter()
    spec = experiment.ExperimentSpec(rs=[3], n=2000, reps=10, seed=0, grid_size=1000)
    rows = experiment.run(spec)
    means = {row.method: row.mean_q for row in rows}
    ok = all(0.64 <= q <= 0.71 for q in means.values())
    ok = ok and all(row.lower < row.mean_q < row.upper for row in rows)
    detail = ", ".join(f"{k} {v:.4f}" for k, v in means.items())
    record(5, ok, f"n=2000 r=3 10 seeds: {detail} within [0.64, 0.71] ({time.perf_counter() - start:.1f}s)")
    assert ok


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("MODKIT_PAPER_SCALE"), reason="set MODKIT_PAPER_SCALE=1 to run n=10000")
def test_criterion_5_paper_scale():
    spec = experiment.ExperimentSpec(rs=[3], n=experiment.PAPER_N, reps=10, seed=0, threads=os.cpu_count() or 1)
    rows = {row.method: row.mean_q for row in experiment.run(spec)}
    assert rows["louvain"] == pytest.approx(0.679, abs=0.02)
    assert rows["reshuffle"] == pytest.approx(0.677, abs=0.02)


# ---------------------------------------------------------------- 6


def test_criterion_6_spectral_expansion_identities(zoo):
    start = time.perf_counter()
    identity_fail = []
    chain_fail = []
    for name, g in zoo.items():
        if g.n > 14:
            continue
        res = beta_alpha_exact(g)
        if abs(res.beta - res.beta_prime) > 1e-12 or abs(res.beta - (1 - res.alpha)) > 1e-12:
            identity_fail.append(name)
        q = brute_force_optimum(g, connected_parts_only=True)[0].q
        if not (q <= res.beta + 1e-12 and res.beta <= spectral_upper(g) + 1e-9):
            chain_fail.append(name)
    ok = not identity_fail and not chain_fail
    record(
        6,
        ok,
        f"beta = beta' = 1 - alpha fails on {identity_fail or 'none'}; "
        f"q* <= beta <= lambda/r fails on {chain_fail or 'none'} ({time.perf_counter() - start:.1f}s)",
    )
    assert ok


# ---------------------------------------------------------------- 7


def test_criterion_7_sandwich():
    start = time.perf_counter()
    failures = []
    n = 200
    for r in range(3, 13):
        lower = max(0.0, unicyclic_lower(n, r))
        for seed in range(20):
            g = random_regular(n, r, make_rng(seed, n, r))
            cfg = OptimizerConfig(seed=seed)
            best = max(louvain(g, cfg)[0].q, reshuffle(g, cfg)[0].q)
            if not lower <= best <= spectral_upper(g):
                failures.append((r, seed))
    ok = not failures
    record(7, ok, f"200 graphs at n=200, violations {failures or 'none'} ({time.perf_counter() - start:.1f}s)")
    assert ok


# ---------------------------------------------------------------- 8


def _mixed_graphs():
    rng = make_rng(8)
    return [
        (cycle(12), 3),
        (complete(6), 2),
        (random_regular(30, 3, rng), 4),
        (random_regular_multigraph(20, 4, rng), 3),
        (Graph(5, [(0, 1, 2.0), (1, 2), (2, 3, 0.5), (3, 4), (4, 0), (2, 2, 1.5)]), 2),
        (Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]), 5),
        (Graph(4, [(0, 0), (1, 1), (2, 3)]), 2),
        (extremal_regular(14, 3), 7),
        (Graph(7, [(i, j, 1 + (i * j) % 3) for i in range(7) for j in range(i + 1, 7) if (i + j) % 3]), 3),
        (Graph(8, [(0, i) for i in range(1, 8)] + [(1, 2), (3, 4)]), 6),
    ]


def test_criterion_8_statistical_validators():
    start = time.perf_counter()
    n, samples = 50, 100_000
    counts = sample_cycle_counts(n, samples, np.random.default_rng(50), 8)
    cycle_z = []
    for k in range(3, 9):
        col = counts[:, k]
        se = col.std(ddof=1) / math.sqrt(samples)
        cycle_z.append(abs(col.mean() - expected_cycle_count(k, n)) / se)
    part_z = []
    for i, (g, k) in enumerate(_mixed_graphs()):
        qs = sample_random_partition_q(g.n, g.edges, k, samples, np.random.default_rng(100 + i))
        se = qs.std(ddof=1) / math.sqrt(samples)
        part_z.append(abs(qs.mean() - random_partition_expectation(g, k)) / se)
    ok = max(cycle_z) < 3 and max(part_z) < 3
    record(
        8,
        ok,
        f"cycle counts k=3..8 max |z| {max(cycle_z):.2f}; random partitions on 10 graphs max |z| {max(part_z):.2f} "
        f"({time.perf_counter() - start:.1f}s)",
    )
    assert ok


# ---------------------------------------------------------------- 9


def _swap_pair(rng):
    """A simple graph on <= 10 vertices and a degree-preserving double edge swap of it."""
    while True:
        n = int(rng.integers(5, 11))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        keep = rng.random(len(pairs)) < rng.uniform(0.25, 0.7)
        edges = [p for p, k in zip(pairs, keep) if k]
        present = set(edges)
        for _ in range(50):
            i, j = rng.choice(len(edges), 2, replace=False) if len(edges) >= 2 else (0, 0)
            if i == j:
                break
            (a, b), (c, d) = edges[i], edges[j]
            if rng.random() < 0.5:
                c, d = d, c
            new1, new2 = tuple(sorted((a, c))), tuple(sorted((b, d)))
            if len({a, b, c, d}) < 4 or new1 in present or new2 in present:
                continue
            swapped = [e for t, e in enumerate(edges) if t not in (i, j)] + [new1, new2]
            return Graph(n, edges), Graph(n, swapped)


def test_criterion_9_perturbation():
    start = time.perf_counter()
    rng = np.random.default_rng(9)
    worst = -math.inf
    violations = 0
    for _ in range(100):
        g, h = _swap_pair(rng)
        assert g.degree == h.degree
        diff = len(set(g.edges) ^ set(h.edges))
        q_g = brute_force_optimum(g, connected_parts_only=True)[0].q
        q_h = brute_force_optimum(h, connected_parts_only=True)[0].q
        slack = abs(q_g - q_h) - diff / (2 * g.m)
        worst = max(worst, slack)
        violations += slack > 1e-12
    ok = violations == 0
    record(9, ok, f"100 swap pairs, max |dq| - |E^E'|/2m = {worst:.4f}, violations {violations} "
           f"({time.perf_counter() - start:.1f}s)")
    assert ok
