import itertools
import math
from collections import Counter

import numpy as np
import pytest

from modkit.errors import ConstructionError, DomainError, SamplingError
from modkit.generators import (
    FAMILY_NAMES,
    FamilySpec,
    build,
    clique_pack,
    complete,
    cycle,
    cycle_union,
    expected_cycle_count,
    extremal_regular,
    h_r_plus_2,
    h_r_plus_3,
    make_rng,
    random_regular,
    random_regular_multigraph,
)
from modkit.graph import Graph, Partition, score


def test_cli_family_names():
    assert set(FAMILY_NAMES) == {
        "cycle",
        "path",
        "complete",
        "multipartite",
        "star",
        "cliquepack",
        "hr2",
        "hr3",
        "extremal",
        "union",
    }


def test_build_examples():
    assert build(FamilySpec("cycle", (5,))) == cycle(5)
    assert build(FamilySpec("star", (5,))).m == 5
    assert build(FamilySpec("multipartite", (2, 3))).m == 6
    assert build(FamilySpec("union", (3, 4))) == cycle_union([3, 4])
    assert build(FamilySpec("extremal_regular", (8, 3))) == extremal_regular(8, 3)
    with pytest.raises(ConstructionError):
        build(FamilySpec("nosuch", ()))
    with pytest.raises(ConstructionError):
        build(FamilySpec("cycle", (5, 6)))


def test_h_r_plus_2_with_r_2_is_c4():
    g = h_r_plus_2(2)
    assert g.n == 4 and g.regular_degree() == 2 and g.is_connected()


def test_h_blocks_regular():
    for r in (2, 4, 6, 8):
        g = h_r_plus_2(r)
        assert g.n == r + 2 and g.regular_degree() == r and g.is_simple()
    for r in (1, 3, 5, 7):
        g = h_r_plus_3(r)
        assert g.n == r + 3 and g.regular_degree() == r and g.is_simple()
    with pytest.raises(ConstructionError):
        h_r_plus_2(3)


def test_extremal_examples():
    g = extremal_regular(7, 2)
    assert sorted(len(c) for c in g.components()) == [3, 4]
    g = extremal_regular(8, 3)
    assert g == clique_pack(8, 3)
    comps = g.components()
    assert [len(c) for c in comps] == [4, 4]
    assert score(g, Partition.from_parts(g, comps)).q == pytest.approx(0.5, abs=1e-12)
    assert extremal_regular(5, 2) == cycle(5)


@pytest.mark.parametrize("n,r", [(7, 3), (3, 3), (9, 4), (10, 5), (2, 2)])
def test_extremal_infeasible(n, r):
    with pytest.raises(ConstructionError):
        extremal_regular(n, r)


def test_extremal_regular_and_simple():
    for r in range(1, 7):
        for n in range(r + 1, 120):
            if (n * r) % 2:
                continue
            try:
                g = extremal_regular(n, r)
            except ConstructionError:
                continue
            assert g.n == n and g.regular_degree() == r and g.is_simple()


def test_build_is_deterministic():
    assert extremal_regular(50, 4) == extremal_regular(50, 4)


def test_random_regular_k4():
    for seed in range(5):
        assert random_regular(4, 3, make_rng(seed)) == complete(4)


def test_random_regular_matching_optimum():
    g = random_regular(6, 1, make_rng(0))
    assert g.m == 3 and g.regular_degree() == 1


@pytest.mark.parametrize("method", ["pairing", "steger-wormald", "auto"])
def test_random_regular_degrees(method):
    for n, r in [(50, 3), (40, 4), (30, 6)]:
        if method == "pairing" and r > 4:
            continue
        g = random_regular(n, r, make_rng(11, n, r), method=method)
        assert g.is_simple() and g.regular_degree() == r and g.m == n * r // 2


def test_random_regular_large():
    g = random_regular(10000, 3, make_rng(1))
    assert g.is_simple() and g.regular_degree() == 3 and g.m == 15000


def test_random_regular_deterministic():
    a = random_regular(200, 5, make_rng(42))
    b = random_regular(200, 5, make_rng(42))
    c = random_regular(200, 5, make_rng(43))
    assert a == b and a != c


def test_derived_seeds_differ():
    a = make_rng(1, 0).integers(0, 2**32, 4)
    b = make_rng(1, 1).integers(0, 2**32, 4)
    assert not np.array_equal(a, b)
    assert np.array_equal(make_rng(1, 1).integers(0, 2**32, 4), b)


def test_pairing_agrees_with_multigraph_when_simple():
    found = 0
    for seed in range(200):
        multi = random_regular_multigraph(12, 3, make_rng(seed))
        if multi.is_simple():
            assert random_regular(12, 3, make_rng(seed), method="pairing") == multi
            found += 1
    assert found > 10


def test_infeasible_and_cap():
    with pytest.raises(ConstructionError):
        random_regular(5, 3, make_rng(0))
    with pytest.raises(ConstructionError):
        random_regular(3, 3, make_rng(0))
    with pytest.raises(SamplingError):
        random_regular(30, 8, make_rng(0), method="pairing", max_attempts=3)


def test_multigraph_degree_sum():
    for seed in range(20):
        g = random_regular_multigraph(9, 2, make_rng(seed))
        assert sum(g.degree) == 18 and g.regular_degree() == 2


def test_three_vertex_pairings():
    # 15 pairings of 6 half-edges; 8 of them give a triangle
    triangle = 0
    points = list(range(6))

    def matchings(pts):
        if not pts:
            yield []
            return
        a = pts[0]
        for i in range(1, len(pts)):
            rest = pts[1:i] + pts[i + 1 :]
            for m in matchings(rest):
                yield [(a, pts[i])] + m

    all_m = list(matchings(points))
    assert len(all_m) == 15
    for m in all_m:
        g = Graph(3, [(a // 2, b // 2) for a, b in m])
        triangle += g.is_simple()
    assert triangle == 8
    # the only possible 3-cycle is the triangle itself
    assert expected_cycle_count(3, 3) == pytest.approx(8 / 15)
    rng = make_rng(9)
    hits = Counter(random_regular_multigraph(3, 2, rng).is_simple() for _ in range(6000))
    p = hits[True] / 6000
    assert abs(p - 8 / 15) < 4 * math.sqrt((8 / 15) * (7 / 15) / 6000)


def test_expected_cycle_count_bounds():
    for n in (3, 10, 57, 400):
        for k in range(3, n + 1):
            g = expected_cycle_count(k, n)
            assert g >= 1 / (2 * k) - 1e-15
            assert g >= 1 / (4 * k)
            assert g <= (1 / (2 * k)) * 2 * n / (2 * n - (2 * k - 1)) + 1e-15
    with pytest.raises(DomainError):
        expected_cycle_count(2, 10)
    with pytest.raises(DomainError):
        expected_cycle_count(11, 10)


def test_expected_cycle_sum_logarithmic():
    # running product instead of calling the O(k) function n times
    n = 10000
    ratio, total = 1.0, 0.0
    for k in range(1, n + 1):
        ratio *= (2 * n - 2 * (k - 1)) / (2 * n - 2 * k + 1)
        if k >= 3:
            total += ratio / (2 * k)
    assert total == pytest.approx(4.836875, abs=1e-5)
    assert total <= 0.6 * math.log(n)
    for k in (3, 50, 9999):
        assert expected_cycle_count(k, n) == pytest.approx(_direct(k, n), rel=1e-12)


def _direct(k, n):
    num = math.prod(2 * n - 2 * i for i in range(k))
    den = math.prod(2 * n - (2 * i + 1) for i in range(k))
    return num / den / (2 * k)


def test_expected_cycle_count_product_form():
    for k, n in [(3, 3), (4, 7), (5, 20)]:
        num = math.prod(2 * n - 2 * i for i in range(k))
        den = math.prod(2 * n - (2 * i + 1) for i in range(k))
        assert expected_cycle_count(k, n) == pytest.approx(num / den / (2 * k), rel=1e-12)


def test_cycle_union_validation():
    with pytest.raises(ConstructionError):
        cycle_union([])
    with pytest.raises(ConstructionError):
        cycle_union([3, 2])
    assert [len(c) for c in cycle_union([5, 3]).components()] == [5, 3]


def test_all_small_two_regular_graphs_are_cycle_unions():
    # sanity check for the exhaustive 2-regular sweeps used elsewhere
    for n in range(3, 10):
        for lengths in _cycle_partitions(n):
            g = cycle_union(lengths)
            assert g.regular_degree() == 2 and g.n == n


def _cycle_partitions(n, smallest=3):
    if n == 0:
        yield []
        return
    for t in range(smallest, n + 1):
        for rest in _cycle_partitions(n - t, t):
            yield [t] + rest


def test_itertools_sanity():
    assert len(list(itertools.combinations(range(5), 2))) == complete(5).m


def test_cycle_counts_monte_carlo_small():
    from oracles import sample_cycle_counts

    n, samples = 20, 20000
    counts = sample_cycle_counts(n, samples, np.random.default_rng(3), 6)
    for k in range(3, 7):
        col = counts[:, k]
        se = col.std(ddof=1) / math.sqrt(samples)
        assert abs(col.mean() - expected_cycle_count(k, n)) < 3 * se
