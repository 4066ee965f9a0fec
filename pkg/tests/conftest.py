import pytest

from modkit.generators import (
    clique_pack,
    complete,
    complete_multipartite,
    cycle,
    cycle_union,
    extremal_regular,
    h_r_plus_2,
    h_r_plus_3,
    make_rng,
    random_regular,
)
from modkit.graph import Graph


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def cube() -> Graph:
    return Graph(8, [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)])


def prism(k: int) -> Graph:
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return Graph(2 * k, edges)


def regular_zoo() -> dict[str, Graph]:
    """Regular graphs on at most 14 vertices."""
    zoo = {
        "K4": complete(4),
        "K5": complete(5),
        "K6": complete(6),
        "K33": complete_multipartite([3, 3]),
        "K44": complete_multipartite([4, 4]),
        "petersen": petersen(),
        "cube": cube(),
        "prism5": prism(5),
        "prism7": prism(7),
        "H6_even": h_r_plus_2(4),
        "H6_odd": h_r_plus_3(3),
        "2K4": clique_pack(8, 3),
        "extremal_11_2": extremal_regular(11, 2),
        "extremal_14_3": extremal_regular(14, 3),
        "C3+C4": cycle_union([3, 4]),
        "C4+C5+C5": cycle_union([4, 5, 5]),
    }
    for n in range(4, 15):
        zoo[f"C{n}"] = cycle(n)
    for n in (8, 10, 12, 14):
        for seed in range(3):
            zoo[f"cubic_{n}_{seed}"] = random_regular(n, 3, make_rng(seed, n))
    for n in (9, 11, 13):
        zoo[f"quartic_{n}"] = random_regular(n, 4, make_rng(7, n))
    return zoo


@pytest.fixture(scope="session")
def zoo():
    return regular_zoo()


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])
