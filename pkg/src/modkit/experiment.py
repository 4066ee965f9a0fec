"""Seeded modularity experiment on random regular graphs, one CSV row per (r, method)."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds.closed_forms import BISECTION_RATIOS, bisection_lower, check_feasible, unicyclic_lower
from .bounds.expansion import expansion_upper_bound
from .errors import DomainError
from .generators import make_rng, random_regular
from .optimizers import METHODS, OptimizerConfig

DESK_N = 2000
PAPER_N = 10000
DEFAULT_REPS = 10


@dataclass
class ExperimentSpec:
    rs: list[int] = field(default_factory=lambda: list(range(3, 13)))
    n: int = DESK_N
    reps: int = DEFAULT_REPS
    methods: tuple[str, ...] = ("louvain", "reshuffle")
    seed: int = 0
    threads: int = 1
    grid_size: int = 1000

    def validate(self) -> None:
        if self.reps < 1:
            raise DomainError("need at least one replicate")
        for r in self.rs:
            check_feasible(self.n, r)
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise DomainError(f"unknown method(s): {', '.join(unknown)}")


@dataclass
class ExperimentRow:
    r: int
    method: str
    qs: list[float]
    upper: float
    lower: float
    seconds: float

    @property
    def mean_q(self) -> float:
        return float(np.mean(self.qs))


def _method_seed(seed: int, r: int, rep: int, idx: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(r, rep, idx + 1)).generate_state(1)[0])


def run_replicate(n: int, r: int, rep: int, seed: int, methods) -> list[tuple[float, float]]:
    """Sample one graph and run every method on it; returns ``(q, seconds)`` per method."""
    graph = random_regular(n, r, make_rng(seed, r, rep))
    out = []
    for idx, name in enumerate(methods):
        cfg = OptimizerConfig(seed=_method_seed(seed, r, rep, idx))
        t0 = time.perf_counter()
        result, _ = METHODS[name](graph, cfg)
        out.append((result.q, time.perf_counter() - t0))
    return out


def lower_bound(n: int, r: int) -> float:
    lo = unicyclic_lower(n, r)
    if r in BISECTION_RATIOS:
        lo = max(lo, bisection_lower(n, r))
    return lo


def run(spec: ExperimentSpec) -> list[ExperimentRow]:
    """Rows in ``(r, method)`` order; results do not depend on ``threads``."""
    spec.validate()
    jobs = [(spec.n, r, rep, spec.seed, spec.methods) for r in spec.rs for rep in range(spec.reps)]
    if spec.threads > 1:
        with ProcessPoolExecutor(spec.threads) as pool:
            results = list(pool.map(run_replicate, *zip(*jobs)))
    else:
        results = [run_replicate(*job) for job in jobs]
    by_key = {(job[1], job[2]): res for job, res in zip(jobs, results)}
    rows = []
    for r in spec.rs:
        upper = expansion_upper_bound(r, spec.grid_size)
        lower = lower_bound(spec.n, r)
        for idx, name in enumerate(spec.methods):
            runs = [by_key[(r, rep)][idx] for rep in range(spec.reps)]
            rows.append(
                ExperimentRow(r, name, [q for q, _ in runs], upper, lower, sum(s for _, s in runs))
            )
    return rows


def header(reps: int) -> list[str]:
    return ["r", "method", "mean_q"] + [f"q_{i}" for i in range(1, reps + 1)] + [
        "expansion_upper",
        "lower_bound",
        "seconds",
    ]


def write_csv(rows: list[ExperimentRow], fh, timing: bool = False) -> None:
    """Six decimals; ``seconds`` stays blank unless ``timing`` so reruns are byte-identical."""
    writer = csv.writer(fh, lineterminator="\n")
    reps = len(rows[0].qs) if rows else 0
    writer.writerow(header(reps))
    for row in rows:
        writer.writerow(
            [row.r, row.method, f"{row.mean_q:.6f}"]
            + [f"{q:.6f}" for q in row.qs]
            + [f"{row.upper:.6f}", f"{row.lower:.6f}", f"{row.seconds:.3f}" if timing else ""]
        )


def format_table(rows: list[ExperimentRow]) -> str:
    methods = list(dict.fromkeys(row.method for row in rows))
    rs = list(dict.fromkeys(row.r for row in rows))
    lookup = {(row.r, row.method): row for row in rows}
    lines = ["r".ljust(12) + "".join(f"{r:>8d}" for r in rs)]
    lines.append("upper".ljust(12) + "".join(f"{lookup[(r, methods[0])].upper:8.3f}" for r in rs))
    for m in methods:
        lines.append(m.ljust(12) + "".join(f"{lookup[(r, m)].mean_q:8.3f}" for r in rs))
    lines.append("lower".ljust(12) + "".join(f"{lookup[(r, methods[0])].lower:8.3f}" for r in rs))
    return "\n".join(lines)
