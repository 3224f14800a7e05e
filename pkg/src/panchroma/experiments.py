"""Seeded Monte Carlo runs of the interval coloring.

Trial ``k`` of a run with master seed ``s`` draws its weights from
``numpy.random.Generator(PCG64(SeedSequence(entropy=s, spawn_key=(k,))))``.
This is numpy's documented stream-splitting scheme, so a trial's weights
depend only on ``(s, k)``: trials can be evaluated in any order or split
across processes and the aggregated statistics are identical.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .bounds import Formula, LogBound, short_edge_expected_bound
from .coloring import PartitionParams, assign_weights, is_panchromatic, run_coloring
from .conflicts import SnakeBallError, extract_snake_ball, short_edges_from_slots, verify_snake_ball
from .hypergraph import Hypergraph

__all__ = [
    "ExperimentConfig",
    "McStats",
    "Comparison",
    "trial_rng",
    "run_trial_range",
    "run_experiment",
    "summarize",
    "TRACKED",
]

TRACKED = ("success", "short_edges", "failing_edges", "snake_balls")
WILSON_Z = 1.959963984540054


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=master_seed, spawn_key=(trial,))))


@dataclass(frozen=True)
class ExperimentConfig:
    hypergraph: Hypergraph
    r: int
    trials: int
    seed: int
    p: Optional[Union[float, Fraction]] = None
    extract: bool = True
    failure_cap: int = 100
    workers: Optional[int] = None
    source: str = ""

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trial count must be at least 1, got {self.trials}")
        self.params()

    def params(self) -> PartitionParams:
        """Float-mode parameters; a rational override is converted to float."""
        if self.p is None:
            return PartitionParams.from_formula(self.hypergraph.n, self.r)
        return PartitionParams(self.r, float(self.p), "override")


@dataclass
class McStats:
    """Sufficient statistics of a batch of trials. Sums are integers, so
    merging is exact, associative and commutative."""

    n: int
    r: int
    p: float
    num_edges: int
    trials: int = 0
    sums: dict = field(default_factory=lambda: {k: 0 for k in TRACKED})
    sumsq: dict = field(default_factory=lambda: {k: 0 for k in TRACKED})
    inconsistencies: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    failure_cap: int = 100

    @property
    def successes(self) -> int:
        return self.sums["success"]

    def add(self, trial: int, values: dict, failure: Optional[dict] = None) -> None:
        self.trials += 1
        for k in TRACKED:
            self.sums[k] += values[k]
            self.sumsq[k] += values[k] * values[k]
        if failure is not None and len(self.failures) < self.failure_cap:
            self.failures.append(failure)

    def merge(self, other: "McStats") -> "McStats":
        if (self.n, self.r, self.p, self.num_edges) != (other.n, other.r, other.p, other.num_edges):
            raise ValueError("cannot merge statistics of different configurations")
        out = McStats(self.n, self.r, self.p, self.num_edges, failure_cap=min(self.failure_cap, other.failure_cap))
        out.trials = self.trials + other.trials
        for k in TRACKED:
            out.sums[k] = self.sums[k] + other.sums[k]
            out.sumsq[k] = self.sumsq[k] + other.sumsq[k]
        out.inconsistencies = sorted(self.inconsistencies + other.inconsistencies, key=lambda d: d["trial"])
        out.failures = sorted(self.failures + other.failures, key=lambda d: d["trial"])[:out.failure_cap]
        return out

    def mean(self, name: str) -> float:
        return self.sums[name] / self.trials

    def stderr(self, name: str) -> float:
        t = self.trials
        if t < 2:
            return 0.0
        mean = self.sums[name] / t
        var = (self.sumsq[name] - t * mean * mean) / (t - 1)
        return math.sqrt(max(var, 0.0) / t)

    def wilson(self, z: float = WILSON_Z) -> tuple[float, float]:
        t, k = self.trials, self.successes
        phat = k / t
        denom = 1 + z * z / t
        centre = (phat + z * z / (2 * t)) / denom
        half = z * math.sqrt(phat * (1 - phat) / t + z * z / (4 * t * t)) / denom
        lo = 0.0 if k == 0 else max(0.0, centre - half)
        hi = 1.0 if k == t else min(1.0, centre + half)
        return lo, hi

    @property
    def ok(self) -> bool:
        return not self.inconsistencies

    def to_json(self) -> dict:
        lo, hi = self.wilson()
        return {
            "n": self.n, "r": self.r, "p": self.p, "num_edges": self.num_edges,
            "trials": self.trials,
            "successes": self.successes,
            "success_wilson95": [lo, hi],
            "stats": {k: {"mean": self.mean(k), "stderr": self.stderr(k)} for k in TRACKED},
            "inconsistencies": self.inconsistencies,
            "failures": self.failures,
        }


def _one_trial(h: Hypergraph, params: PartitionParams, cfg: ExperimentConfig, k: int, stats: McStats) -> None:
    sigma = assign_weights(h, rng=trial_rng(cfg.seed, k))
    trace = run_coloring(h, params, sigma)
    ok, missing = is_panchromatic(h, trace)
    short = short_edges_from_slots(h, params.r, trace.slots)
    failing = sorted({e for e, _ in missing})
    balls = set()
    if failing and not short and cfg.extract:
        for e in failing:
            try:
                sb = extract_snake_ball(h, trace, e)
            except SnakeBallError as exc:
                stats.inconsistencies.append({"trial": k, "edge": e, "error": str(exc)})
                continue
            problem = verify_snake_ball(h, trace, sb)
            if problem is not None:
                stats.inconsistencies.append({"trial": k, "edge": e, "error": problem})
            else:
                balls.add(sb.edges)
    values = {"success": int(ok), "short_edges": len(short.edges),
              "failing_edges": len(failing), "snake_balls": len(balls)}
    failure = None
    if not ok:
        failure = {"trial": k, "missing": [list(m) for m in missing], "short_edges": short.edges}
    stats.add(k, values, failure)


def run_trial_range(cfg: ExperimentConfig, start: int, stop: int) -> McStats:
    h = cfg.hypergraph
    params = cfg.params()
    stats = McStats(h.n, cfg.r, float(params.p), h.num_edges, failure_cap=cfg.failure_cap)
    for k in range(start, stop):
        _one_trial(h, params, cfg, k, stats)
    return stats


def _worker_count(cfg: ExperimentConfig) -> int:
    if cfg.workers is not None:
        w = cfg.workers
    else:
        w = int(os.environ.get("PANCHROMA_THREADS", "1") or 1)
    if w <= 0:
        w = os.cpu_count() or 1
    return w


def run_experiment(cfg: ExperimentConfig) -> McStats:
    workers = min(_worker_count(cfg), max(1, cfg.trials // 2000))
    if workers <= 1:
        return run_trial_range(cfg, 0, cfg.trials)
    bounds = np.linspace(0, cfg.trials, workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run_trial_range, [cfg] * workers, bounds[:-1].tolist(), bounds[1:].tolist()))
    out = parts[0]
    for part in parts[1:]:
        out = out.merge(part)
    return out


@dataclass(frozen=True)
class Comparison:
    name: str
    mean: float
    stderr: float
    bound: Optional[LogBound]
    verdict: str

    @property
    def bound_log(self) -> Optional[float]:
        return None if self.bound is None else self.bound.log_value


_STAT_FOR = {Formula.SHORT_EDGE_EXPECTED: "short_edges"}


def _matches(bound: LogBound, stats: McStats) -> bool:
    par = bound.params
    if par.get("n") != stats.n or par.get("r") != stats.r:
        return False
    if "p" in par and not math.isclose(float(par["p"]), stats.p, rel_tol=1e-12):
        return False
    if "num_edges" in par and par["num_edges"] != stats.num_edges:
        return False
    return True


def summarize(stats: McStats, bounds: Iterable[LogBound] = ()) -> list[Comparison]:
    """Pair empirical means with analytic bounds. A mean more than five
    standard errors above its bound is flagged ``exceeds bound``."""
    by_stat = {}
    for b in bounds:
        if not _matches(b, stats):
            raise ValueError(f"bound {b.formula} was evaluated for different parameters: {dict(b.params)}")
        name = _STAT_FOR.get(b.formula)
        if name is None:
            raise ValueError(f"no tracked statistic corresponds to {b.formula}")
        by_stat[name] = b
    rows = []
    for name in TRACKED:
        mean, se = stats.mean(name), stats.stderr(name)
        b = by_stat.get(name)
        if b is None:
            verdict = "n/a"
        else:
            verdict = "within bound" if mean <= b.value() + 5 * se else "exceeds bound"
        rows.append(Comparison(name, mean, se, b, verdict))
    return rows


def default_bounds(stats: McStats) -> list[LogBound]:
    return [short_edge_expected_bound(stats.n, stats.r, stats.p, num_edges=stats.num_edges)]
