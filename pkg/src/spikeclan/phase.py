"""Branching-process phase explorer.

The clan-size walk of the backward pass is dominated by a linear
birth-death chain: from population n > 0, births occur at rate n and
deaths at rate n * delta, where delta = beta_min / (beta_max - beta_min).
This module simulates that comparison chain and estimates its extinction
probability over a grid of delta values; standard first-step analysis
gives the closed form min(1, delta), so the empirical transition sits at
delta = 1 for this chain.  No claim is made that the clan process shares
the same critical value; the scan is a comparison curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .streams import as_rng


@dataclass(frozen=True, slots=True)
class BranchingConfig:
    """delta is the death/birth rate ratio; horizon and cap bound a run
    in time and population (hits count as survival)."""

    delta: float
    horizon: float = 1_000.0
    cap: int = 1_000
    replicates: int = 1

    def __post_init__(self):
        if not (self.delta > 0.0 and math.isfinite(self.delta)):
            raise ValueError(f"delta must be positive and finite, got {self.delta}")
        if self.cap < 1:
            raise ValueError(f"cap must be >= 1, got {self.cap}")
        if not (self.horizon > 0.0):
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")


@dataclass(frozen=True, slots=True)
class BranchingOutcome:
    extinct: bool
    time: float           # absorption time, or the censoring time
    max_population: int


@dataclass(frozen=True, slots=True)
class PhaseRow:
    delta: float
    extinction_estimate: float
    standard_error: float
    mean_extinction_time: float   # over extinct runs; nan if none
    censored_fraction: float


@dataclass(frozen=True, slots=True)
class PhaseScanReport:
    rows: list[PhaseRow]


def delta_of(beta_min: float, beta_max: float) -> float:
    """Death/birth ratio of the comparison chain for given rate bounds."""
    if not (0.0 < beta_min < beta_max):
        raise ValueError(f"need 0 < beta_min < beta_max, got ({beta_min}, {beta_max})")
    return beta_min / (beta_max - beta_min)


def branching_simulate(config: BranchingConfig, seed, initial: int = 1) -> BranchingOutcome:
    """One run of the comparison chain from the given initial population.

    From n > 0 the next event arrives after Exp(n * (1 + delta)) and is a
    birth with probability 1 / (1 + delta).  An event landing past the
    horizon does not happen: the run is censored at the horizon with the
    population still positive.
    """
    if initial < 0:
        raise ValueError(f"initial population must be >= 0, got {initial}")
    rng = as_rng(seed)
    delta = config.delta
    p_up = 1.0 / (1.0 + delta)
    n = initial
    t = 0.0
    max_pop = n
    if n == 0:
        return BranchingOutcome(extinct=True, time=0.0, max_population=0)
    while True:
        t_next = t + rng.standard_exponential() / (n * (1.0 + delta))
        if t_next > config.horizon:
            return BranchingOutcome(extinct=False, time=config.horizon, max_population=max_pop)
        t = t_next
        n += 1 if rng.random() < p_up else -1
        if n == 0:
            return BranchingOutcome(extinct=True, time=t, max_population=max_pop)
        if n > max_pop:
            max_pop = n
        if n >= config.cap:
            return BranchingOutcome(extinct=False, time=t, max_population=max_pop)


def _simulate_batch(delta: float, replicates: int, rng, horizon: float, cap: int):
    """All replicates advanced in lockstep with numpy; same chain as
    branching_simulate.  Returns (extinct, time) arrays."""
    p_up = 1.0 / (1.0 + delta)
    total_rate = 1.0 + delta
    n = np.ones(replicates, dtype=np.int64)
    t = np.zeros(replicates)
    extinct = np.zeros(replicates, dtype=bool)
    out_time = np.zeros(replicates)
    idx = np.arange(replicates)
    while idx.size:
        t_next = t[idx] + rng.standard_exponential(idx.size) / (n[idx] * total_rate)
        censored = t_next > horizon
        cur = n[idx] + np.where(rng.random(idx.size) < p_up, 1, -1)
        cur[censored] = n[idx][censored]          # censored runs keep their state
        died = (cur == 0) & ~censored
        capped = (cur >= cap) & ~censored
        done = censored | died | capped
        n[idx] = cur
        t[idx] = np.where(censored, horizon, t_next)
        if done.any():
            done_idx = idx[done]
            extinct[done_idx] = died[done]
            out_time[done_idx] = t[done_idx]
            idx = idx[~done]
    return extinct, out_time


def extinction_probability(delta: float, replicates: int, seed,
                           horizon: float = 1_000.0, cap: int = 1_000):
    """Monte Carlo extinction estimate with binomial standard error."""
    cfg = BranchingConfig(delta=delta, horizon=horizon, cap=cap, replicates=replicates)
    extinct, _ = _simulate_batch(cfg.delta, cfg.replicates, as_rng(seed), cfg.horizon, cfg.cap)
    p = float(extinct.mean())
    se = math.sqrt(p * (1.0 - p) / replicates)
    return p, se


def delta_scan(grid, replicates: int, seed,
               horizon: float = 1_000.0, cap: int = 1_000) -> PhaseScanReport:
    """One extinction estimate per grid point, grid sorted ascending.

    Point j uses the stream (seed, j), so the report does not depend on
    evaluation order.
    """
    grid = sorted(float(d) for d in grid)
    if not grid:
        raise ValueError("delta grid must not be empty")
    if any(not (d > 0.0) for d in grid):
        raise ValueError("every delta in the grid must be positive")
    if replicates < 1:
        raise ValueError(f"replicates must be >= 1, got {replicates}")
    rows = []
    for j, delta in enumerate(grid):
        rng = as_rng((int(seed), j))
        extinct, times = _simulate_batch(delta, replicates, rng, horizon, cap)
        p = float(extinct.mean())
        se = math.sqrt(p * (1.0 - p) / replicates)
        mean_ext = float(times[extinct].mean()) if extinct.any() else float("nan")
        rows.append(PhaseRow(
            delta=delta,
            extinction_estimate=p,
            standard_error=se,
            mean_extinction_time=mean_ext,
            censored_fraction=float((~extinct).mean()),
        ))
    return PhaseScanReport(rows=rows)


def write_phase_csv(path, report: PhaseScanReport) -> None:
    lines = ["delta,extinction_estimate,stderr,mean_extinction_time,censored_fraction"]
    for row in report.rows:
        lines.append(",".join(repr(v) for v in (
            row.delta, row.extinction_estimate, row.standard_error,
            row.mean_extinction_time, row.censored_fraction,
        )))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
