"""Replicated end-to-end sampling and the empirical estimators.

Each replicate k runs one backward pass and one forward pass on the
stream derived from (master_seed, k), yielding one stationary potential.
Replicates that exhaust the backward budget carry no potential: there is
no unbiased value for an unfinished run, so they are excluded from every
distribution estimate and reported as a separate count.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool

from .backward import BackwardStatus, backward_run
from .forward import forward_run
from .model import NetworkConfig, rate_eval
from .streams import derive_rng

# Replicates per worker task; fixed so that chunk boundaries (and hence
# the output) never depend on the worker count.
_CHUNK = 512


@dataclass(frozen=True, slots=True)
class ReplicateSummary:
    """One replicate's outcome.  Potential-dependent fields are None when
    the backward pass exhausted its budget."""

    seed_index: int
    final_potential: float | None
    presyn_count: int | None
    n_steps_backward: int
    backward_status: BackwardStatus
    firing_rate: float | None


@dataclass(frozen=True, slots=True)
class HistogramBin:
    left: float
    right: float    # inf on the overflow bin
    count: int
    density: float


@dataclass(frozen=True, slots=True)
class Histogram:
    """Left-closed fixed-width bins on [lo, hi) plus one overflow bin for
    values >= hi.  Densities are count / (total * bin_width); the
    overflow bin uses the same nominal width."""

    lo: float
    hi: float
    bin_width: float
    total: int
    bins: tuple[HistogramBin, ...]


@dataclass(frozen=True, slots=True)
class StatsReport:
    replicate_count: int
    budget_exhausted_count: int
    zero_probability: float
    zero_probability_stderr: float
    presyn_pmf: dict[int, float]
    max_potential: float
    potential_hist: Histogram
    firing_rate_hist: Histogram


def run_one_replicate(config: NetworkConfig, master_seed: int, k: int,
                      budget: int) -> ReplicateSummary:
    bw = backward_run(config, target=0, seed=derive_rng(master_seed, k), budget=budget)
    if bw.status is BackwardStatus.BUDGET_EXHAUSTED:
        return ReplicateSummary(k, None, None, len(bw.jumps), bw.status, None)
    fw = forward_run(list(reversed(bw.jumps)), config, target=0)
    return ReplicateSummary(
        seed_index=k,
        final_potential=fw.final_potential,
        presyn_count=fw.presyn_count,
        n_steps_backward=len(bw.jumps),
        backward_status=bw.status,
        firing_rate=rate_eval(config.rate, fw.final_potential),
    )


def _run_chunk(args) -> list[ReplicateSummary]:
    config, master_seed, budget, start, stop = args
    return [run_one_replicate(config, master_seed, k, budget) for k in range(start, stop)]


def run_replicates(config: NetworkConfig, n: int, master_seed: int,
                   budget: int = 1_000_000, workers: int = 1,
                   start: int = 0) -> list[ReplicateSummary]:
    """n end-to-end replicates with indices start..start+n-1, merged in
    index order.

    The output is a pure function of (config, n, master_seed, budget,
    start): replicate streams are keyed by index alone, so any worker
    count produces the same list, and runs over disjoint index ranges
    concatenate to one big run.
    """
    if n < 1:
        raise ValueError(f"replicate count must be >= 1, got {n}")
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    stop = start + n
    tasks = [(config, master_seed, budget, lo, min(lo + _CHUNK, stop))
             for lo in range(start, stop, _CHUNK)]
    if workers == 1:
        chunks = [_run_chunk(t) for t in tasks]
    else:
        with Pool(processes=workers) as pool:
            chunks = pool.map(_run_chunk, tasks)
    return [summary for chunk in chunks for summary in chunk]


def _completed(summaries) -> list[ReplicateSummary]:
    done = [s for s in summaries if s.final_potential is not None]
    if not done:
        raise ValueError("no completed replicates to estimate from")
    return done


def zero_probability(summaries) -> tuple[float, float]:
    """Binomial estimate of P(final potential = 0) with standard error."""
    done = _completed(summaries)
    p = sum(1 for s in done if s.final_potential == 0.0) / len(done)
    return p, math.sqrt(p * (1.0 - p) / len(done))


def presyn_pmf(summaries) -> dict[int, float]:
    """Empirical mass function of the presynaptic spike count, on the
    contiguous support 0..max observed (zero-mass gaps included)."""
    done = _completed(summaries)
    counts = Counter(s.presyn_count for s in done)
    top = max(counts)
    return {k: counts.get(k, 0) / len(done) for k in range(top + 1)}


def histogram(values, bin_width: float, lo: float, hi: float) -> Histogram:
    """Fixed-width histogram of ``values``; each value must be >= lo and
    anything >= hi lands in the overflow bin."""
    if bin_width <= 0.0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")
    if hi <= lo:
        raise ValueError(f"need hi > lo, got [{lo}, {hi}]")
    n_bins = max(1, math.ceil((hi - lo) / bin_width - 1e-9))
    counts = [0] * (n_bins + 1)
    total = 0
    for v in values:
        if v < lo:
            raise ValueError(f"value {v} below histogram range [{lo}, {hi})")
        k = int((v - lo) / bin_width)
        counts[min(k, n_bins)] += 1
        total += 1
    norm = total * bin_width if total else 1.0
    bins = []
    for k in range(n_bins):
        bins.append(HistogramBin(lo + k * bin_width, lo + (k + 1) * bin_width,
                                 counts[k], counts[k] / norm))
    bins.append(HistogramBin(lo + n_bins * bin_width, math.inf,
                             counts[n_bins], counts[n_bins] / norm))
    return Histogram(lo=lo, hi=hi, bin_width=bin_width, total=total, bins=tuple(bins))


def build_report(config: NetworkConfig, summaries,
                 potential_bin_width: float = 0.1,
                 rate_bin_width: float = 0.02) -> StatsReport:
    done = _completed(summaries)
    exhausted = len(summaries) - len(done)
    p0, se0 = zero_probability(summaries)
    potentials = [s.final_potential for s in done]
    rates = [s.firing_rate for s in done]
    max_pot = max(potentials)
    pot_hi = max(1.0, math.ceil(max_pot + 1e-9))
    return StatsReport(
        replicate_count=len(summaries),
        budget_exhausted_count=exhausted,
        zero_probability=p0,
        zero_probability_stderr=se0,
        presyn_pmf=presyn_pmf(summaries),
        max_potential=max_pot,
        potential_hist=histogram(potentials, potential_bin_width, 0.0, pot_hi),
        # Rates live in (beta_min, beta_max]; the atom at beta_max
        # (potential exactly 0) is the overflow bin by construction.
        firing_rate_hist=histogram(rates, rate_bin_width, config.rate.beta_min,
                                   config.rate.beta_max),
    )


# ---------------------------------------------------------------------------
# File output.  Floats are written with repr() (shortest round-trip form)
# so identical runs produce byte-identical files.

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, BackwardStatus):
        return v.value
    return str(v)


def write_summaries_csv(path, summaries) -> None:
    lines = ["seed_index,final_potential,presyn_count,n_steps_backward,backward_status,firing_rate"]
    for s in summaries:
        lines.append(",".join(_cell(v) for v in (
            s.seed_index, s.final_potential, s.presyn_count,
            s.n_steps_backward, s.backward_status, s.firing_rate,
        )))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_histograms_csv(path, report: StatsReport) -> None:
    lines = ["bin_left,bin_right,count,density,series"]
    for name, hist in (("potential", report.potential_hist),
                       ("firing_rate", report.firing_rate_hist)):
        for b in hist.bins:
            lines.append(",".join((repr(b.left), repr(b.right), str(b.count),
                                   repr(b.density), name)))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_report_json(path, config: NetworkConfig, report: StatsReport,
                      master_seed: int, budget: int) -> None:
    payload = {
        "config": {
            "beta_min": config.rate.beta_min,
            "beta_max": config.rate.beta_max,
            "W": config.kernel.weight,
            "lambda": config.kernel.decay,
            "range": config.range,
        },
        "master_seed": master_seed,
        "budget": budget,
        "replicate_count": report.replicate_count,
        "budget_exhausted_count": report.budget_exhausted_count,
        "zero_probability": {
            "estimate": report.zero_probability,
            "stderr": report.zero_probability_stderr,
        },
        "max_potential": report.max_potential,
        "presyn_pmf": {str(k): v for k, v in report.presyn_pmf.items()},
    }
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
