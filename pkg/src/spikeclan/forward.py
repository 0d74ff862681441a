"""Forward thinning-resolution pass.

Replays the backward pass's jumps in chronological order, reusing their
uniform marks.  A candidate jump of neuron i at time t is accepted iff
rate(x_i(t)) / beta_max >= mark, where x_i(t) is rebuilt from the spikes
i received since its last reset.  Every true spike (sure or accepted)
resets its neuron's presynaptic list and lands on the presynaptic lists
of all its neighbors.  The final output is the target neuron's potential
at time 0, which is a draw from the stationary law.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .model import (
    JumpRecord,
    NetworkConfig,
    RateFunction,
    Resolution,
    potential_at,
    rate_eval,
)


@dataclass(frozen=True, slots=True)
class ForwardResult:
    """Resolved jump states and the target's stationary potential.

    ``resolutions`` covers every input jump; none stays unresolved.
    ``final_potential`` equals potential_at(presyn_times, 0) exactly and
    is zero iff ``presyn_count`` is zero.
    """

    final_potential: float
    presyn_count: int
    resolutions: list[tuple[int, Resolution]]
    presyn_times: tuple[float, ...]


def acceptance_probability(x: float, rate: RateFunction) -> float:
    """Conditional probability that a candidate jump at potential x is a
    true spike: (rate(x) - beta_min) / (beta_max - beta_min), in (0, 1]."""
    return (rate_eval(rate, x) - rate.beta_min) / (rate.beta_max - rate.beta_min)


def forward_run(jumps: list[JumpRecord], config: NetworkConfig,
                target: int = 0, trace: list | None = None) -> ForwardResult:
    """Resolve ``jumps`` (sorted strictly increasing in time) and return
    the target's potential at time 0.

    Presynaptic lists are created on demand, so jumps may mention any
    neuron index.  The acceptance test uses >= ; the boundary event has
    probability zero.  When ``trace`` is a list it receives one
    (index, neuron, time, potential_at_jump, resolution) tuple per jump.
    """
    kernel = config.kernel
    rate = config.rate
    beta_max = rate.beta_max
    r = config.range

    prev = -float("inf")
    for j in jumps:
        if j.time <= prev:
            raise ValueError(f"jumps must be sorted strictly increasing in time at index {j.index}")
        if not (0.0 <= j.mark <= 1.0):
            raise ValueError(f"mark out of [0, 1] at index {j.index}")
        prev = j.time

    presyn: dict[int, list[float]] = defaultdict(list)
    resolutions: list[tuple[int, Resolution]] = []
    for j in jumps:
        i = j.neuron
        res = j.resolution
        x = None
        if res is Resolution.CANDIDATE_UNRESOLVED:
            x = potential_at(presyn[i], j.time, kernel)
            if rate_eval(rate, x) / beta_max >= j.mark:
                res = Resolution.CANDIDATE_ACCEPTED
            else:
                res = Resolution.CANDIDATE_REJECTED
        if trace is not None:
            if x is None:
                x = potential_at(presyn[i], j.time, kernel)
            trace.append((j.index, i, j.time, x, res))
        if res is not Resolution.CANDIDATE_REJECTED:
            # True spike: reset the emitter, feed every neighbor.
            presyn[i] = []
            t = j.time
            for nb in range(i - r, i + r + 1):
                if nb != i:
                    presyn[nb].append(t)
        resolutions.append((j.index, res))

    times = tuple(presyn[target])
    return ForwardResult(
        final_potential=potential_at(times, 0.0, kernel),
        presyn_count=len(times),
        resolutions=resolutions,
        presyn_times=times,
    )


def forward_run_reverse(jumps: list[JumpRecord], config: NetworkConfig, rng,
                        target: int = 0) -> float:
    """Alternative resolution kept for comparison only.

    Walks candidate jumps from the latest backward.  Each candidate's
    potential is summed over a-priori sure jumps of its neighbors since
    its last a-priori sure jump, and acceptance draws a fresh Bernoulli
    with the matching probability instead of reusing the stored mark.
    Accepted candidates do not feed later potential sums.  This variant
    ignores resolution-order effects, so no equivalence with
    forward_run is claimed; it exists to quantify the difference.
    """
    kernel = config.kernel
    rate = config.rate
    r = config.range
    n = len(jumps)
    apriori_sure = [j.resolution is Resolution.SURE for j in jumps]
    is_spike = list(apriori_sure)

    for m in range(n - 1, -1, -1):
        if apriori_sure[m]:
            continue
        k = jumps[m].neuron
        t_m = jumps[m].time
        t_reset = -float("inf")
        for q in range(m - 1, -1, -1):
            if apriori_sure[q] and jumps[q].neuron == k:
                t_reset = jumps[q].time
                break
        x = 0.0
        for q in range(m):
            jq = jumps[q]
            if t_reset < jq.time and apriori_sure[q] and 0 < abs(jq.neuron - k) <= r:
                x += kernel.weight * (1.0 + (t_m - jq.time)) ** (-kernel.decay)
        is_spike[m] = bool(rng.random() < acceptance_probability(x, rate))

    t_reset = -float("inf")
    for q in range(n - 1, -1, -1):
        if is_spike[q] and jumps[q].neuron == target:
            t_reset = jumps[q].time
            break
    total = 0.0
    for q in range(n):
        jq = jumps[q]
        if t_reset < jq.time and is_spike[q] and 0 < abs(jq.neuron - target) <= r:
            total += kernel.weight * (1.0 - jq.time) ** (-kernel.decay)
    return total
