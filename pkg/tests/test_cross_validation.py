"""Cross-validation of the one-shot stationary sampler against a plain
long-run forward simulation.

A thinning simulation of a periodic ring, time-averaged after burn-in,
targets the same stationary law as the backward/forward sampler but
shares no code path with it beyond the rate formula.  Agreement of the
zero-probability and the low-order presynaptic-count masses is a strong
end-to-end check: a bookkeeping error in either pass moves these numbers
by far more than the tolerance used here.
"""

import numpy as np

from spikeclan.model import default_config, rate_eval
from spikeclan.stats import presyn_pmf, run_replicates, zero_probability

RING = 20
HORIZON = 4_000.0
BURN = 200.0


def ring_time_average(seed=2024):
    """Forward-simulate the ring and sample every neuron at unit times."""
    config = default_config()
    beta_max = config.rate.beta_max
    weight = config.kernel.weight
    decay = config.kernel.decay
    rng = np.random.default_rng(seed)
    presyn = [[] for _ in range(RING)]
    t = 0.0
    next_sample = BURN
    zero = total = 0
    count_low = [0, 0]  # occurrences of presyn count 0 and 1
    while t < HORIZON:
        t += rng.exponential() / (RING * beta_max)
        while next_sample < min(t, HORIZON):
            for lst in presyn:
                c = len(lst)
                total += 1
                zero += c == 0
                if c < 2:
                    count_low[c] += 1
            next_sample += 1.0
        i = int(rng.integers(RING))
        x = sum(weight * (1.0 + (t - s)) ** (-decay) for s in presyn[i])
        if rng.random() <= rate_eval(config.rate, x) / beta_max:
            presyn[i] = []
            presyn[(i - 1) % RING].append(t)
            presyn[(i + 1) % RING].append(t)
    return zero / total, count_low[0] / total, count_low[1] / total


def test_sampler_matches_long_run_time_average(config):
    p_zero_ring, pmf0_ring, pmf1_ring = ring_time_average()
    summaries = run_replicates(config, 20_000, master_seed=424242)
    p_zero, _ = zero_probability(summaries)
    pmf = presyn_pmf(summaries)
    # 0.02 is ~4 combined standard errors at these sample sizes; real
    # resolution bugs move these statistics by 0.03 or more.
    assert abs(p_zero - p_zero_ring) < 0.02
    assert abs(pmf[0] - pmf0_ring) < 0.02
    assert abs(pmf[1] - pmf1_ring) < 0.02
