import math

import numpy as np
import pytest

from spikeclan.backward import backward_run
from spikeclan.forward import acceptance_probability, forward_run, forward_run_reverse
from spikeclan.model import (
    JumpRecord,
    Resolution,
    default_config,
    potential_at,
    rate_eval,
)
from spikeclan.streams import derive_rng


def jump(index, neuron, time, mark, res):
    return JumpRecord(index=index, neuron=neuron, time=time, mark=mark, resolution=res)


def chronological(result):
    return list(reversed(result.jumps))


class TestAcceptanceProbability:
    def test_reset_state_always_accepts(self, config):
        assert acceptance_probability(0.0, config.rate) == 1.0

    def test_vanishes_at_large_potential(self, config):
        assert acceptance_probability(1e12, config.rate) == pytest.approx(0.0, abs=1e-9)

    def test_hand_value(self, config):
        assert acceptance_probability(10.0, config.rate) == pytest.approx(1.0 / 11.0, rel=1e-12)


class TestForwardRun:
    def test_single_presynaptic_spike(self, config):
        jumps = [jump(1, 1, -1.0, 0.1, Resolution.SURE)]
        out = forward_run(jumps, config)
        assert out.final_potential == pytest.approx(0.25, rel=1e-15)
        assert out.presyn_count == 1
        assert out.presyn_times == (-1.0,)
        assert out.resolutions == [(1, Resolution.SURE)]

    def test_own_reset_forces_zero(self, config):
        jumps = [jump(2, 1, -2.0, 0.1, Resolution.SURE),
                 jump(1, 0, -0.3, 0.2, Resolution.SURE)]
        out = forward_run(jumps, config)
        assert out.final_potential == 0.0
        assert out.presyn_count == 0

    def test_high_potential_candidate_rejected(self, config):
        # Twelve presynaptic spikes close to the candidate push the
        # potential above 10, where the acceptance ratio is ~0.69 < 0.99.
        spikes = [jump(14 - k, 1, -0.1 - 0.005 * (12 - k), 0.1, Resolution.SURE)
                  for k in range(12)]
        candidate = jump(1, 0, -0.1, 0.99, Resolution.CANDIDATE_UNRESOLVED)
        jumps = spikes + [candidate]
        x = potential_at([s.time for s in spikes], -0.1, config.kernel)
        assert x > 10.0
        assert rate_eval(config.rate, x) / 3.0 < 0.99
        out = forward_run(jumps, config)
        assert out.resolutions[-1] == (1, Resolution.CANDIDATE_REJECTED)
        # Neuron 0 kept its presynaptic list: all twelve spikes count at 0.
        assert out.presyn_count == 12
        expected = potential_at([s.time for s in spikes], 0.0, config.kernel)
        assert out.final_potential == pytest.approx(expected, rel=1e-15)

    def test_low_potential_candidate_accepted_and_propagates(self, config):
        # Accepted candidate behaves like a sure jump: resets itself and
        # feeds both neighbors.
        jumps = [jump(2, 1, -1.0, 0.9, Resolution.CANDIDATE_UNRESOLVED),
                 jump(1, 2, -0.5, 0.1, Resolution.SURE)]
        out = forward_run(jumps, config)
        # x_1(-1) = 0 so acceptance ratio is 1 >= 0.9.
        assert out.resolutions[0] == (2, Resolution.CANDIDATE_ACCEPTED)
        assert out.presyn_count == 1 and out.presyn_times == (-1.0,)

    def test_no_jump_left_unresolved(self, config):
        for seed in range(50):
            bw = backward_run(config, seed=seed)
            out = forward_run(chronological(bw), config)
            assert len(out.resolutions) == len(bw.jumps)
            assert all(r is not Resolution.CANDIDATE_UNRESOLVED for _, r in out.resolutions)

    def test_final_potential_consistency(self, config):
        for seed in range(50):
            out = forward_run(chronological(backward_run(config, seed=seed)), config)
            assert out.final_potential == potential_at(out.presyn_times, 0.0, config.kernel)
            assert (out.final_potential == 0.0) == (out.presyn_count == 0)

    def test_deterministic(self, config):
        jumps = chronological(backward_run(config, seed=11))
        assert forward_run(jumps, config) == forward_run(jumps, config)

    def test_unsorted_input_rejected(self, config):
        jumps = [jump(1, 0, -0.3, 0.2, Resolution.SURE),
                 jump(2, 1, -2.0, 0.1, Resolution.SURE)]
        with pytest.raises(ValueError):
            forward_run(jumps, config)

    def test_bad_mark_rejected(self, config):
        with pytest.raises(ValueError):
            forward_run([jump(1, 0, -1.0, 1.5, Resolution.SURE)], config)

    def test_causality_by_truncation(self, config):
        # The resolution of jump j only depends on strictly earlier jumps.
        jumps = chronological(backward_run(config, seed=23))
        full = forward_run(jumps, config).resolutions
        for cut in range(1, len(jumps) + 1):
            prefix = forward_run(jumps[:cut], config).resolutions
            assert prefix == full[:cut]

    def test_trace_potentials_replay_reset_semantics(self, config):
        # Replay the sweep independently from the trace: every recorded
        # potential must equal the sum over spikes received since the
        # neuron's last true spike, and a true spike must zero the list.
        from collections import defaultdict

        for seed in (37, 38, 39):
            rows: list = []
            jumps = chronological(backward_run(config, seed=seed))
            forward_run(jumps, config, trace=rows)
            replay: dict = defaultdict(list)
            for _, neuron, t, x, res in rows:
                assert x == potential_at(replay[neuron], t, config.kernel)
                if res is not Resolution.CANDIDATE_REJECTED:
                    replay[neuron] = []
                    for nb in (neuron - 1, neuron + 1):
                        replay[nb].append(t)
                    assert potential_at(replay[neuron], t + 1e-12, config.kernel) == 0.0

    def test_coupling_consistency_at_frozen_potential(self, config):
        # Conditional on being a candidate, the mark is uniform on
        # [2/3, 1]; the acceptance frequency must match the analytic
        # probability.
        x = 5.0
        n = 200_000
        rng = derive_rng(4242)
        marks = 2.0 / 3.0 + rng.random(n) / 3.0
        accepted = (rate_eval(config.rate, x) / config.rate.beta_max >= marks).mean()
        p = acceptance_probability(x, config.rate)
        se = math.sqrt(p * (1 - p) / n)
        assert abs(accepted - p) <= 3 * se


class TestForwardReverseVariant:
    def test_runs_and_is_deterministic(self, config):
        jumps = chronological(backward_run(config, seed=3))
        a = forward_run_reverse(jumps, config, derive_rng(1))
        b = forward_run_reverse(jumps, config, derive_rng(1))
        assert a == b >= 0.0

    def test_agrees_on_sure_only_histories(self, config):
        # With no candidates at all, both variants are pure bookkeeping
        # and must agree exactly.
        for seed in range(400):
            bw = backward_run(config, seed=seed)
            jumps = list(reversed(bw.jumps))
            if any(j.resolution is Resolution.CANDIDATE_UNRESOLVED for j in jumps):
                continue
            a = forward_run(jumps, config).final_potential
            b = forward_run_reverse(jumps, config, derive_rng(0))
            assert a == pytest.approx(b, rel=1e-12, abs=1e-300)
