import numpy as np
import pytest

from spikeclan.model import default_config


class FakeRng:
    """Scripted stand-in for a numpy Generator.

    Pops queued values so tests can force a specific branch of the
    backward step (neuron index, clock gap, uniform mark in that order).
    """

    def __init__(self, integers=(), exponentials=(), uniforms=()):
        self._int = list(integers)
        self._exp = list(exponentials)
        self._uni = list(uniforms)

    def integers(self, high):
        return self._int.pop(0)

    def standard_exponential(self):
        return self._exp.pop(0)

    def random(self):
        return self._uni.pop(0)


class RecordingRng:
    """Wraps a real Generator and records every uniform it hands out."""

    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self.uniforms: list[float] = []

    def integers(self, high):
        return self._rng.integers(high)

    def standard_exponential(self):
        return self._rng.standard_exponential()

    def random(self):
        u = float(self._rng.random())
        self.uniforms.append(u)
        return u


@pytest.fixture
def config():
    return default_config()
