"""Static model objects shared by every other module.

Holds the spiking-rate function, the synaptic interaction kernel, the
lattice neighborhood structure and the membrane-potential evaluation.
Everything here is immutable after construction and every operation is a
pure function, so instances can be shared freely across concurrent
replicate workers.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum


class ConfigError(ValueError):
    """Invalid configuration value. ``field`` names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class RateFamily(Enum):
    HYPERBOLIC = "hyperbolic"
    TABLE = "table"


class Resolution(Enum):
    """Lifecycle of one dominating-process jump.

    Jumps with a mark below beta_min/beta_max are spikes no matter what
    (SURE).  The rest are candidates: the backward pass leaves them
    UNRESOLVED and the forward pass settles them by thinning.
    """

    SURE = "sure"
    CANDIDATE_UNRESOLVED = "unresolved"
    CANDIDATE_ACCEPTED = "accepted"
    CANDIDATE_REJECTED = "rejected"


@dataclass(frozen=True, slots=True)
class RateFunction:
    """Non-increasing spiking rate x -> beta(x) with beta_min < beta(x) <= beta_max.

    The hyperbolic family is (beta_max + x*beta_min) / (1 + x): it equals
    beta_max at x = 0 and decreases strictly toward beta_min as the
    potential grows, so the network is inhibitory.  The table family
    interpolates user-supplied (x, value) knots piecewise-linearly,
    clamped flat beyond the first and last knot.
    """

    beta_min: float
    beta_max: float
    family: RateFamily = RateFamily.HYPERBOLIC
    knots: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if not (0.0 < self.beta_min < math.inf):
            raise ConfigError("beta_min", f"must be a positive finite rate, got {self.beta_min}")
        if not (self.beta_min < self.beta_max < math.inf):
            raise ConfigError(
                "beta_max", f"must satisfy beta_min < beta_max < inf, got {self.beta_max}"
            )
        if self.family is RateFamily.TABLE:
            if not self.knots:
                raise ConfigError("knots", "table family needs at least one (x, value) knot")
            xs = [x for x, _ in self.knots]
            vs = [v for _, v in self.knots]
            if xs[0] < 0.0 or any(a >= b for a, b in zip(xs, xs[1:])):
                raise ConfigError("knots", "knot abscissae must be >= 0 and strictly increasing")
            if any(a < b for a, b in zip(vs, vs[1:])):
                raise ConfigError("knots", "knot values must be non-increasing")
            if any(not (self.beta_min < v <= self.beta_max) for v in vs):
                raise ConfigError("knots", "knot values must lie in (beta_min, beta_max]")
        elif self.knots:
            raise ConfigError("knots", "knots are only meaningful for the table family")

    @property
    def sure_probability(self) -> float:
        """Chance that a dominating-process jump is a spike unconditionally."""
        return self.beta_min / self.beta_max


@dataclass(frozen=True, slots=True)
class InteractionKernel:
    """Synaptic weight and power-law time decay h(t) = weight * (1+t)^(-decay)."""

    weight: float
    decay: float

    def __post_init__(self):
        if not (self.weight > 0.0 and math.isfinite(self.weight)):
            raise ConfigError("W", f"synaptic weight must be positive and finite, got {self.weight}")
        if not (self.decay > 0.0 and math.isfinite(self.decay)):
            raise ConfigError("lambda", f"decay exponent must be positive and finite, got {self.decay}")


@dataclass(frozen=True, slots=True)
class NetworkConfig:
    """Homogeneous lattice network: every neuron i interacts with the
    neurons at distance 1..range on either side, never with itself."""

    range: int
    kernel: InteractionKernel
    rate: RateFunction

    def __post_init__(self):
        if not (isinstance(self.range, int) and self.range >= 1):
            raise ConfigError("range", f"neighborhood radius must be an integer >= 1, got {self.range}")


@dataclass(frozen=True, slots=True)
class JumpRecord:
    """One atom of the dominating Poisson process.

    ``index`` is the 1-based generation order of the backward pass, so
    within one replicate times are strictly decreasing in ``index``
    (exact ties have probability zero and would be kept in generation
    order).
    """

    index: int
    neuron: int
    time: float
    mark: float
    resolution: Resolution


def kernel_eval(kernel: InteractionKernel, t: float) -> float:
    """Contribution of a spike after an elapsed time t >= 0."""
    if t < 0.0:
        raise ValueError(f"elapsed time must be >= 0, got {t} (backward time arithmetic bug upstream)")
    return kernel.weight * (1.0 + t) ** (-kernel.decay)


def rate_eval(rate: RateFunction, x: float) -> float:
    """Spiking rate at membrane potential x >= 0."""
    if x < 0.0:
        raise ValueError(f"potential must be >= 0, got {x}")
    if rate.family is RateFamily.HYPERBOLIC:
        return (rate.beta_max + x * rate.beta_min) / (1.0 + x)
    xs = [k[0] for k in rate.knots]
    vs = [k[1] for k in rate.knots]
    if x <= xs[0]:
        return vs[0]
    if x >= xs[-1]:
        return vs[-1]
    j = bisect.bisect_right(xs, x)
    frac = (x - xs[j - 1]) / (xs[j] - xs[j - 1])
    return vs[j - 1] + frac * (vs[j] - vs[j - 1])


def potential_at(presyn_times, t: float, kernel: InteractionKernel) -> float:
    """Membrane potential at time t given the spike times received since
    the neuron's last reset.  All presynaptic times must be < t."""
    total = 0.0
    for s in presyn_times:
        if s >= t:
            raise ValueError(f"presynaptic time {s} is not before evaluation time {t}")
        total += kernel.weight * (1.0 + (t - s)) ** (-kernel.decay)
    return total


def neighbors(config: NetworkConfig, i: int) -> set[int]:
    """Interaction neighborhood of neuron i: {i-range..i+range} minus i."""
    r = config.range
    return {j for j in range(i - r, i + r + 1) if j != i}


# JSON-compatible schema accepted by config files and the CLI.
_CONFIG_KEYS = ("beta_min", "beta_max", "W", "lambda", "range")


def build_network_config(beta_min: float, beta_max: float, weight: float,
                         decay: float, radius: int) -> NetworkConfig:
    """Assemble and validate a NetworkConfig from raw scalars."""
    rate = RateFunction(beta_min=float(beta_min), beta_max=float(beta_max))
    kernel = InteractionKernel(weight=float(weight), decay=float(decay))
    return NetworkConfig(range=int(radius), kernel=kernel, rate=rate)


def config_from_dict(raw: dict) -> NetworkConfig:
    """Parse the {beta_min, beta_max, W, lambda, range} schema.

    Raises ConfigError naming the offending field on any problem,
    including unknown keys.
    """
    for key in raw:
        if key not in _CONFIG_KEYS:
            raise ConfigError(key, "unknown configuration field")
    for key in _CONFIG_KEYS:
        if key not in raw:
            raise ConfigError(key, "missing configuration field")
        if not isinstance(raw[key], (int, float)) or isinstance(raw[key], bool):
            raise ConfigError(key, f"must be a number, got {raw[key]!r}")
    if raw["range"] != int(raw["range"]):
        raise ConfigError("range", f"must be an integer, got {raw['range']!r}")
    return build_network_config(raw["beta_min"], raw["beta_max"], raw["W"],
                                raw["lambda"], int(raw["range"]))


def default_config() -> NetworkConfig:
    """Reference parameterization: beta bounds 2 and 3 Hz, unit synaptic
    weight, decay exponent 2, nearest-neighbor interactions."""
    return build_network_config(2.0, 3.0, 1.0, 2.0, 1)
