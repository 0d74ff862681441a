"""Backward clan-of-ancestors pass.

Starting from the target neuron at time 0 and walking backward in time,
this pass generates every jump of the dominating Poisson process (rate
beta_max per simulated neuron) that can causally influence the target's
state at time 0.  The clan holds the neurons whose candidate jumps are
still unresolved; the simulated set is the clan plus its interaction
boundary.  Per step, one neuron is drawn uniformly from the simulated
set, the clock retreats by Exp(|simulated| * beta_max), and a uniform
mark classifies the jump:

* mark <  beta_min/beta_max -- sure jump.  A sure jump of a clan member
  resolves that neuron (its state is pinned to a reset), so it leaves
  the clan.
* mark >= beta_min/beta_max -- candidate jump.  A candidate of a
  non-member means that neuron's state now matters, so it joins the
  clan and its neighbors join the simulated set.

The pass ends when the clan empties (every dependence resolved) or a
step budget is exhausted; non-termination is a first-class result, not
an error, because for small beta_min/(beta_max - beta_min) the clan can
grow without bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import JumpRecord, NetworkConfig, Resolution
from .streams import as_rng


class BackwardStatus(Enum):
    TERMINATED = "terminated"
    BUDGET_EXHAUSTED = "budget_exhausted"


class IndexedSet:
    """Set of ints with O(1) add/discard and O(1) uniform indexing.

    Removal swaps the last element into the hole, so the internal order
    is a deterministic function of the operation history (but not
    sorted).  Uniform draws only need *some* stable order.
    """

    __slots__ = ("_items", "_pos")

    def __init__(self, items=()):
        self._items: list[int] = []
        self._pos: dict[int, int] = {}
        for x in items:
            self.add(x)

    def add(self, x: int) -> None:
        if x not in self._pos:
            self._pos[x] = len(self._items)
            self._items.append(x)

    def discard(self, x: int) -> None:
        k = self._pos.pop(x, None)
        if k is None:
            return
        last = self._items.pop()
        if last != x:
            self._items[k] = last
            self._pos[last] = k

    def __contains__(self, x: int) -> bool:
        return x in self._pos

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def at(self, k: int) -> int:
        return self._items[k]


class ClanState:
    """Mutable per-replicate state of the backward pass.

    ``simulated`` is kept exactly equal to clan plus the neighbors of
    clan members after every step.  ``touched`` accumulates every neuron
    that was ever simulated.  Confined to one replicate worker.
    """

    __slots__ = ("clan", "simulated", "clock", "jump_count", "touched")

    def __init__(self, clan, simulated, clock=0.0, jump_count=0):
        self.clan: set[int] = set(clan)
        self.simulated = IndexedSet(simulated)
        self.clock = clock
        self.jump_count = jump_count
        self.touched: set[int] = set(simulated)


def backward_init(config: NetworkConfig, target: int = 0) -> ClanState:
    """Fresh state: clan = {target}, simulated = target plus neighbors.

    The initial simulated set is ordered ascending, so the first draw
    maps rng index k to the k-th smallest neuron.
    """
    r = config.range
    return ClanState(clan=[target], simulated=range(target - r, target + r + 1))


def _has_clan_neighbor(clan: set[int], j: int, r: int) -> bool:
    return any(k in clan for k in range(j - r, j + r + 1) if k != j)


def backward_step(state: ClanState, config: NetworkConfig, rng,
                  s_mode: str = "exact") -> tuple[ClanState, JumpRecord]:
    """Generate one jump and update the clan/simulated sets in place.

    Draw order per step: neuron index, exponential clock decrement,
    uniform mark.  ``s_mode`` selects the simulated-set bookkeeping:
    "exact" maintains simulated = clan + neighbors(clan) after every
    change; "loose" reproduces an alternative rule that removes only the
    two flanking neurons under a partial condition and never the jumping
    neuron itself (kept for comparison, nearest-neighbor networks only).
    """
    if not state.clan:
        raise ValueError("backward_step called with an empty clan")
    if s_mode not in ("exact", "loose"):
        raise ValueError(f"unknown s_mode {s_mode!r}")
    if s_mode == "loose" and config.range != 1:
        raise ValueError("loose simulated-set bookkeeping is defined for range=1 only")

    sim = state.simulated
    clan = state.clan
    r = config.range
    m = len(sim)
    neuron = sim.at(int(rng.integers(m)))
    state.clock -= rng.standard_exponential() / (m * config.rate.beta_max)
    mark = float(rng.random())

    if mark < config.rate.sure_probability:
        resolution = Resolution.SURE
        if neuron in clan:
            clan.discard(neuron)
            if s_mode == "exact":
                # Only neurons within range of the removed member can lose
                # their reason to be simulated.
                for j in range(neuron - r, neuron + r + 1):
                    if j in sim and j not in clan and not _has_clan_neighbor(clan, j, r):
                        sim.discard(j)
            else:
                for j in (neuron - 1, neuron + 1):
                    away = j - 1 if j < neuron else j + 1
                    if j not in clan and away not in clan:
                        sim.discard(j)
    else:
        resolution = Resolution.CANDIDATE_UNRESOLVED
        if neuron not in clan:
            clan.add(neuron)
            for j in range(neuron - r, neuron + r + 1):
                sim.add(j)
                state.touched.add(j)

    state.jump_count += 1
    jump = JumpRecord(index=state.jump_count, neuron=neuron, time=state.clock,
                      mark=mark, resolution=resolution)
    return state, jump


@dataclass(frozen=True, slots=True)
class BackwardResult:
    """Jump list in generation (reverse-chronological) order plus stop
    status.  ``n_stop`` is the step count at which the clan emptied and
    is only meaningful when status is TERMINATED."""

    jumps: list[JumpRecord]
    status: BackwardStatus
    n_stop: int | None
    t_stop: float
    touched: frozenset[int]


def backward_run(config: NetworkConfig, target: int = 0, seed=0,
                 budget: int = 1_000_000, s_mode: str = "exact") -> BackwardResult:
    """Run the backward pass to clan extinction or budget exhaustion.

    ``seed`` may be an int, an (int, int) stream key, or a ready
    numpy Generator.  Identical inputs give a bit-identical jump list.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    rng = as_rng(seed)
    state = backward_init(config, target)
    jumps: list[JumpRecord] = []
    while state.clan and len(jumps) < budget:
        _, jump = backward_step(state, config, rng, s_mode)
        jumps.append(jump)
    terminated = not state.clan
    return BackwardResult(
        jumps=jumps,
        status=BackwardStatus.TERMINATED if terminated else BackwardStatus.BUDGET_EXHAUSTED,
        n_stop=len(jumps) if terminated else None,
        t_stop=jumps[-1].time,
        touched=frozenset(state.touched),
    )


def write_backward_trace(path, config: NetworkConfig, target: int = 0, seed=0,
                         budget: int = 1_000_000) -> BackwardResult:
    """Run one backward pass and dump a debugging CSV: one row per jump
    with the clan and simulated-set sizes after the jump took effect.
    Returns the run result so callers can chain the forward pass."""
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    rng = as_rng(seed)
    state = backward_init(config, target)
    jumps: list[JumpRecord] = []
    lines = ["index,neuron,time,mark,sure,clan_size,simulated_size"]
    while state.clan and len(jumps) < budget:
        _, jump = backward_step(state, config, rng)
        jumps.append(jump)
        lines.append(",".join((
            str(jump.index), str(jump.neuron), repr(jump.time), repr(jump.mark),
            "1" if jump.resolution is Resolution.SURE else "0",
            str(len(state.clan)), str(len(state.simulated)),
        )))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    terminated = not state.clan
    return BackwardResult(
        jumps=jumps,
        status=BackwardStatus.TERMINATED if terminated else BackwardStatus.BUDGET_EXHAUSTED,
        n_stop=len(jumps) if terminated else None,
        t_stop=jumps[-1].time,
        touched=frozenset(state.touched),
    )
