"""Perfect sampling of the stationary membrane potential in an
inhibitory spiking network on the integer lattice.

A backward clan-of-ancestors pass enumerates every dominating-process
jump that can influence the target neuron at time 0; a forward thinning
pass resolves those jumps into true spikes and rebuilds the potential.
The same package ships a branching-process phase explorer, a replicated
statistics harness, and a CLI.
"""

from .backward import (
    BackwardResult,
    BackwardStatus,
    ClanState,
    backward_init,
    backward_run,
    backward_step,
)
from .forward import ForwardResult, acceptance_probability, forward_run
from .model import (
    ConfigError,
    InteractionKernel,
    JumpRecord,
    NetworkConfig,
    RateFamily,
    RateFunction,
    Resolution,
    build_network_config,
    config_from_dict,
    default_config,
    kernel_eval,
    neighbors,
    potential_at,
    rate_eval,
)
from .phase import (
    BranchingConfig,
    BranchingOutcome,
    PhaseScanReport,
    branching_simulate,
    delta_of,
    delta_scan,
    extinction_probability,
)
from .stats import (
    Histogram,
    ReplicateSummary,
    StatsReport,
    build_report,
    histogram,
    presyn_pmf,
    run_replicates,
    zero_probability,
)

__all__ = [name for name in dir() if not name.startswith("_")]
