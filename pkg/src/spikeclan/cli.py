"""Command-line entry point.

Three workflows: ``simulate`` (replicated stationary sampling plus the
empirical reports), ``phase-scan`` (extinction curve of the comparison
branching process), and ``trace`` (a single replicate with full
backward/forward debugging dumps).

Exit codes: 0 success, 2 invalid configuration (the message names the
offending field), 3 budget-exhausted fraction above the threshold,
4 unwritable output directory.  Every flag can also be set through an
environment variable prefixed with SPIKECLAN_, and ``--config`` loads a
JSON file with the {beta_min, beta_max, W, lambda, range} schema;
explicit flags win over both.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import backward as bw
from . import forward as fw
from . import phase as ph
from . import stats as st
from .model import ConfigError, build_network_config

_CONFIG_PARAM_BY_KEY = {
    "beta_min": "beta_min",
    "beta_max": "beta_max",
    "W": "w",
    "lambda": "lambda_",
    "range": "range_",
}


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_config_file(ctx, param, value):
    if value is None:
        return None
    try:
        with open(value) as fh:
            raw = json.load(fh)
    except OSError as exc:
        _fail(2, f"config: cannot read {value}: {exc}")
    except json.JSONDecodeError as exc:
        _fail(2, f"config: {value} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        _fail(2, "config: top level must be a JSON object")
    defaults = {}
    for key, v in raw.items():
        if key not in _CONFIG_PARAM_BY_KEY:
            _fail(2, f"{key}: unknown configuration field")
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            _fail(2, f"{key}: must be a number, got {v!r}")
        defaults[_CONFIG_PARAM_BY_KEY[key]] = v
    ctx.default_map = {**(ctx.default_map or {}), **defaults}
    return value


def _model_options(cmd):
    for opt in reversed([
        click.option("--config", type=click.Path(), callback=_load_config_file,
                     is_eager=True, expose_value=False,
                     help="JSON file with model parameters; flags override it."),
        click.option("--beta-min", type=float, default=2.0, show_default=True,
                     help="Lower spiking-rate bound (Hz)."),
        click.option("--beta-max", type=float, default=3.0, show_default=True,
                     help="Upper spiking-rate bound (Hz)."),
        click.option("--w", type=float, default=1.0, show_default=True,
                     help="Synaptic weight."),
        click.option("--lambda", "lambda_", type=float, default=2.0, show_default=True,
                     help="Kernel decay exponent."),
        click.option("--range", "range_", type=int, default=1, show_default=True,
                     help="Neighborhood radius."),
    ]):
        cmd = opt(cmd)
    return cmd


def _build_config(beta_min, beta_max, w, lambda_, range_):
    try:
        return build_network_config(beta_min, beta_max, w, lambda_, range_)
    except ConfigError as exc:
        _fail(2, str(exc))


def _check_positive(field, value, minimum=1):
    if value < minimum:
        _fail(2, f"{field}: must be >= {minimum}, got {value}")


def _prepare_out(out):
    try:
        os.makedirs(out, exist_ok=True)
        probe = os.path.join(out, ".write_probe")
        with open(probe, "w") as fh:
            fh.write("")
        os.remove(probe)
    except OSError as exc:
        _fail(4, f"output directory {out} is not writable: {exc}")


@click.group(context_settings={"auto_envvar_prefix": "SPIKECLAN"})
def cli():
    """Stationary sampling of an inhibitory spiking network."""


@cli.command()
@_model_options
@click.option("--replicates", "-n", type=int, default=100_000, show_default=True,
              help="Number of end-to-end replicates.")
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")
@click.option("--budget", type=int, default=1_000_000, show_default=True,
              help="Backward step budget per replicate.")
@click.option("--workers", type=int, default=1, show_default=True,
              help="Worker processes (output is worker-count independent).")
@click.option("--out", type=click.Path(), default="out", show_default=True,
              help="Output directory.")
@click.option("--max-exhausted", type=float, default=0.01, show_default=True,
              help="Exit 3 if the budget-exhausted fraction exceeds this.")
def simulate(beta_min, beta_max, w, lambda_, range_, replicates, seed, budget,
             workers, out, max_exhausted):
    """Sample the stationary potential and write summaries.csv,
    report.json and histograms.csv."""
    config = _build_config(beta_min, beta_max, w, lambda_, range_)
    _check_positive("replicates", replicates)
    _check_positive("budget", budget)
    _check_positive("workers", workers)
    if not (0.0 <= max_exhausted <= 1.0):
        _fail(2, f"max-exhausted: must be in [0, 1], got {max_exhausted}")
    _prepare_out(out)

    summaries = st.run_replicates(config, replicates, seed, budget=budget, workers=workers)
    exhausted = sum(1 for s in summaries if s.final_potential is None)
    try:
        st.write_summaries_csv(os.path.join(out, "summaries.csv"), summaries)
        if exhausted < len(summaries):
            report = st.build_report(config, summaries)
            st.write_report_json(os.path.join(out, "report.json"), config, report, seed, budget)
            st.write_histograms_csv(os.path.join(out, "histograms.csv"), report)
    except OSError as exc:
        _fail(4, f"cannot write outputs under {out}: {exc}")

    frac = exhausted / len(summaries)
    if exhausted:
        click.echo(f"warning: {exhausted} replicate(s) exhausted the backward budget", err=True)
    if frac > max_exhausted:
        _fail(3, f"budget-exhausted fraction {frac:.4f} exceeds threshold {max_exhausted}")
    click.echo(f"simulate: {replicates} replicates -> {out}")


@cli.command("phase-scan")
@click.option("--grid", type=str, required=True,
              help="Comma-separated positive delta values, e.g. '0.5,1.5'.")
@click.option("--replicates", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--horizon", type=float, default=1_000.0, show_default=True,
              help="Time cap per run (hits count as survival).")
@click.option("--cap", type=int, default=1_000, show_default=True,
              help="Population cap per run (hits count as survival).")
@click.option("--out", type=click.Path(), default="out", show_default=True)
def phase_scan(grid, replicates, seed, horizon, cap, out):
    """Estimate branching-process extinction over a delta grid and write
    phase.csv."""
    try:
        values = [float(tok) for tok in grid.split(",") if tok.strip()]
    except ValueError:
        _fail(2, f"grid: cannot parse {grid!r} as comma-separated floats")
    _check_positive("replicates", replicates)
    try:
        report = ph.delta_scan(values, replicates, seed, horizon=horizon, cap=cap)
    except ValueError as exc:
        _fail(2, f"grid: {exc}")
    _prepare_out(out)
    try:
        ph.write_phase_csv(os.path.join(out, "phase.csv"), report)
    except OSError as exc:
        _fail(4, f"cannot write outputs under {out}: {exc}")
    click.echo(f"phase-scan: {len(values)} grid point(s) -> {out}")


@cli.command()
@_model_options
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--budget", type=int, default=1_000_000, show_default=True)
@click.option("--out", type=click.Path(), default="out", show_default=True)
def trace(beta_min, beta_max, w, lambda_, range_, seed, budget, out):
    """Run one replicate and dump backward_trace.csv / forward_trace.csv."""
    config = _build_config(beta_min, beta_max, w, lambda_, range_)
    _check_positive("budget", budget)
    _prepare_out(out)
    try:
        result = bw.write_backward_trace(os.path.join(out, "backward_trace.csv"),
                                         config, target=0, seed=seed, budget=budget)
        if result.status is bw.BackwardStatus.BUDGET_EXHAUSTED:
            click.echo("trace: backward budget exhausted; forward pass skipped", err=True)
            click.echo(f"trace: {len(result.jumps)} jumps -> {out}")
            return
        rows: list = []
        outcome = fw.forward_run(list(reversed(result.jumps)), config, target=0, trace=rows)
        lines = ["index,neuron,time,potential,resolution"]
        for index, neuron, t, x, res in rows:
            lines.append(",".join((str(index), str(neuron), repr(t), repr(x), res.value)))
        with open(os.path.join(out, "forward_trace.csv"), "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        _fail(4, f"cannot write outputs under {out}: {exc}")
    click.echo(f"trace: {len(result.jumps)} jumps, final potential "
               f"{outcome.final_potential!r} -> {out}")


def main():
    cli()


if __name__ == "__main__":
    main()
