"""Experiment harnesses: synthetic ski rental, dynamic power management,
and monthly one-max-search trading.  All harnesses are deterministic under
a fixed seed."""

from .dpm import (
    IdleTrace,
    PowerStateTable,
    dpm_offline_opt,
    dpm_run,
    load_idle_intervals,
    load_power_states,
    run_dpm_experiment,
)
from .synthetic import SyntheticSkiConfig, gen_synthetic_ski, run_ski_experiment
from .vix import VixRound, load_vix_csv, make_prediction, run_vix

__all__ = [
    "IdleTrace",
    "PowerStateTable",
    "SyntheticSkiConfig",
    "VixRound",
    "dpm_offline_opt",
    "dpm_run",
    "gen_synthetic_ski",
    "load_idle_intervals",
    "load_power_states",
    "load_vix_csv",
    "make_prediction",
    "run_dpm_experiment",
    "run_ski_experiment",
    "run_vix",
]
