"""Union-find decoding of the toric code under mixed erasure and Pauli-Z noise."""

from .cluster import Strategy, validate
from .harness import ExperimentConfig, ExperimentSummary, estimate_crossing, run_experiment, run_trial
from .homology import Verdict, judge
from .lattice import Cut, Lattice, SyndromeGraph, build, build_torus_2d, build_torus_3d, crossing_parity
from .noise import ErrorState, NoiseParams, inject, sample, syndrome_of
from .peeling import Correction, peel

__all__ = [
    "Correction",
    "Cut",
    "ErrorState",
    "ExperimentConfig",
    "ExperimentSummary",
    "Lattice",
    "NoiseParams",
    "Strategy",
    "SyndromeGraph",
    "Verdict",
    "build",
    "build_torus_2d",
    "build_torus_3d",
    "crossing_parity",
    "estimate_crossing",
    "inject",
    "judge",
    "peel",
    "run_experiment",
    "run_trial",
    "sample",
    "syndrome_of",
    "validate",
]
