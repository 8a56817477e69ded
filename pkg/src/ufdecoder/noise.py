"""Mixed erasure + Pauli-Z noise and the syndrome map."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .lattice import SyndromeGraph
from .rng import next_double, stream


@dataclass(frozen=True)
class NoiseParams:
    """Erasure rate ``p_e`` and Pauli-Z rate ``p_z`` (the latter on non-erased edges)."""

    p_e: float
    p_z: float

    def __post_init__(self):
        for name in ("p_e", "p_z"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True, eq=False)
class ErrorState:
    """Sampled or injected error: erasure and Z masks over edges, syndrome over vertices."""

    erasure: np.ndarray
    pauli_z: np.ndarray
    syndrome: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, ErrorState):
            return NotImplemented
        return (
            np.array_equal(self.erasure, other.erasure)
            and np.array_equal(self.pauli_z, other.pauli_z)
            and np.array_equal(self.syndrome, other.syndrome)
        )


@njit(cache=True)
def sample_into(state, p_e, p_z, erasure, pauli_z):
    """Draw one error in place. Two doubles are consumed per edge, always."""
    for e in range(erasure.shape[0]):
        u = next_double(state)
        w = next_double(state)
        if u < p_e:
            erasure[e] = True
            pauli_z[e] = w < 0.5
        else:
            erasure[e] = False
            pauli_z[e] = w < p_z


@njit(cache=True)
def syndrome_into(edges, pauli_z, out):
    out[:] = False
    for e in range(pauli_z.shape[0]):
        if pauli_z[e]:
            out[edges[e, 0]] ^= True
            out[edges[e, 1]] ^= True


def syndrome_of(graph: SyndromeGraph, pauli_z) -> np.ndarray:
    """Vertices touching an odd number of Z-errored edges."""
    mask = graph.edge_mask(pauli_z)
    counts = np.bincount(graph.edges[mask].ravel(), minlength=graph.vertex_count)
    return (counts & 1).astype(np.bool_)


def inject(graph: SyndromeGraph, erasure, pauli_z) -> ErrorState:
    erasure = graph.edge_mask(erasure).copy()
    pauli_z = graph.edge_mask(pauli_z).copy()
    return ErrorState(erasure, pauli_z, syndrome_of(graph, pauli_z))


def sample(graph: SyndromeGraph, params: NoiseParams, rng) -> ErrorState:
    """Sample an error.

    ``rng`` is a stream state from :func:`ufdecoder.rng.stream` (advanced in
    place) or a ``(seed, trial)`` pair.
    """
    state = stream(*rng) if isinstance(rng, tuple) else rng
    erasure = np.empty(graph.edge_count, dtype=np.bool_)
    pauli_z = np.empty(graph.edge_count, dtype=np.bool_)
    sample_into(state, float(params.p_e), float(params.p_z), erasure, pauli_z)
    return ErrorState(erasure, pauli_z, syndrome_of(graph, pauli_z))
