"""Logical-failure test: is the residual error a stabilizer or a logical operator?"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .lattice import Cut, SyndromeGraph, crossing_parity
from .noise import syndrome_of


class ResidualSyndromeError(RuntimeError):
    """The residual handed to :func:`judge` is not a cycle."""


@dataclass(frozen=True)
class Verdict:
    failed: bool
    class_bits: tuple[int, int]


def judge(graph: SyndromeGraph, residual) -> Verdict:
    """Classify a cycle by its crossing parities with the two spatial cuts."""
    residual = graph.edge_mask(residual)
    syndrome = syndrome_of(graph, residual)
    if syndrome.any():
        raise ResidualSyndromeError(f"residual has syndrome at vertices {np.flatnonzero(syndrome)[:8].tolist()}")
    bits = (crossing_parity(graph, residual, Cut.X), crossing_parity(graph, residual, Cut.Y))
    return Verdict(bits != (0, 0), bits)


@njit(cache=True)
def class_bits_into(cut_x, cut_y, pauli_z, correction):
    """Crossing parities of ``pauli_z ^ correction``, packed as ``x | y << 1``."""
    bx = 0
    by = 0
    for e in range(pauli_z.shape[0]):
        if pauli_z[e] != correction[e]:
            if cut_x[e]:
                bx ^= 1
            if cut_y[e]:
                by ^= 1
    return bx | (by << 1)
