"""Quadratic reference validation.

Clusters are recomputed from scratch every round by connected-component
labelling of the grown edges, with no union-find state carried between
rounds. Used as a test oracle for the fast implementation.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..lattice import SyndromeGraph

UNOCCUPIED, HALF_GROWN, GROWN = 0, 1, 2


def _components(graph: SyndromeGraph, grown: np.ndarray) -> np.ndarray:
    u, v = graph.edges[grown].T
    n = graph.vertex_count
    adj = coo_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(n, n))
    _, labels = connected_components(adj, directed=False)
    return labels


def validate_naive(graph: SyndromeGraph, erasure, syndrome) -> tuple[np.ndarray, int]:
    """Return ``(modified_erasure, rounds)``."""
    erasure = graph.edge_mask(erasure)
    syndrome = graph.vertex_mask(syndrome)
    support = np.where(erasure, GROWN, UNOCCUPIED).astype(np.int8)
    rounds = 0
    while True:
        labels = _components(graph, support == GROWN)
        odd_label = np.bincount(labels, weights=syndrome, minlength=labels.max() + 1) % 2 == 1
        growing = odd_label[labels]
        if not growing.any():
            return support == GROWN, rounds
        # every growing vertex pushes each incident non-grown edge by half a step
        touches = np.zeros(graph.edge_count, dtype=np.int64)
        inc = graph.incident_edges[growing].ravel()
        np.add.at(touches, inc, 1)
        touched = (touches > 0) & (support != GROWN)
        total = np.where(support == HALF_GROWN, 1, 0) + np.where(touched, touches, 0)
        support = np.where(touched, np.where(total >= 2, GROWN, HALF_GROWN), support).astype(np.int8)
        rounds += 1


def validate_equivalence_oracle(graph: SyndromeGraph, erasure, syndrome) -> np.ndarray:
    return validate_naive(graph, erasure, syndrome)[0]
