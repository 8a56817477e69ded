"""Syndrome validation over a union-find forest."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ..lattice import SyndromeGraph
from . import _kernels as K


class Strategy(str, enum.Enum):
    UNIFORM_NAIVE = "uniform-naive"
    UNIFORM_FAST = "uniform"
    WEIGHTED_FAST = "weighted"


class EdgeState(enum.IntEnum):
    UNOCCUPIED = K.UNOCCUPIED
    HALF_GROWN = K.HALF_GROWN
    GROWN = K.GROWN


@dataclass
class GrowthStats:
    fusion_edges: int
    unions: int
    roots: list[int]


@dataclass
class ValidationResult:
    modified_erasure: np.ndarray
    growth_rounds: int
    union_calls: int
    find_calls: int
    forest: ClusterForest | None = field(default=None, repr=False)


class ClusterForest:
    """Union-find state of one decoding call.

    Not thread-safe: even :meth:`find` mutates (path compression).
    """

    def __init__(self, graph: SyndromeGraph, arrays: K.Arrays | None = None):
        self.graph = graph
        self.arrays = arrays or K.allocate(graph.vertex_count, graph.edge_count)
        self.odd_roots: list[int] = []

    @classmethod
    def initialize(cls, graph: SyndromeGraph, erasure, syndrome) -> ClusterForest:
        forest = cls(graph)
        erasure = graph.edge_mask(erasure)
        syndrome = graph.vertex_mask(syndrome)
        n = K.init(forest.arrays, graph.incident_edges, graph.incident_vertices, erasure, syndrome)
        forest.odd_roots = forest.arrays.roots_a[:n].tolist()
        return forest

    # -- union-find ---------------------------------------------------------
    def find(self, v: int) -> int:
        F = self.arrays
        return int(K.find(F.parent, F.stats, v))

    def union(self, ru: int, rv: int) -> int:
        F = self.arrays
        return int(K.union(F.parent, F.size, F.parity, F.stats, ru, rv))

    def parent(self, v: int) -> int:
        return int(self.arrays.parent[v])

    def is_root(self, v: int) -> bool:
        return self.arrays.parent[v] == v

    def size(self, root: int) -> int:
        return int(self.arrays.size[root])

    def parity(self, root: int) -> int:
        return int(self.arrays.parity[root])

    def roots(self) -> list[int]:
        return np.flatnonzero(self.arrays.parent == np.arange(self.graph.vertex_count)).tolist()

    def boundary(self, root: int) -> list[int]:
        out = []
        v = self.arrays.bhead[root]
        while v != -1:
            out.append(int(v))
            v = self.arrays.bnext[v]
        return out

    def support(self, e: int) -> EdgeState:
        return EdgeState(int(self.arrays.support[e]))

    def origin(self, e: int) -> int | None:
        """Vertex a half-grown edge was grown from."""
        if self.arrays.support[e] != K.HALF_GROWN:
            return None
        return int(self.arrays.origin[e])

    def labels(self) -> np.ndarray:
        """Root of every vertex, read without compressing paths."""
        parent = self.arrays.parent
        out = parent.copy()
        while True:
            nxt = parent[out]
            if np.array_equal(nxt, out):
                return out
            out = nxt

    @property
    def find_calls(self) -> int:
        return int(self.arrays.stats[K.FINDS])

    @property
    def union_calls(self) -> int:
        return int(self.arrays.stats[K.UNIONS])

    @property
    def growth_rounds(self) -> int:
        return int(self.arrays.stats[K.ROUNDS])

    def grown_edges(self) -> np.ndarray:
        return self.arrays.support == K.GROWN


def init_forest(graph: SyndromeGraph, erasure, syndrome) -> ClusterForest:
    return ClusterForest.initialize(graph, erasure, syndrome)


def find(forest: ClusterForest, v: int) -> int:
    return forest.find(v)


def union(forest: ClusterForest, ru: int, rv: int) -> int:
    return forest.union(ru, rv)


def grow_round(forest: ClusterForest, graph: SyndromeGraph, roots) -> GrowthStats:
    """One growth round over ``roots``; also replaces ``forest.odd_roots``."""
    F = forest.arrays
    roots_in = np.asarray(list(roots), dtype=np.int64)
    roots_out = np.empty(max(len(roots_in), 1), dtype=np.int64)
    n_in = len(roots_in)
    # on_list must describe exactly the incoming list
    F.on_list[:] = False
    F.on_list[roots_in] = True
    n, fusions, unions = K.grow_round(
        F, graph.edges, graph.incident_edges, graph.incident_vertices, roots_in, n_in, roots_out
    )
    forest.odd_roots = roots_out[:n].tolist()
    return GrowthStats(int(fusions), int(unions), list(forest.odd_roots))


def validate(graph: SyndromeGraph, erasure, syndrome, strategy=Strategy.UNIFORM_FAST) -> ValidationResult:
    """Grow odd clusters until every cluster holds an even number of syndrome vertices.

    Returns the modified erasure: the original erasure plus every fully
    grown edge. Half-grown edges are left out.
    """
    strategy = Strategy(strategy)
    if strategy is Strategy.UNIFORM_NAIVE:
        from .naive import validate_naive

        eps, rounds = validate_naive(graph, erasure, syndrome)
        return ValidationResult(eps, rounds, 0, 0)

    forest = ClusterForest.initialize(graph, erasure, syndrome)
    F = forest.arrays
    args = (F, graph.edges, graph.incident_edges, graph.incident_vertices, len(forest.odd_roots))
    if strategy is Strategy.UNIFORM_FAST:
        K.validate_uniform(*args)
    else:
        K.validate_weighted(*args)
    forest.odd_roots = []
    return ValidationResult(
        forest.grown_edges(),
        forest.growth_rounds,
        forest.union_calls,
        forest.find_calls,
        forest,
    )
