"""Peeling decoder for a validated erasure.

A depth-first spanning forest of the erased subgraph is peeled leaf first:
a pendant vertex carrying a syndrome bit puts its tree edge into the
correction and passes the bit to its parent.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from numba import njit

from .lattice import SyndromeGraph


class ValidationContractError(RuntimeError):
    """The erasure handed to the peeler has a component with odd syndrome parity."""

    def __init__(self, root: int):
        super().__init__(f"component rooted at vertex {root} holds an odd number of syndrome vertices")
        self.root = root


@dataclass(frozen=True, eq=False)
class Correction:
    edges: np.ndarray


Scratch = namedtuple("Scratch", ["syndrome", "visited", "order", "parent_v", "parent_e", "stack", "ptr"])


def allocate(n_vertices: int) -> Scratch:
    V = n_vertices
    return Scratch(
        syndrome=np.empty(V, np.bool_),
        visited=np.empty(V, np.bool_),
        order=np.empty(V, np.int64),
        parent_v=np.empty(V, np.int64),
        parent_e=np.empty(V, np.int64),
        stack=np.empty(V, np.int64),
        ptr=np.empty(V, np.int64),
    )


@njit(cache=True)
def peel_into(S, inc_e, inc_v, erasure, syndrome, out):
    """Write the correction to ``out``; return -1, or the root of an odd component."""
    V = inc_e.shape[0]
    deg = inc_e.shape[1]
    syn = S.syndrome
    for v in range(V):
        syn[v] = syndrome[v]
        S.visited[v] = False
    out[:] = False
    k = 0
    for s in range(V):
        if S.visited[s]:
            continue
        start = k
        S.visited[s] = True
        S.order[k] = s
        S.parent_e[s] = -1
        k += 1
        S.stack[0] = s
        S.ptr[0] = 0
        top = 1
        while top > 0:
            v = S.stack[top - 1]
            p = S.ptr[top - 1]
            if p == deg:
                top -= 1
                continue
            S.ptr[top - 1] = p + 1
            e = inc_e[v, p]
            w = inc_v[v, p]
            if erasure[e] and not S.visited[w]:
                S.visited[w] = True
                S.parent_v[w] = v
                S.parent_e[w] = e
                S.order[k] = w
                k += 1
                S.stack[top] = w
                S.ptr[top] = 0
                top += 1
        # reverse preorder visits every vertex after all of its descendants
        for i in range(k - 1, start, -1):
            v = S.order[i]
            if syn[v]:
                out[S.parent_e[v]] = True
                syn[S.parent_v[v]] ^= True
                syn[v] = False
        if syn[s]:
            return s
    return -1


def peel(graph: SyndromeGraph, erasure_prime, syndrome) -> Correction:
    """Correction supported on ``erasure_prime`` whose syndrome is ``syndrome``."""
    erasure_prime = graph.edge_mask(erasure_prime)
    syndrome = graph.vertex_mask(syndrome)
    out = np.empty(graph.edge_count, dtype=np.bool_)
    bad = peel_into(allocate(graph.vertex_count), graph.incident_edges, graph.incident_vertices, erasure_prime, syndrome, out)
    if bad >= 0:
        raise ValidationContractError(int(bad))
    return Correction(out)
