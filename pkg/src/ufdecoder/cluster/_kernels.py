"""Compiled union-find growth kernels.

All state lives in a :class:`Arrays` named tuple of flat arrays so the same
kernels serve single decodes (through :class:`~ufdecoder.cluster.ClusterForest`)
and batched Monte Carlo loops.

Boundary lists are singly linked lists threaded through ``bnext``: a vertex
sits in at most one list (its cluster's), so one next-pointer per vertex is
enough and appending a whole list is O(1).
"""

from __future__ import annotations

import heapq
from collections import namedtuple

import numpy as np
from numba import njit

UNOCCUPIED = 0
HALF_GROWN = 1
GROWN = 2

# indices into Arrays.stats
FINDS = 0
UNIONS = 1
ROUNDS = 2
FUSIONS = 3

Arrays = namedtuple(
    "Arrays",
    [
        "parent",  # int64[V]; roots point to themselves
        "size",  # int64[V], meaningful at roots
        "parity",  # uint8[V], meaningful at roots
        "bhead",  # int64[V] boundary list head per root, -1 if empty
        "btail",  # int64[V]
        "bnext",  # int64[V] next vertex in the same boundary list, -1 at the end
        "blen",  # int64[V]
        "on_list",  # bool[V] membership of the current odd-root list
        "support",  # int8[E]
        "origin",  # int64[E] growth origin of half-grown edges, -1 otherwise
        "stats",  # int64[4]
        "fusion",  # int64[E] scratch: fusion edges of one round
        "pairs",  # int64[V, 2] scratch: (survivor, absorbed) per union of one round
        "roots_a",  # int64[V] scratch: odd-root lists
        "roots_b",  # int64[V]
        "scratch",  # int64[V] scratch: DFS stack during init
    ],
)


def allocate(n_vertices: int, n_edges: int) -> Arrays:
    V, E = n_vertices, n_edges
    return Arrays(
        parent=np.empty(V, np.int64),
        size=np.empty(V, np.int64),
        parity=np.empty(V, np.uint8),
        bhead=np.empty(V, np.int64),
        btail=np.empty(V, np.int64),
        bnext=np.empty(V, np.int64),
        blen=np.empty(V, np.int64),
        on_list=np.empty(V, np.bool_),
        support=np.empty(E, np.int8),
        origin=np.empty(E, np.int64),
        stats=np.zeros(4, np.int64),
        fusion=np.empty(E, np.int64),
        pairs=np.empty((V, 2), np.int64),
        roots_a=np.empty(V, np.int64),
        roots_b=np.empty(V, np.int64),
        scratch=np.empty(V, np.int64),
    )


@njit(cache=True)
def find(parent, stats, v):
    stats[FINDS] += 1
    root = v
    while parent[root] != root:
        root = parent[root]
    while parent[v] != root:
        nxt = parent[v]
        parent[v] = root
        v = nxt
    return root


@njit(cache=True)
def union(parent, size, parity, stats, ru, rv):
    """Link two distinct roots by size; ties go to the lower index. Returns the survivor."""
    if ru == rv or parent[ru] != ru or parent[rv] != rv:
        raise ValueError("union needs two distinct roots")
    stats[UNIONS] += 1
    if size[ru] > size[rv] or (size[ru] == size[rv] and ru < rv):
        big, small = ru, rv
    else:
        big, small = rv, ru
    parent[small] = big
    size[big] += size[small]
    parity[big] ^= parity[small]
    return big


@njit(cache=True)
def append_list(bhead, btail, bnext, blen, dst, src):
    """Move the boundary list of ``src`` to the end of the list of ``dst``."""
    if blen[src] == 0:
        return
    if blen[dst] == 0:
        bhead[dst] = bhead[src]
    else:
        bnext[btail[dst]] = bhead[src]
    btail[dst] = btail[src]
    blen[dst] += blen[src]
    bhead[src] = -1
    btail[src] = -1
    blen[src] = 0


@njit(cache=True)
def init(F, inc_e, inc_v, erasure, syndrome):
    """One depth-1 tree per component of (V, erasure). Writes odd roots,
    ascending, to ``roots_a`` and returns their number."""
    parent, size, parity = F.parent, F.size, F.parity
    bhead, btail, bnext, blen = F.bhead, F.btail, F.bnext, F.blen
    support, stack = F.support, F.scratch
    V = inc_e.shape[0]
    deg = inc_e.shape[1]
    F.stats[:] = 0
    for e in range(erasure.shape[0]):
        support[e] = GROWN if erasure[e] else UNOCCUPIED
        F.origin[e] = -1
    for v in range(V):
        parent[v] = -1
        bhead[v] = -1
        btail[v] = -1
        bnext[v] = -1
        blen[v] = 0
        F.on_list[v] = False
    for s in range(V):
        if parent[s] != -1:
            continue
        parent[s] = s
        count = 1
        par = np.uint8(1) if syndrome[s] else np.uint8(0)
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            v = stack[top]
            for k in range(deg):
                if erasure[inc_e[v, k]]:
                    w = inc_v[v, k]
                    if parent[w] == -1:
                        parent[w] = s
                        count += 1
                        if syndrome[w]:
                            par ^= np.uint8(1)
                        stack[top] = w
                        top += 1
        size[s] = count
        parity[s] = par
    # ascending scan keeps every boundary list sorted
    for v in range(V):
        for k in range(deg):
            if not erasure[inc_e[v, k]]:
                r = parent[v]
                if blen[r] == 0:
                    bhead[r] = v
                else:
                    bnext[btail[r]] = v
                btail[r] = v
                blen[r] += 1
                break
    n = 0
    for v in range(V):
        if parent[v] == v and parity[v] == 1:
            F.roots_a[n] = v
            F.on_list[v] = True
            n += 1
    return n


@njit(cache=True)
def _prune(bhead, btail, bnext, blen, support, inc_e, root):
    deg = inc_e.shape[1]
    prev = -1
    v = bhead[root]
    n = 0
    while v != -1:
        nxt = bnext[v]
        keep = False
        for k in range(deg):
            if support[inc_e[v, k]] != GROWN:
                keep = True
                break
        if keep:
            if prev == -1:
                bhead[root] = v
            else:
                bnext[prev] = v
            prev = v
            n += 1
        v = nxt
    if prev == -1:
        bhead[root] = -1
    else:
        bnext[prev] = -1
    btail[root] = prev
    blen[root] = n


@njit(cache=True)
def grow_round(F, edges, inc_e, inc_v, roots_in, n_in, roots_out):
    """Grow the clusters rooted at ``roots_in[:n_in]`` by one half-edge.

    Returns ``(n_out, n_fusion, n_union)``; the updated odd-root list is
    written to ``roots_out``.
    """
    parent, size, parity, stats = F.parent, F.size, F.parity, F.stats
    bhead, btail, bnext, blen = F.bhead, F.btail, F.bnext, F.blen
    support, origin, fusion, pairs, on_list = F.support, F.origin, F.fusion, F.pairs, F.on_list
    deg = inc_e.shape[1]
    # half-grow every boundary edge; a second half completes it
    n_fusion = 0
    for i in range(n_in):
        v = bhead[roots_in[i]]
        while v != -1:
            for k in range(deg):
                e = inc_e[v, k]
                state = support[e]
                if state == UNOCCUPIED:
                    support[e] = HALF_GROWN
                    origin[e] = v
                elif state == HALF_GROWN:
                    support[e] = GROWN
                    fusion[n_fusion] = e
                    n_fusion += 1
            v = bnext[v]
    stats[FUSIONS] += n_fusion
    # merge across completed edges, remembering (survivor, absorbed) roots
    n_union = 0
    for i in range(n_fusion):
        e = fusion[i]
        ru = find(parent, stats, edges[e, 0])
        rv = find(parent, stats, edges[e, 1])
        if ru != rv:
            big = union(parent, size, parity, stats, ru, rv)
            pairs[n_union, 0] = big
            pairs[n_union, 1] = rv if big == ru else ru
            n_union += 1
    # splice boundary lists onto the survivors
    for i in range(n_union):
        append_list(bhead, btail, bnext, blen, pairs[i, 0], pairs[i, 1])
    # current roots of the grown clusters, each listed once
    for i in range(n_in):
        on_list[roots_in[i]] = False
    n_out = 0
    for i in range(n_in):
        r = find(parent, stats, roots_in[i])
        if not on_list[r]:
            on_list[r] = True
            roots_out[n_out] = r
            n_out += 1
    # drop vertices whose edges are all grown
    for i in range(n_out):
        _prune(bhead, btail, bnext, blen, support, inc_e, roots_out[i])
    # even clusters stop growing
    n_odd = 0
    for i in range(n_out):
        r = roots_out[i]
        if parity[r] == 1:
            roots_out[n_odd] = r
            n_odd += 1
        else:
            on_list[r] = False
    stats[ROUNDS] += 1
    return n_odd, n_fusion, n_union


@njit(cache=True)
def validate_uniform(F, edges, inc_e, inc_v, n_odd):
    """Grow every odd cluster each round until none is left (odd roots in ``roots_a``)."""
    a = F.roots_a
    b = F.roots_b
    n = n_odd
    while n > 0:
        n, _, _ = grow_round(F, edges, inc_e, inc_v, a, n, b)
        a, b = b, a


@njit(cache=True)
def validate_weighted(F, edges, inc_e, inc_v, n_odd):
    """Grow, each round, every odd cluster whose boundary list is currently the shortest.

    A lazy heap keyed by (list length, root) holds candidates; stale keys
    are skipped on pop. Selected roots are grown in ascending order.
    """
    parent, parity, blen, on_list = F.parent, F.parity, F.blen, F.on_list
    V = inc_e.shape[0]
    base = V + 1
    heap = [np.int64(0)]
    heap.pop()
    for i in range(n_odd):
        r = F.roots_a[i]
        on_list[r] = False
        heap.append(blen[r] * base + r)
    heapq.heapify(heap)
    sel = F.roots_a
    out = F.roots_b
    while len(heap) > 0:
        n_sel = 0
        length = -1
        while len(heap) > 0:
            key = heap[0]
            if length >= 0 and key // base != length:
                break
            heapq.heappop(heap)
            r = key % base
            if parent[r] != r or parity[r] == 0 or blen[r] != key // base or on_list[r]:
                continue
            length = key // base
            on_list[r] = True
            sel[n_sel] = r
            n_sel += 1
        if n_sel == 0:
            continue
        # heap order already lists equal lengths by ascending root
        n, _, _ = grow_round(F, edges, inc_e, inc_v, sel, n_sel, out)
        for i in range(n):
            R = out[i]
            # the heap, not on_list, tracks odd roots between rounds
            on_list[R] = False
            heapq.heappush(heap, blen[R] * base + R)


@njit(cache=True)
def grown_edges(F, out):
    for e in range(F.support.shape[0]):
        out[e] = F.support[e] == GROWN
