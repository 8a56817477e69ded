"""Syndrome graphs of the toric code.

Vertices carry the X-type checks, edges carry the qubits. Two lattices are
provided: the 2d torus (perfect measurements) and the periodic (2+1)d cubic
lattice obtained by stacking repeated rounds of syndrome measurement.

Numbering is a pure function of ``(kind, L)``:

* 2d: vertex ``(x, y)`` has index ``y*L + x``; horizontal edge ``(x, y)-(x+1, y)``
  has index ``y*L + x`` and vertical edge ``(x, y)-(x, y+1)`` has index
  ``L*L + y*L + x``.
* 3d: vertex ``(x, y, t)`` has index ``t*L*L + y*L + x``; the x, y and time
  edges leaving vertex ``v`` in the positive direction have indices ``v``,
  ``L**3 + v`` and ``2*L**3 + v``.

Edge and vertex sets are passed around as boolean masks (length ``edge_count``
or ``vertex_count``); helpers below convert index collections to masks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Lattice(str, enum.Enum):
    TORUS_2D = "2d"
    TORUS_3D = "3d"


class Cut(enum.IntEnum):
    """Selects one of the two spatial logical cuts."""

    X = 0
    Y = 1


class InvalidParameterError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SyndromeGraph:
    """Immutable decoding graph.

    Attributes
    ----------
    kind : Lattice
    L : int
        Linear lattice size.
    edges : ndarray, shape (E, 2)
        Endpoints of every edge.
    incident_edges, incident_vertices : ndarray, shape (V, degree)
        Per-vertex incident edge ids (ascending) and the matching neighbours.
    time_like : ndarray of bool, shape (E,)
        True for measurement (time) edges; always False in 2d.
    cut_x, cut_y : ndarray of bool, shape (E,)
        Membership masks of the two logical cuts.
    """

    kind: Lattice
    L: int
    edges: np.ndarray
    incident_edges: np.ndarray
    incident_vertices: np.ndarray
    time_like: np.ndarray
    cut_x: np.ndarray
    cut_y: np.ndarray

    @property
    def vertex_count(self) -> int:
        return self.incident_edges.shape[0]

    @property
    def edge_count(self) -> int:
        return self.edges.shape[0]

    @property
    def degree(self) -> int:
        return self.incident_edges.shape[1]

    @property
    def distance(self) -> int:
        return self.L

    @property
    def dimensionality(self) -> Lattice:
        return self.kind

    def incident(self, v: int) -> list[tuple[int, int]]:
        """``(edge, neighbour)`` pairs around vertex ``v``, by ascending edge id."""
        return list(zip(self.incident_edges[v].tolist(), self.incident_vertices[v].tolist()))

    def logical_cut(self, cut: Cut | int) -> np.ndarray:
        """Edge ids of the selected cut."""
        return np.flatnonzero(self._cut_mask(cut))

    def _cut_mask(self, cut: Cut | int) -> np.ndarray:
        return self.cut_x if Cut(cut) == Cut.X else self.cut_y

    def edge_mask(self, edges) -> np.ndarray:
        return as_mask(edges, self.edge_count)

    def vertex_mask(self, vertices) -> np.ndarray:
        return as_mask(vertices, self.vertex_count)


def as_mask(items, size: int) -> np.ndarray:
    """Boolean mask of length ``size`` from a mask or a collection of indices."""
    if isinstance(items, np.ndarray) and items.dtype == np.bool_:
        if items.shape != (size,):
            raise ValueError(f"mask has shape {items.shape}, expected ({size},)")
        return items
    idx = np.fromiter(items, dtype=np.int64) if not isinstance(items, np.ndarray) else items
    mask = np.zeros(size, dtype=np.bool_)
    if idx.size:
        if idx.min() < 0 or idx.max() >= size:
            raise IndexError(f"index out of range for size {size}")
        mask[idx] = True
    return mask


def _incidence(edges: np.ndarray, n_vertices: int, degree: int):
    # Each vertex sees its edges in ascending id order because edges are
    # scanned in id order and slots are filled left to right.
    inc_e = np.full((n_vertices, degree), -1, dtype=np.int64)
    inc_v = np.full((n_vertices, degree), -1, dtype=np.int64)
    fill = np.zeros(n_vertices, dtype=np.int64)
    for e, (u, v) in enumerate(edges.tolist()):
        for a, b in ((u, v), (v, u)):
            inc_e[a, fill[a]] = e
            inc_v[a, fill[a]] = b
            fill[a] += 1
    assert (fill == degree).all()
    return inc_e, inc_v


def build_torus_2d(L: int) -> SyndromeGraph:
    """Square lattice on the torus, ``L*L`` vertices and ``2*L*L`` edges."""
    if int(L) != L or L < 2:
        raise InvalidParameterError(f"lattice size must be an integer >= 2, got {L!r}")
    L = int(L)
    y, x = np.divmod(np.arange(L * L), L)
    v = y * L + x
    horizontal = np.stack([v, y * L + (x + 1) % L], axis=1)
    vertical = np.stack([v, ((y + 1) % L) * L + x], axis=1)
    edges = np.concatenate([horizontal, vertical]).astype(np.int64)

    cut_x = np.zeros(2 * L * L, dtype=np.bool_)
    cut_x[: L * L] = x == L - 1
    cut_y = np.zeros(2 * L * L, dtype=np.bool_)
    cut_y[L * L :] = y == L - 1

    inc_e, inc_v = _incidence(edges, L * L, 4)
    return SyndromeGraph(
        kind=Lattice.TORUS_2D,
        L=L,
        edges=_frozen(edges),
        incident_edges=_frozen(inc_e),
        incident_vertices=_frozen(inc_v),
        time_like=_frozen(np.zeros(2 * L * L, dtype=np.bool_)),
        cut_x=_frozen(cut_x),
        cut_y=_frozen(cut_y),
    )


def build_torus_3d(L: int) -> SyndromeGraph:
    """Periodic ``L x L x L`` cubic lattice; the third axis is time.

    Time is periodic too, and the logical cuts are the two spatial ones:
    winding along time is a measurement history, not a logical error.
    """
    if int(L) != L or L < 2:
        raise InvalidParameterError(f"lattice size must be an integer >= 2, got {L!r}")
    L = int(L)
    n = L**3
    t, rem = np.divmod(np.arange(n), L * L)
    y, x = np.divmod(rem, L)
    v = np.arange(n)

    def at(xx, yy, tt):
        return tt * L * L + yy * L + xx

    ex = np.stack([v, at((x + 1) % L, y, t)], axis=1)
    ey = np.stack([v, at(x, (y + 1) % L, t)], axis=1)
    et = np.stack([v, at(x, y, (t + 1) % L)], axis=1)
    edges = np.concatenate([ex, ey, et]).astype(np.int64)

    time_like = np.zeros(3 * n, dtype=np.bool_)
    time_like[2 * n :] = True
    cut_x = np.zeros(3 * n, dtype=np.bool_)
    cut_x[:n] = x == L - 1
    cut_y = np.zeros(3 * n, dtype=np.bool_)
    cut_y[n : 2 * n] = y == L - 1

    inc_e, inc_v = _incidence(edges, n, 6)
    return SyndromeGraph(
        kind=Lattice.TORUS_3D,
        L=L,
        edges=_frozen(edges),
        incident_edges=_frozen(inc_e),
        incident_vertices=_frozen(inc_v),
        time_like=_frozen(time_like),
        cut_x=_frozen(cut_x),
        cut_y=_frozen(cut_y),
    )


def build(kind: Lattice | str, L: int) -> SyndromeGraph:
    kind = Lattice(kind)
    return build_torus_2d(L) if kind is Lattice.TORUS_2D else build_torus_3d(L)


def crossing_parity(graph: SyndromeGraph, edges, cut: Cut | int) -> int:
    """Parity of the number of ``edges`` lying on the given logical cut."""
    mask = graph.edge_mask(edges)
    return int(np.count_nonzero(mask & graph._cut_mask(cut)) & 1)


def face_boundary_2d(graph: SyndromeGraph, x: int, y: int) -> np.ndarray:
    """Edge ids around the plaquette whose lower-left corner is ``(x, y)``."""
    if graph.kind is not Lattice.TORUS_2D:
        raise ValueError("face_boundary_2d needs a 2d torus")
    L = graph.L
    return np.array(
        [
            y * L + x,
            ((y + 1) % L) * L + x,
            L * L + y * L + x,
            L * L + y * L + (x + 1) % L,
        ],
        dtype=np.int64,
    )
