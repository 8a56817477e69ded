import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components
from scipy.sparse import coo_matrix

from ufdecoder.lattice import (
    Cut,
    InvalidParameterError,
    Lattice,
    build_torus_2d,
    build_torus_3d,
    crossing_parity,
    face_boundary_2d,
)


@pytest.mark.parametrize("L,nv,ne", [(2, 4, 8), (3, 9, 18), (4, 16, 32), (7, 49, 98)])
def test_torus_2d_counts(L, nv, ne):
    g = build_torus_2d(L)
    assert (g.vertex_count, g.edge_count) == (nv, ne)
    assert g.degree == 4
    assert g.distance == L
    assert g.kind is Lattice.TORUS_2D


@pytest.mark.parametrize("L,nv,ne", [(2, 8, 24), (3, 27, 81), (5, 125, 375)])
def test_torus_3d_counts(L, nv, ne):
    g = build_torus_3d(L)
    assert (g.vertex_count, g.edge_count) == (nv, ne)
    assert g.degree == 6
    assert g.distance == L


def test_torus_3d_space_and_time_edges():
    g = build_torus_3d(3)
    assert np.count_nonzero(~g.time_like) == 54
    assert np.count_nonzero(g.time_like) == 27


@pytest.mark.parametrize("L", [2, 3, 4])
@pytest.mark.parametrize("build", [build_torus_2d, build_torus_3d])
def test_degree_sum_and_symmetric_incidence(build, L):
    g = build(L)
    deg = np.bincount(g.edges.ravel(), minlength=g.vertex_count)
    assert deg.sum() == 2 * g.edge_count
    assert (deg == g.degree).all()
    for v in range(g.vertex_count):
        for e, w in g.incident(v):
            assert {int(x) for x in g.edges[e]} == {v, w}
    # each edge shows up in exactly its endpoints' lists
    seen = np.bincount(g.incident_edges.ravel(), minlength=g.edge_count)
    assert (seen == 2).all()
    assert all((np.diff(row) > 0).all() for row in g.incident_edges)


@pytest.mark.parametrize("build", [build_torus_2d, build_torus_3d])
def test_numbering_is_pure(build):
    a, b = build(4), build(4)
    for name in ("edges", "incident_edges", "incident_vertices", "time_like", "cut_x", "cut_y"):
        assert np.array_equal(getattr(a, name), getattr(b, name))


def test_2d_numbering_convention():
    g = build_torus_2d(3)
    # vertex (x, y) -> y*L + x; horizontal edges first, then vertical
    assert g.edges[0].tolist() == [0, 1]
    assert g.edges[2].tolist() == [2, 0]
    assert g.edges[9].tolist() == [0, 3]
    assert g.edges[17].tolist() == [8, 2]


def test_graphs_are_read_only():
    g = build_torus_2d(3)
    with pytest.raises(ValueError):
        g.edges[0, 0] = 5


@pytest.mark.parametrize("L", [1, 0, -3])
def test_rejects_small_sizes(L):
    with pytest.raises(InvalidParameterError):
        build_torus_2d(L)
    with pytest.raises(InvalidParameterError):
        build_torus_3d(L)


@pytest.mark.parametrize("L", [2, 4, 5])
def test_cuts_have_L_edges_and_are_disjoint(L):
    g = build_torus_2d(L)
    cx, cy = g.logical_cut(Cut.X), g.logical_cut(Cut.Y)
    assert len(cx) == len(cy) == L
    assert not set(cx) & set(cy)
    g3 = build_torus_3d(L)
    assert len(g3.logical_cut(Cut.X)) == len(g3.logical_cut(Cut.Y)) == L * L
    assert not (g3.cut_x & g3.time_like).any() and not (g3.cut_y & g3.time_like).any()


def test_crossing_parity_examples():
    g = build_torus_2d(3)
    assert crossing_parity(g, [], Cut.X) == 0
    for L in (2, 3, 4, 5):
        gl = build_torus_2d(L)
        assert crossing_parity(gl, gl.logical_cut(Cut.X), Cut.X) == L % 2
    # the face at (2, 1) straddles the x wrap: its two horizontal edges both sit on the x-cut
    face = face_boundary_2d(g, 2, 1)
    assert len(set(face.tolist())) == 4
    assert np.count_nonzero(g.cut_x[face]) == 2
    assert crossing_parity(g, face, Cut.X) == 0
    assert crossing_parity(g, face, Cut.Y) == 0


@pytest.mark.parametrize("L", [2, 3, 4])
def test_every_2d_face_has_even_crossings(L):
    g = build_torus_2d(L)
    for x in range(L):
        for y in range(L):
            face = face_boundary_2d(g, x, y)
            assert crossing_parity(g, face, Cut.X) == 0
            assert crossing_parity(g, face, Cut.Y) == 0


def _faces_3d(L):
    n = L**3

    def vid(x, y, t):
        return (t % L) * L * L + (y % L) * L + (x % L)

    for t in range(L):
        for y in range(L):
            for x in range(L):
                v = vid(x, y, t)
                ex = lambda x_, y_, t_: vid(x_, y_, t_)
                ey = lambda x_, y_, t_: n + vid(x_, y_, t_)
                et = lambda x_, y_, t_: 2 * n + vid(x_, y_, t_)
                yield [ex(x, y, t), ex(x, y + 1, t), ey(x, y, t), ey(x + 1, y, t)]
                yield [ex(x, y, t), ex(x, y, t + 1), et(x, y, t), et(x + 1, y, t)]
                yield [ey(x, y, t), ey(x, y, t + 1), et(x, y, t), et(x, y + 1, t)]


def test_every_3d_face_is_a_cycle_with_even_crossings():
    from ufdecoder.noise import syndrome_of

    g = build_torus_3d(3)
    for face in _faces_3d(3):
        assert not syndrome_of(g, face).any()
        assert crossing_parity(g, face, Cut.X) == 0
        assert crossing_parity(g, face, Cut.Y) == 0


def test_nontrivial_cycles_cross_their_cut_oddly():
    from ufdecoder.noise import syndrome_of

    L = 4
    g = build_torus_2d(L)
    row = np.arange(L) + L  # horizontal edges of row y=1
    column = L * L + np.arange(L) * L + 2  # vertical edges of column x=2
    assert not syndrome_of(g, row).any() and not syndrome_of(g, column).any()
    assert (crossing_parity(g, row, Cut.X), crossing_parity(g, row, Cut.Y)) == (1, 0)
    assert (crossing_parity(g, column, Cut.X), crossing_parity(g, column, Cut.Y)) == (0, 1)


@pytest.mark.parametrize("L", [2, 3, 4])
def test_removing_a_time_slice_keeps_3d_connected(L):
    g = build_torus_3d(L)
    n = L**3
    t = np.arange(3 * n) - 2 * n
    keep = ~(g.time_like & (t // (L * L) == L - 1))
    u, v = g.edges[keep].T
    adj = coo_matrix((np.ones(len(u)), (u, v)), shape=(n, n))
    assert connected_components(adj, directed=False)[0] == 1
