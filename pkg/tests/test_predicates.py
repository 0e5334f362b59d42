from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from octaweier.predicates import (find_improper_contacts, improper_contact, orient3d,
                                  segment_meets_triangle, to_integer_coordinates,
                                  triangles_meet)

coord = st.integers(-20, 20)
point = st.tuples(coord, coord, coord)
small = st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))


def _add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _neg(p):
    return tuple(-a for a in p)


def _nondegenerate(t):
    a, b, c = t
    u = tuple(b[i] - a[i] for i in range(3))
    v = tuple(c[i] - a[i] for i in range(3))
    return any(x != 0 for x in (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                u[0] * v[1] - u[1] * v[0]))


triangle = st.tuples(point, point, point).filter(_nondegenerate)


def test_orient3d_sign():
    o = (0, 0, 0)
    assert orient3d(o, (1, 0, 0), (0, 1, 0), (0, 0, 1)) != 0
    assert orient3d(o, (1, 0, 0), (0, 1, 0), (5, 7, 0)) == 0


def test_segment_through_triangle():
    tri = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    assert segment_meets_triangle((1, 1, -1), (1, 1, 1), *tri)
    assert not segment_meets_triangle((5, 5, -1), (5, 5, 1), *tri)
    # touching the boundary counts: triangles are closed
    assert segment_meets_triangle((2, 2, -1), (2, 2, 1), *tri)


def test_shared_edge_is_proper():
    a, b = (0, 0, 0), (4, 0, 0)
    assert not improper_contact((a, b, (0, 4, 0)), (b, a, (0, -4, 0)))
    assert not improper_contact((a, b, (0, 4, 0)), (b, a, (0, 0, 4)))


def test_folded_hinge_is_improper():
    a, b = (0, 0, 0), (4, 0, 0)
    assert improper_contact((a, b, (0, 4, 0)), (b, a, (2, 2, 0)))


def test_shared_vertex_piercing():
    v = (0, 0, 0)
    t1 = (v, (4, 0, 0), (0, 4, 0))
    t2 = (v, (1, 1, -2), (1, 1, 2))
    assert improper_contact(t1, t2)
    t3 = (v, (1, 1, 2), (-1, 2, 3))
    assert not improper_contact(t1, t3)


def test_rational_coordinates_scale():
    tris = [((Fraction(1, 2), 0, 0), (1, Fraction(1, 3), 0), (0, 0, 1))]
    ints = to_integer_coordinates(tris)
    assert all(isinstance(c, int) for p in ints[0] for c in p)
    assert ints[0][0][0] * 2 == ints[0][1][0]


@settings(max_examples=200, deadline=None)
@given(triangle, triangle)
def test_contact_symmetric(t1, t2):
    assert triangles_meet(t1, t2) == triangles_meet(t2, t1)
    assert improper_contact(t1, t2) == improper_contact(t2, t1)


@settings(max_examples=200, deadline=None)
@given(triangle, triangle, point)
def test_contact_translation_invariant(t1, t2, s):
    moved = [tuple(_add(p, s) for p in t) for t in (t1, t2)]
    assert triangles_meet(t1, t2) == triangles_meet(*moved)


@settings(max_examples=200, deadline=None)
@given(triangle, triangle)
def test_separated_by_a_plane(t1, t2):
    lift = max(p[2] for p in t1) - min(p[2] for p in t2) + 1
    t2 = tuple(_add(p, (0, 0, lift)) for p in t2)
    assert not triangles_meet(t1, t2)
    assert find_improper_contacts([t1, t2]) == []


@settings(max_examples=200, deadline=None)
@given(triangle, st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), small, small)
def test_centroid_oracle(t1, wa, wb, wc, d1, d2):
    # p lies in t1; t2 has centroid p, hence contains it
    tot = wa + wb + wc
    p = tuple(Fraction(wa * t1[0][i] + wb * t1[1][i] + wc * t1[2][i], tot) for i in range(3))
    third = _neg(_add(d1, d2))
    t2 = (_add(p, d1), _add(p, d2), _add(p, third))
    assume(_nondegenerate(t2))
    a, b = to_integer_coordinates([t1, t2])
    assert triangles_meet(a, b)
