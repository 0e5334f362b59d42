from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octaweier.surface_map import (MapError, OrientedMap, automorphism_group, compose,
                                   cube_map, cyclic_quotient, euler_genus, face_rotation,
                                   identity, inverse, is_automorphism, is_isomorphic,
                                   map_from_polygons, octahedron_map, perm_order,
                                   petrie_polygons, power, torus_map,
                                   valence_profile, vertex_rotation)


def test_census_and_genus(X):
    assert X.census() == (12, 48, 32)
    assert euler_genus(X) == 3
    assert X.is_connected()


def test_regular_type(X):
    assert valence_profile(X) == ({8: 12}, {3: 32})


@pytest.mark.parametrize("build, genus, order", [(octahedron_map, 0, 24), (cube_map, 0, 24),
                                                 (torus_map, 1, 4)])
def test_controls(build, genus, order):
    m = build()
    assert euler_genus(m) == genus
    assert len(automorphism_group(m)) == order


def test_petrie_polygons(X):
    polys = petrie_polygons(X)
    assert len(polys) == 16
    assert {len(p) for p in polys} == {6}
    edge = X.edge_of()
    per_edge = Counter(edge[d] for p in polys for d in p)
    assert set(per_edge.values()) == {2} and len(per_edge) == 48


def test_octahedron_petrie_is_hexagons():
    # the octahedron has 4 Petrie hexagons
    polys = petrie_polygons(octahedron_map())
    assert len(polys) == 4 and {len(p) for p in polys} == {6}


def test_automorphism_group_regular(X):
    aut = automorphism_group(X)
    assert len(aut) == 96
    assert sorted(g[0] for g in aut) == list(range(96))
    assert all(is_automorphism(X, g) for g in aut[:10])


def test_rotation_orders(X):
    a = vertex_rotation(X, 0)
    b = face_rotation(X, 0)
    assert perm_order(a) == 8 and perm_order(b) == 3
    assert power(a, 8) == identity(96)


def test_eightfold_quotient(X):
    q = cyclic_quotient(X, vertex_rotation(X, 0))
    assert q.order == 8 and q.genus == 0
    assert q.census == (4, 6, 4)
    assert q.signature() == [[4, 4], [8], [8]]
    assert sorted(len(o) for o in q.vertex_orbits) == [1, 1, 2, 8]
    assert len(q.branch_values()) == 3


def test_quotient_by_non_automorphism(X):
    g = list(range(96))
    g[0], g[1] = g[1], g[0]
    with pytest.raises(MapError):
        cyclic_quotient(X, g)


def test_json_round_trip(X):
    assert is_isomorphic(OrientedMap.from_json(X.to_json()), X)


def test_invalid_maps():
    with pytest.raises(MapError):
        OrientedMap([0, 0], [1, 0])
    with pytest.raises(MapError):
        OrientedMap([0, 1], [0, 1])
    with pytest.raises(MapError):
        map_from_polygons([(0, 1, 2)])


@settings(max_examples=30, deadline=None)
@given(st.permutations(list(range(96))))
def test_relabelling_is_isomorphic(X, perm):
    # conjugating by a dart relabelling gives an isomorphic map
    inv = inverse(perm)
    sigma = compose(compose(perm, X.sigma), inv)
    alpha = compose(compose(perm, X.alpha), inv)
    m = OrientedMap(sigma, alpha)
    assert m.census() == X.census()
    assert is_isomorphic(m, X)


def test_mirror_is_isomorphic(X):
    # the surface is reflexible: reversing orientation gives the same map
    mirror = OrientedMap(inverse(X.sigma), list(X.alpha))
    assert is_isomorphic(mirror, X)


def test_non_isomorphic_controls():
    assert not is_isomorphic(octahedron_map(), cube_map())
