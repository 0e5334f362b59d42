from collections import Counter
from itertools import combinations, product

import pytest

from octaweier.lattice_mesh import (CUT, EDGE, ConstructionError, assemble_fundamental_piece,
                                    embedding_violations, export_obj, octahedron_in_cube,
                                    parse_obj, single_octahedron_mesh, tile_patch, type1_block,
                                    type2_block)


@pytest.fixture(scope="module")
def mesh():
    return assemble_fundamental_piece()


def _division_points():
    """Points dividing the edges of [0, 4]^3 in ratio 1:3."""
    pts = set()
    for axis in range(3):
        others = [a for a in range(3) if a != axis]
        for u, v in product((0, EDGE), repeat=2):
            for t in (1, 3):
                p = [0, 0, 0]
                p[axis] = t
                p[others[0]], p[others[1]] = u, v
                pts.add(tuple(p))
    return sorted(pts)


def _brute_force_octahedra():
    """Regular octahedra on the 1:3 division points: three orthogonal equal diagonals."""
    pts = _division_points()
    by_mid = {}
    for p, q in combinations(pts, 2):
        mid = tuple(p[i] + q[i] for i in range(3))
        d = tuple(q[i] - p[i] for i in range(3))
        by_mid.setdefault(mid, []).append((p, q, d))
    found = set()
    for diags in by_mid.values():
        for trio in combinations(diags, 3):
            ds = [d for _, _, d in trio]
            if len({sum(c * c for c in d) for d in ds}) != 1:
                continue
            if all(sum(a * b for a, b in zip(u, v)) == 0 for u, v in combinations(ds, 2)):
                found.add(frozenset(x for p, q, _ in trio for x in (p, q)))
    return found


def test_brute_force_oracle_finds_four():
    octs = _brute_force_octahedra()
    ours = {frozenset(tuple(int(c) for c in v) for v in octahedron_in_cube((0, 0, 0), eps).vertices)
            for eps in product((0, 1), repeat=3)}
    assert len(octs) == 4
    assert ours == octs


def test_type1_missing_faces_are_parallel():
    blk = octahedron_in_cube((0, 0, 0), (0, 0, 0))
    assert len(blk.present_faces) == 6 and len(blk.removed_faces) == 2
    normals = []
    for f in blk.removed_faces:
        pts = blk.face_points(f)
        normals.append(tuple(sum(p[k] for p in pts) - 3 * blk.center()[k] for k in range(3)))
    assert all(a == -b for a, b in zip(*normals))


def test_type2_keeps_four_faces():
    blk = type2_block((0, 0, 0))
    assert len(blk.present_faces) == 4 and len(blk.removed_faces) == 4
    with pytest.raises(ConstructionError):
        type2_block((1, 0, 0))


def test_odd_cube_rejected():
    with pytest.raises(ConstructionError):
        type1_block((1, 0, 0))


def test_fundamental_piece_counts(mesh):
    assert len(mesh.triangles) == 32
    assert Counter(kind for _, kind in mesh.labels) == {"Type1": 24, "Type2": 8}
    assert len(mesh.boundary_slots) == 6
    assert len(mesh.boundary_pairs) == 3


def test_lattice_independent(mesh):
    (a, b, c) = mesh.lattice
    det = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
           + a[2] * (b[0] * c[1] - b[1] * c[0]))
    assert det != 0


def test_edges_used_twice_after_pairing(mesh):
    # every interior edge lies on two triangles; open-face edges on one
    count = Counter()
    for t in mesh.triangles:
        for i in range(3):
            count[frozenset((t[i], t[(i + 1) % 3]))] += 1
    slot_edges = Counter()
    for s in mesh.boundary_slots:
        for i in range(3):
            slot_edges[frozenset((s[i], s[(i + 1) % 3]))] += 1
    for e, n in count.items():
        assert n + slot_edges.get(e, 0) == 2


def test_patch_replication(mesh):
    assert len(tile_patch(1, 1, 1, mesh)) == 32
    assert len(tile_patch(2, 2, 2, mesh)) == 256
    assert len(tile_patch(1, 2, 3, mesh)) == 32 * 6


@pytest.mark.parametrize("cells", [(0, 1, 1), (1, -1, 1), (1, 1, 2.5)])
def test_patch_rejects_bad_cells(cells):
    with pytest.raises(ValueError):
        tile_patch(*cells)


def test_embedding_of_patch(mesh):
    assert embedding_violations(tile_patch(2, 2, 2, mesh)) == []


def test_closed_octahedron_control():
    m = single_octahedron_mesh()
    assert len(m.triangles) == 8 and not m.boundary_slots


def test_embedding_detects_overlap(mesh):
    patch = tile_patch(1, 1, 1, mesh)
    a, b, c = patch.triangles[0]
    # folded back onto triangle 0 across its edge ab
    inner = tuple((a[k] + b[k] + c[k]) / 3 for k in range(3))
    patch.triangles.append((b, a, inner))
    assert embedding_violations(patch)


def test_obj_round_trip(mesh):
    patch = tile_patch(1, 1, 2, mesh)
    data = export_obj(patch)
    assert data.startswith(b"# octaweier periodic patch cells=1,1,2")
    verts, faces = parse_obj(data)
    assert len(faces) == 64
    assert len(verts) == len({p for t in patch.triangles for p in t})
    for f, t in zip(faces, patch.triangles):
        assert tuple(verts[i] for i in f) == tuple(tuple(float(c) for c in p) for p in t)


def test_cut_constant():
    assert (EDGE, CUT) == (4, 3)


def test_vertex_sets_and_lengths():
    # main diagonal (0,0,0)-(4,4,4): vertices 3 units from each truncated corner
    blk = octahedron_in_cube((0, 0, 0), (0, 0, 0))
    vs = {tuple(int(c) for c in v) for v in blk.vertices}
    assert vs == {(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 4, 4), (4, 1, 4), (4, 4, 1)}
    # the corner tetrahedron cut off has volume 27/6, one eighth of the octahedron (36)
    other = octahedron_in_cube((0, 0, 0), (1, 0, 0))
    assert {tuple(int(c) for c in v) for v in other.vertices} == {
        (1, 0, 0), (4, 3, 0), (4, 0, 3), (0, 1, 4), (0, 4, 1), (3, 4, 4)}
    for b in (blk, other):
        d2 = sorted(sum((p[k] - q[k]) ** 2 for k in range(3)) for p, q in combinations(b.vertices, 2))
        assert d2 == [18] * 12 + [36] * 3
