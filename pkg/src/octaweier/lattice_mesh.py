"""The triply periodic octahedral surface and its fundamental piece.

Coordinates use a quarter of the cube edge as unit, so the reference cube
is ``[0, 4]^3`` and every 1:3 division point is an integer point.

Cube ``c`` (an integer 3-vector) is the cube with origin ``4*c``. A cube
hosts a Type 1 octahedron when it lies on the even checkerboard class and
two antipodal corners of it are Type 2 sites. Type 2 sites form a diamond
arrangement on the cube-vertex lattice: the ``A`` sites ``4*v`` with ``v``
all even and ``sum(v) % 4 == 0`` and the ``B`` sites ``A + (4, 4, 4)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

from .predicates import find_improper_contacts

EDGE = 4
CUT = 3  # distance of an octahedron vertex from its cube corner


class ConstructionError(ValueError):
    pass


class Point3Q(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, *coords):
        if len(coords) == 1:
            coords = coords[0]
        return cls(*(Fraction(c) for c in coords))

    def __add__(self, other):
        return Point3Q(self.x + other[0], self.y + other[1], self.z + other[2])

    def __sub__(self, other):
        return Point3Q(self.x - other[0], self.y - other[1], self.z - other[2])


def _sq(u):
    return u[0] * u[0] + u[1] * u[1] + u[2] * u[2]


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


@dataclass(frozen=True)
class OctahedronBlock:
    kind: str  # "Type1" or "Type2"
    anchor: tuple
    vertices: tuple
    present_faces: tuple
    removed_faces: tuple

    def center(self):
        n = len(self.vertices)
        return Point3Q(*(sum(v[i] for v in self.vertices) / n for i in range(3)))

    def face_points(self, face):
        return tuple(self.vertices[i] for i in face)

    def edges(self):
        """The 12 vertex-index pairs at minimal distance."""
        pairs = list(combinations(range(6), 2))
        d = {p: _sq(self.vertices[p[0]] - self.vertices[p[1]]) for p in pairs}
        m = min(d.values())
        return [p for p in pairs if d[p] == m]

    def diagonals(self):
        return [p for p in combinations(range(6), 2) if p not in self.edges()]


def _octahedron_faces(vertices):
    """All 8 faces of a regular octahedron, oriented with outward normals."""
    center = Point3Q(*(sum(v[i] for v in vertices) / 6 for i in range(3)))
    pairs = list(combinations(range(6), 2))
    d = {p: _sq(vertices[p[0]] - vertices[p[1]]) for p in pairs}
    m = min(d.values())
    adj = {p for p in pairs if d[p] == m}
    faces = []
    for i, j, k in combinations(range(6), 3):
        if (i, j) in adj and (j, k) in adj and (i, k) in adj:
            n = _cross(vertices[j] - vertices[i], vertices[k] - vertices[i])
            if _dot(n, vertices[i] - center) < 0:
                j, k = k, j
            faces.append((i, j, k))
    if len(faces) != 8:
        raise ConstructionError("vertex set is not an octahedron")
    return faces


def _same_face(f1, f2):
    return set(f1) == set(f2)


def octahedron_in_cube(cube_origin, diagonal=(0, 0, 0)):
    """Type 1 octahedron inscribed in the cube ``cube_origin + [0, 4]^3``.

    ``diagonal`` is a corner offset in ``{0, 1}^3``; it names the main
    diagonal from that corner to the opposite one. The octahedron's vertices
    are the six points at distance 3 from the two diagonal corners along the
    cube edges; the two faces that truncate those corners are removed.
    """
    origin = Point3Q.of(cube_origin)
    eps = tuple(int(e) for e in diagonal)
    if any(e not in (0, 1) for e in eps):
        raise ValueError("diagonal must be a corner offset in {0,1}^3")
    corners = [tuple(EDGE * e for e in eps), tuple(EDGE * (1 - e) for e in eps)]
    verts = []
    cut_faces = []
    for c in corners:
        ids = []
        for axis in range(3):
            p = list(c)
            p[axis] += CUT if c[axis] == 0 else -CUT
            ids.append(len(verts))
            verts.append(origin + Point3Q.of(p))
        cut_faces.append(ids)
    faces = _octahedron_faces(verts)
    removed = [f for f in faces if any(_same_face(f, cf) for cf in cut_faces)]
    present = [f for f in faces if f not in removed]
    return OctahedronBlock("Type1", tuple(int(c) for c in cube_origin), tuple(verts),
                           tuple(present), tuple(removed))


def is_type2_site(v):
    """True when the cube-vertex index ``v`` (in cube units) hosts a Type 2 octahedron."""
    v = tuple(int(c) for c in v)
    if all(c % 2 == 0 for c in v):
        return sum(v) % 4 == 0
    if all(c % 2 == 1 for c in v):
        return (sum(v) - 3) % 4 == 0
    return False


def _site_parity(v):
    return sum(v) % 2


def type1_cubes(v):
    """The four even cubes around site ``v``, with the corner offset of ``v`` in each."""
    out = []
    for eps in product((0, 1), repeat=3):
        if sum(eps) % 2 == _site_parity(v):
            cube = tuple(v[i] - eps[i] for i in range(3))
            out.append((cube, eps))
    return out


def type1_block(cube):
    """The Type 1 block of a cube on the diamond arrangement (cube units)."""
    cube = tuple(int(c) for c in cube)
    if sum(cube) % 2:
        raise ConstructionError(f"cube {cube} is not on the even checkerboard class")
    sites = [eps for eps in product((0, 1), repeat=3)
             if is_type2_site(tuple(cube[i] + eps[i] for i in range(3)))]
    if len(sites) != 2:
        raise ConstructionError(f"cube {cube} carries no Type 1 octahedron")
    return octahedron_in_cube(tuple(EDGE * c for c in cube), sites[0])


def type2_block(vertex_anchor):
    """Type 2 octahedron centred at the Type 2 site ``vertex_anchor`` (cube units).

    Its four removed faces face the four even cubes around the site.
    """
    v = tuple(int(c) for c in vertex_anchor)
    if not is_type2_site(v):
        raise ConstructionError(f"{v} is not a Type 2 site")
    center = Point3Q.of(tuple(EDGE * c for c in v))
    verts = []
    for axis in range(3):
        for s in (1, -1):
            p = [0, 0, 0]
            p[axis] = s * CUT
            verts.append(center + Point3Q.of(p))
    faces = _octahedron_faces(verts)
    facing = {tuple(1 - 2 * e for e in eps) for _, eps in type1_cubes(v)}
    removed, present = [], []
    for f in faces:
        direction = tuple(sum(verts[i][k] - center[k] for i in f) for k in range(3))
        signs = tuple((d > 0) - (d < 0) for d in direction)
        (removed if signs in facing else present).append(f)
    return OctahedronBlock("Type2", v, tuple(verts), tuple(present), tuple(removed))


@dataclass
class FundamentalMesh:
    vertices: list
    triangles: list
    boundary_slots: list          # oriented vertex-index triples of the open faces
    boundary_pairs: list          # (slot_i, slot_j, translation) with slot_j = slot_i + t
    lattice: list
    labels: list = field(default_factory=list)   # (block index, kind) per triangle

    def triangle_points(self, i):
        return tuple(self.vertices[k] for k in self.triangles[i])


@dataclass
class PeriodicPatch:
    triangles: list
    cells: tuple

    def __len__(self):
        return len(self.triangles)


def _key(points):
    return frozenset(points)


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


def assemble_fundamental_piece():
    """Glue 4 Type 1 and 2 Type 2 blocks into the fundamental piece.

    The Type 2 sites are ``(0,0,0)`` and ``(1,1,1)``; the four Type 1 cubes
    are the ones around the origin. Coincident removed faces are glued; the
    six left open are paired by translations found by search.
    """
    a_site, b_site = (0, 0, 0), (1, 1, 1)
    blocks = [type1_block(cube) for cube, _ in type1_cubes(a_site)]
    blocks += [type2_block(a_site), type2_block(b_site)]

    vertices, index = [], {}

    def vid(p):
        if p not in index:
            index[p] = len(vertices)
            vertices.append(p)
        return index[p]

    triangles, labels = [], []
    for bi, blk in enumerate(blocks):
        for f in blk.present_faces:
            triangles.append(tuple(vid(p) for p in blk.face_points(f)))
            labels.append((bi, blk.kind))

    removed = []
    for bi, blk in enumerate(blocks):
        for f in blk.removed_faces:
            removed.append((bi, blk.kind, blk.face_points(f)))
    glued = set()
    for i, j in combinations(range(len(removed)), 2):
        bi, ki, pi = removed[i]
        bj, kj, pj = removed[j]
        if _key(pi) == _key(pj):
            if ki == kj:
                raise ConstructionError("two blocks of the same type share a face")
            if _orientation_agrees(pi, pj):
                raise ConstructionError("glued faces do not have opposite orientation")
            glued.update((i, j))
    slots = [tuple(vid(p) for p in removed[i][2]) for i in range(len(removed)) if i not in glued]
    if len(slots) != 6:
        raise ConstructionError(f"expected 6 open faces, found {len(slots)}")
    pairs = _pair_slots(vertices, slots)
    lattice = [t for _, _, t in pairs]
    if _det3(*lattice) == 0:
        raise ConstructionError("pairing translations are dependent")
    return FundamentalMesh(vertices, triangles, slots, pairs, lattice, labels)


def _orientation_agrees(p, q):
    """True when triangles with the same corners are listed in the same cyclic order."""
    k = q.index(p[0])
    return q[(k + 1) % 3] == p[1]


def _pair_slots(vertices, slots):
    pts = [[vertices[i] for i in s] for s in slots]
    pairs, used = [], set()
    for i in range(len(slots)):
        if i in used:
            continue
        for j in range(i + 1, len(slots)):
            if j in used:
                continue
            t = _translation_between(pts[i], pts[j])
            if t is not None:
                pairs.append((i, j, t))
                used.update((i, j))
                break
        else:
            raise ConstructionError(f"open face {i} has no translate partner")
    return pairs


def _translation_between(p, q):
    """Translation ``t`` with ``q = p + t`` as point sets, or None."""
    for start in q:
        t = tuple(start[k] - p[0][k] for k in range(3))
        if {x + t for x in p} == set(q):
            return tuple(int(c) if Fraction(c).denominator == 1 else c for c in t)
    return None


def single_octahedron_mesh():
    """A closed octahedron as a FundamentalMesh (no open faces); sphere control case."""
    blk = octahedron_in_cube((0, 0, 0))
    return FundamentalMesh(list(blk.vertices), [tuple(f) for f in blk.present_faces + blk.removed_faces],
                           [], [], [], [(0, "Type1")] * 8)


def tile_patch(n1, n2, n3, mesh=None):
    """Copies of the fundamental piece shifted by ``i*l1 + j*l2 + k*l3``."""
    cells = (n1, n2, n3)
    if any(int(n) != n or n < 1 for n in cells):
        raise ValueError("cell counts must be positive integers")
    mesh = mesh or assemble_fundamental_piece()
    l1, l2, l3 = mesh.lattice
    seen, tris = set(), []
    for i, j, k in product(range(n1), range(n2), range(n3)):
        shift = tuple(i * l1[c] + j * l2[c] + k * l3[c] for c in range(3))
        for t in range(len(mesh.triangles)):
            pts = tuple(p + shift for p in mesh.triangle_points(t))
            key = _key(pts)
            if key not in seen:
                seen.add(key)
                tris.append(pts)
    return PeriodicPatch(tris, cells)


def embedding_violations(patch):
    """Pairs of patch triangles meeting other than in shared vertices/edges."""
    return find_improper_contacts(patch.triangles)


def _fmt(c):
    return f"{float(c):.17g}"


def export_obj(patch):
    """ASCII OBJ bytes for a patch; vertices merged by exact coordinate equality."""
    if not patch.triangles:
        raise ValueError("empty patch")
    index, lines, faces = {}, [], []
    for t in patch.triangles:
        ids = []
        for p in t:
            if p not in index:
                index[p] = len(index) + 1
                lines.append("v " + " ".join(_fmt(c) for c in p))
            ids.append(index[p])
        faces.append("f %d %d %d" % tuple(ids))
    return ("\n".join(["# octaweier periodic patch cells=%d,%d,%d" % patch.cells] + lines + faces)
            + "\n").encode("ascii")


def parse_obj(data):
    """Read back ``(vertices, faces)`` from OBJ bytes (1-based indices become 0-based)."""
    verts, faces = [], []
    for line in data.decode("ascii").splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append(tuple(float(x) for x in parts[1:4]))
        elif parts[0] == "f":
            faces.append(tuple(int(x.split("/")[0]) - 1 for x in parts[1:]))
    return verts, faces
