"""Hyperbolic and flat charts of the genus 3 surface X.

X is tiled by equilateral triangles with angles pi/4, eight around each
vertex. :func:`unfold_16gon` lays its 32 faces out in the Poincare disk
around one vertex and reads the side pairing off the map; the flat charts
of the eigenform cone structures reuse that pairing.

Coordinates are complex numbers. The hyperbolic side uses double precision
with a 1e-9 tolerance; each floating check has an exact combinatorial twin.
"""

import cmath
import json
import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .surface_map import (is_isomorphic, map_from_polygons, perm_order,
                          petrie_polygons, surface_x, vertex_rotation)

TOL = 1e-9
ANGLE_TOL = 1e-6
MAX_DEPTH = 12


class LayoutError(RuntimeError):
    pass


class HolonomyError(RuntimeError):
    """A flat side pairing that is not a translation."""


# disk geometry ---------------------------------------------------------------

def equilateral_side(angle):
    """Side length of the hyperbolic equilateral triangle with the given angles."""
    c = math.cos(angle)
    s2 = math.sin(angle) ** 2
    return math.acosh((c + c * c) / s2)


def base_triangle(p=4):
    """Vertices ``0, r, r e^{i pi/p}`` of the ``(pi/p, pi/p, pi/p)`` triangle."""
    angle = math.pi / p
    r = math.tanh(equilateral_side(angle) / 2)
    return (0j, complex(r, 0), r * cmath.exp(1j * angle))


def pseudo_distance(z, w):
    return abs(z - w) / abs(1 - w.conjugate() * z)


def hyperbolic_distance(z, w):
    return 2 * math.atanh(min(pseudo_distance(z, w), 1 - 1e-16))


@dataclass(frozen=True)
class Motion:
    """Orientation-preserving isometry ``z -> (a z + b) / (conj(b) z + conj(a))``."""
    a: complex
    b: complex

    def __post_init__(self):
        det = abs(self.a) ** 2 - abs(self.b) ** 2
        if det <= 0:
            raise ValueError("not a disk motion")
        s = math.sqrt(det)
        object.__setattr__(self, "a", self.a / s)
        object.__setattr__(self, "b", self.b / s)

    @classmethod
    def identity(cls):
        return cls(1 + 0j, 0j)

    @classmethod
    def rotation(cls, theta):
        return cls(cmath.exp(0.5j * theta), 0j)

    @classmethod
    def to_point(cls, p):
        """The hyperbolic translation taking 0 to ``p``."""
        return cls(1 + 0j, complex(p))

    def __call__(self, z):
        return (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())

    def __matmul__(self, other):
        a = self.a * other.a + self.b * other.b.conjugate()
        b = self.a * other.b + self.b * other.a.conjugate()
        return Motion(a, b)

    def inverse(self):
        return Motion(self.a.conjugate(), -self.b)

    def matrix(self):
        return [[self.a, self.b], [self.b.conjugate(), self.a.conjugate()]]

    def close_to(self, other, tol=1e-7):
        # the matrix is determined up to sign
        d1 = abs(self.a - other.a) + abs(self.b - other.b)
        d2 = abs(self.a + other.a) + abs(self.b + other.b)
        return min(d1, d2) < tol

    @classmethod
    def taking(cls, p, p2, q, q2):
        """The motion with ``p -> q`` and ``p2 -> q2`` (equal distances assumed)."""
        Tp, Tq = cls.to_point(p), cls.to_point(q)
        u = Tp.inverse()(p2)
        v = Tq.inverse()(q2)
        theta = cmath.phase(v) - cmath.phase(u)
        return Tq @ cls.rotation(theta) @ Tp.inverse()


def reflect(z, p, q):
    """Reflect ``z`` across the geodesic through ``p`` and ``q``."""
    T = Motion.to_point(p)
    qq = T.inverse()(q)
    u = qq / abs(qq)
    zz = T.inverse()(z)
    return T(u * u * zz.conjugate())


def angle_at(v, p, q):
    """Hyperbolic angle at ``v`` from the geodesic towards ``p`` to the one towards ``q`` (0, 2pi)."""
    T = Motion.to_point(v).inverse()
    a = cmath.phase(T(q)) - cmath.phase(T(p))
    return a % (2 * math.pi)


def triangle_angles(t):
    a, b, c = t
    return (min(angle_at(a, b, c), angle_at(a, c, b)),
            min(angle_at(b, c, a), angle_at(b, a, c)),
            min(angle_at(c, a, b), angle_at(c, b, a)))


def triangle_area(t):
    return math.pi - sum(triangle_angles(t))


def geodesic_points(p, q, n=16):
    """Points along the geodesic segment from ``p`` to ``q``."""
    T = Motion.to_point(p)
    qq = T.inverse()(q)
    # the segment from 0 to qq is a diameter piece; space points evenly in length
    d = math.atanh(abs(qq))
    u = qq / abs(qq) if abs(qq) > 0 else 1
    return [T(math.tanh(d * k / n) * u) for k in range(n + 1)]


def geodesic_arc(p, q):
    """``None`` for a straight segment, else ``(center, radius)`` of the orthogonal circle."""
    cross = p.real * q.imag - p.imag * q.real
    if abs(cross) < 1e-12:
        return None
    # centre c satisfies |c|^2 = R^2 + 1 and the circle passes p, q
    a1, b1 = 2 * p.real, 2 * p.imag
    a2, b2 = 2 * q.real, 2 * q.imag
    r1, r2 = abs(p) ** 2 + 1, abs(q) ** 2 + 1
    det = a1 * b2 - a2 * b1
    c = complex((r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det)
    return c, math.sqrt(abs(c) ** 2 - 1)


# tiling ------------------------------------------------------------------------

@dataclass
class TrianglePiece:
    corners: tuple          # three disk points
    labels: tuple           # which base corner each one images
    generation: int
    word: tuple = ()        # side indices reflected across, in order

    @property
    def centroid(self):
        return sum(self.corners) / 3


class _PointSet:
    """Points up to ``TOL`` in pseudo-distance, bucketed on a grid."""

    def __init__(self, cell=1e-6):
        self.cell = cell
        self.buckets = {}

    def _key(self, z):
        return (round(z.real / self.cell), round(z.imag / self.cell))

    def find(self, z):
        kx, ky = self._key(z)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for w, val in self.buckets.get((kx + dx, ky + dy), ()):
                    if pseudo_distance(z, w) < TOL:
                        return val
        return None

    def add(self, z, val):
        self.buckets.setdefault(self._key(z), []).append((z, val))


def generate_tiling(depth, p=4):
    """Triangles reached from the base by at most ``depth`` side reflections."""
    if depth < 0 or depth > MAX_DEPTH:
        raise ValueError(f"depth must be between 0 and {MAX_DEPTH}")
    base = TrianglePiece(base_triangle(p), (0, 1, 2), 0, ())
    seen = _PointSet()
    seen.add(base.centroid, 0)
    out = [base]
    frontier = [base]
    for gen in range(1, depth + 1):
        nxt = []
        for piece in frontier:
            for side in range(3):
                # side k is opposite corner k
                i, j = [x for x in range(3) if x != side]
                a, b = piece.corners[i], piece.corners[j]
                moved = reflect(piece.corners[side], a, b)
                corners = list(piece.corners)
                corners[side] = moved
                cand = TrianglePiece(tuple(corners), piece.labels, gen, piece.word + (side,))
                if seen.find(cand.centroid) is None:
                    seen.add(cand.centroid, len(out))
                    out.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return out


def star_count(tiles, v=0j):
    return sum(1 for t in tiles if any(abs(c - v) < TOL for c in t.corners))


# the 16-gon --------------------------------------------------------------------

@dataclass
class PolygonChart:
    kind: str                      # "hyperbolic" or "flat"
    boundary: list                 # corner points of the polygon, ccw
    corner_class: list             # vertex class of each corner
    sides: list                    # (start, end) corner index pairs
    pairing: list                  # side -> paired side
    motions: list                  # hyperbolic: Motion per side; flat: translation vectors
    triangles: list = field(default_factory=list)   # (points, face index)
    darts: dict = field(default_factory=dict)       # dart -> (tail point, head point)
    side_darts: list = field(default_factory=list)  # darts along each side
    center: complex = 0j
    meta: dict = field(default_factory=dict)

    def to_dict(self):
        def pt(z):
            return [z.real, z.imag]
        if self.kind == "hyperbolic":
            mot = [{"a": pt(m.a), "b": pt(m.b)} for m in self.motions]
        else:
            mot = [pt(v) for v in self.motions]
        return {"kind": self.kind, "boundary": [pt(z) for z in self.boundary],
                "corner_class": self.corner_class, "pairing": self.pairing,
                "motions": mot, "cones": self.meta.get("cones", {}),
                "meta": {k: v for k, v in self.meta.items() if k != "cones"}}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _Layout:
    def __init__(self, m, glued):
        self.m = m
        self.glued = glued
        self.phi = m.phi
        self.edge_of = m.edge_of()
        self.face_of = m.face_of()
        self.pos = {}       # dart -> (tail, head)

    def place_face(self, d, tail, head, third):
        p = self.phi
        darts = (d, p[d], p[p[d]])
        pts = ((tail, head), (head, third), (third, tail))
        for x, pq in zip(darts, pts):
            old = self.pos.get(x)
            if old is not None:
                if abs(old[0] - pq[0]) > 1e-7 or abs(old[1] - pq[1]) > 1e-7:
                    raise LayoutError("layout collision")
            self.pos[x] = pq

    def run(self, d0, tri):
        a = self.m.alpha
        p = self.phi
        self.place_face(d0, *tri)
        placed = {self.face_of[d0]}
        queue = deque([d0])
        while queue:
            d = queue.popleft()
            for x in (d, p[d], p[p[d]]):
                if self.edge_of[x] not in self.glued:
                    continue
                y = a[x]
                tail, head = self.pos[x]
                third = self.pos[p[p[x]]][0]
                moved = reflect(third, tail, head)
                self.place_face(y, head, tail, moved)
                f = self.face_of[y]
                if f not in placed:
                    placed.add(f)
                    queue.append(y)
        return placed


def _orbits(items, act):
    seen, out = set(), []
    for x in items:
        if x in seen:
            continue
        orb = []
        y = x
        while y not in seen:
            seen.add(y)
            orb.append(y)
            y = act(y)
        out.append(sorted(orb))
    return out


def _boundary_cycle(layout, boundary_darts):
    by_tail = {}
    for d in boundary_darts:
        key = _rkey(layout.pos[d][0])
        if key in by_tail:
            raise LayoutError("boundary is not a simple cycle")
        by_tail[key] = d
    start = min(boundary_darts)
    cyc = [start]
    d = start
    while True:
        d = by_tail.get(_rkey(layout.pos[d][1]))
        if d is None:
            raise LayoutError("boundary does not close")
        if d == start:
            break
        cyc.append(d)
    if len(cyc) != len(boundary_darts):
        raise LayoutError("boundary has several components")
    return cyc


def _rkey(z):
    return (round(z.real, 7), round(z.imag, 7))


def _try_chart(m, glued, d0):
    """Face layout for a glued edge set: ``(layout, boundary dart cycle)`` or None."""
    lay = _Layout(m, glued)
    placed = lay.run(d0, base_triangle())
    if len(placed) != len(m.faces()):
        return None
    centroids = _PointSet()
    for f in m.faces():
        cen = sum(lay.pos[d][0] for d in f) / 3
        if centroids.find(cen) is not None:
            raise LayoutError("two faces land on the same triangle")
        centroids.add(cen, f[0])
    boundary = [d for d in range(m.dart_count) if lay.edge_of[d] not in glued]
    return lay, _boundary_cycle(lay, boundary)


def _split_at_corners(cyc, is_corner):
    n = len(cyc)
    starts = [i for i in range(n) if is_corner(cyc[i])]
    if not starts:
        return None
    sides = []
    for k, i in enumerate(starts):
        j = starts[(k + 1) % len(starts)]
        sides.append([cyc[x % n] for x in range(i, j if j > i else j + n)])
    # start at a corner of the swapped pair so charts line up with the kites
    return sides


def _vertex_orbit_sizes(m, rot):
    vertex_of = m.vertex_of()
    rep = {}
    for d in range(m.dart_count):
        rep.setdefault(vertex_of[d], d)
    size = {}
    for v, d in rep.items():
        k, x = 1, vertex_of[rot[d]]
        seen = {v}
        while x not in seen:
            seen.add(x)
            x = vertex_of[rot[rep[x]]]
            k += 1
        size[v] = k
    return size


def unfold_16gon(m=None, rotation=None, base_dart=0):
    """Lay the 32 faces of X out around the tail vertex of ``base_dart``.

    The glued edges are the star of that vertex plus whole orbits of the
    order 8 rotation ``a``, so the chart is rotation symmetric. Polygon
    corners are the vertices with short ``<a>``-orbits (one fixed vertex and
    a swapped pair); the free-orbit vertices sit inside the sides. The
    16-gon's sides are the geodesics between consecutive corners, and each
    one is followed in the face chart by two triangle edges. The first
    layout whose boundary pairs side to side is kept.
    """
    m = m or surface_x()
    rot = rotation or vertex_rotation(m, base_dart)
    if perm_order(rot) != 8:
        raise LayoutError("rotation about the centre must have order 8")
    vertex_of = m.vertex_of()
    orbit_size = _vertex_orbit_sizes(m, rot)
    centre = vertex_of[base_dart]
    edge_of = m.edge_of()
    edges = sorted(set(edge_of))
    edge_rep = {}
    for d in range(m.dart_count):
        edge_rep.setdefault(edge_of[d], d)
    edge_orbits = _orbits(edges, lambda e: edge_of[rot[edge_rep[e]]])
    star = {edge_of[d] for d in _sigma_orbit(m, base_dart)}
    star_orbit = next(o for o in edge_orbits if star <= set(o))
    others = [o for o in edge_orbits if o is not star_orbit]

    def is_corner(d):
        v = vertex_of[d]
        return v != centre and orbit_size[v] < 8

    need = len(m.faces()) // 8 - 1
    for combo in combinations(others, need):
        glued = set(star_orbit).union(*combo)
        try:
            res = _try_chart(m, glued, base_dart)
        except LayoutError:
            continue
        if res is None:
            continue
        lay, cyc = res
        sides = _split_at_corners(cyc, is_corner)
        if not sides or len(sides) != 16 or any(len(s) != 2 for s in sides):
            continue
        # rotate so side 0 starts at a corner of the swapped pair
        while orbit_size[vertex_of[sides[0][0]]] != 2:
            sides = sides[1:] + sides[:1]
        try:
            return _finish_chart(m, lay, sides, glued, orbit_size)
        except LayoutError:
            continue
    raise LayoutError("no rotation-symmetric layout with 16 paired sides")


def _sigma_orbit(m, d):
    out = [d]
    x = m.sigma[d]
    while x != d:
        out.append(x)
        x = m.sigma[x]
    return out


def _finish_chart(m, lay, sides, glued, orbit_size):
    alpha = m.alpha
    vertex_of = m.vertex_of()
    side_of = {}
    for i, s in enumerate(sides):
        for d in s:
            side_of[d] = i
    pairing, motions = [], []
    for i, s in enumerate(sides):
        j = side_of[alpha[s[0]]]
        if [alpha[d] for d in reversed(s)] != sides[j]:
            raise LayoutError("paired sides do not reverse each other")
        pairing.append(j)
        p0, p1 = lay.pos[s[0]][0], lay.pos[s[-1]][1]
        q0, q1 = lay.pos[sides[j][-1]][1], lay.pos[sides[j][0]][0]
        M = Motion.taking(p0, p1, q0, q1)
        # the interior vertex of the side must follow too
        if abs(M(lay.pos[s[0]][1]) - lay.pos[sides[j][-1]][0]) > 1e-7:
            raise LayoutError("pairing motion does not respect the side path")
        motions.append(M)
    boundary = [lay.pos[s[0]][0] for s in sides]
    corner_class = [vertex_of[s[0]] for s in sides]
    names = {}
    for v in set(corner_class):
        names[v] = "P_inf" if orbit_size[v] == 1 else "P_pm1"
    triangles = [(tuple(lay.pos[d][0] for d in f), k) for k, f in enumerate(m.faces())]
    chart = PolygonChart("hyperbolic", boundary, corner_class,
                         [(i, (i + 1) % len(sides)) for i in range(len(sides))],
                         pairing, motions, triangles, dict(lay.pos), sides)
    chart.meta.update({"glued_edges": sorted(glued), "center_vertex": vertex_of[0],
                       "class_names": {str(v): n for v, n in names.items()},
                       "side_vertices": [[vertex_of[d] for d in s] + [vertex_of[alpha[s[-1]]]] for s in sides]})
    chart.meta["cones"] = _hyperbolic_cones(chart, names)
    return chart


def _hyperbolic_cones(chart, names):
    sums = {}
    for c, a in zip(chart.corner_class, corner_angles(chart)):
        key = f"{names[c]}#{c}"
        sums[key] = sums.get(key, 0.0) + a
    return sums


# chart checks --------------------------------------------------------------------

def corner_angles(chart):
    n = len(chart.boundary)
    out = []
    for i in range(n):
        prev, cur, nxt = chart.boundary[i - 1], chart.boundary[i], chart.boundary[(i + 1) % n]
        out.append(angle_at(cur, nxt, prev))
    return out


def chart_area(chart):
    """Hyperbolic area from the corner angles (Gauss-Bonnet for a geodesic polygon)."""
    n = len(chart.boundary)
    return (n - 2) * math.pi - sum(corner_angles(chart))


def triangles_area(chart):
    return sum(triangle_area(t) for t, _ in chart.triangles)


def pairing_is_involution(chart):
    p = chart.pairing
    return all(p[p[i]] == i and p[i] != i for i in range(len(p)))


def pairing_commutes_with_rotation(chart, steps=8):
    """Rotating by ``2pi/steps`` shifts sides by ``n/steps`` and must commute with the pairing."""
    n = len(chart.sides)
    shift = n // steps
    R = Motion.rotation(2 * math.pi / steps)
    for i in range(n):
        # the rotation carries side i onto side i + shift
        j = (i + shift) % n
        if abs(R(chart.boundary[i]) - chart.boundary[j]) > 1e-7:
            return False
        if (chart.pairing[i] + shift) % n != chart.pairing[j]:
            return False
    return True


def motions_consistent(chart):
    """Each motion inverts its partner's and carries its side onto the partner."""
    for i, j in enumerate(chart.pairing):
        M = chart.motions[i]
        if not M.close_to(chart.motions[j].inverse()):
            return False
        a, b = chart.boundary[i], chart.boundary[(i + 1) % len(chart.boundary)]
        c, d = chart.boundary[j], chart.boundary[(j + 1) % len(chart.boundary)]
        if abs(M(a) - d) > 1e-7 or abs(M(b) - c) > 1e-7:
            return False
    return True


def chart_quotient(chart):
    """Rebuild an oriented map from the chart geometry and the pairing motions alone."""
    pts = _PointSet()
    reps = []

    def vid(z):
        k = pts.find(z)
        if k is None:
            k = len(reps)
            pts.add(z, k)
            reps.append(z)
        return k

    tris = [tuple(vid(z) for z in t) for t, _ in chart.triangles]
    parent = list(range(len(reps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, M in enumerate(chart.motions):
        for d in chart.side_darts[i]:
            for z in chart.darts[d]:
                k = pts.find(M(z))
                if k is None:
                    raise LayoutError("pairing motion leaves the chart")
                parent[find(pts.find(z))] = find(k)
    polys = [tuple(find(v) for v in t) for t in tris]
    return map_from_polygons(polys)


def quotient_matches(chart, m=None):
    return is_isomorphic(chart_quotient(chart), m or surface_x())


# Petrie geodesics ---------------------------------------------------------------

@dataclass
class PetrieChain:
    darts: list
    segments: list          # chart segments (midpoint, midpoint)
    faces: list             # face index of each segment
    closes_as_geodesic: bool
    translation_length: float


def _midpoint(p, q):
    T = Motion.to_point(p)
    qq = T.inverse()(q)
    d = math.atanh(abs(qq)) / 2
    return T(math.tanh(d) * qq / abs(qq))


def _develop_strip(m, xs, ys):
    """Develop the faces crossed by a Petrie chain, starting from the base triangle.

    Segment ``i`` runs inside one face from the edge of ``xs[i]`` to the
    edge of ``ys[i]``; the next face is across that edge, so
    ``xs[i + 1] == alpha[ys[i]]``. Returns the developed midpoints, the
    start dart's first position and its position after going once around.
    """
    phi, alpha = m.phi, m.alpha
    pos = {}

    def put(d, tail, head, third):
        pos[d] = (tail, head)
        pos[phi[d]] = (head, third)
        pos[phi[phi[d]]] = (third, tail)

    a, b, c = base_triangle()
    put(xs[0], a, b, c)
    mids = [_midpoint(a, b)]
    for y in ys:
        tail, head = pos[y]
        mids.append(_midpoint(tail, head))
        third = pos[phi[phi[y]]][0]
        put(alpha[y], head, tail, reflect(third, tail, head))
    return mids, (a, b), pos[xs[0]]


def petrie_geodesics(chart, m=None):
    """One chain of chart segments per Petrie polygon, with a geodesic closing check."""
    m = m or surface_x()
    alpha = m.alpha
    face_of = m.face_of()
    out = []
    for walk in petrie_polygons(m):
        xs, ys, segs, faces = [], [], [], []
        k = len(walk)
        for i in range(k):
            d, e = walk[i], walk[(i + 1) % k]
            # a left turn stays in the face of d, a right turn runs through the face of alpha(d)
            if face_of[e] == face_of[d]:
                x, y = d, e
            else:
                x, y = alpha[d], alpha[e]
            if face_of[x] != face_of[y]:
                raise LayoutError("Petrie steps do not share a face")
            xs.append(x)
            ys.append(y)
            segs.append((_midpoint(*chart.darts[x]), _midpoint(*chart.darts[y])))
            faces.append(face_of[x])
        if any(xs[(i + 1) % k] != alpha[ys[i]] for i in range(k)):
            raise LayoutError("Petrie chain does not pass edge to edge")
        mids, first, last = _develop_strip(m, xs, ys)
        T = Motion.to_point(mids[0]).inverse()
        img = [T(z) for z in mids[1:]]
        u = img[0] / abs(img[0])
        straight = all(abs((z / u).imag) < 1e-7 and (z / u).real > 0 for z in img)
        closing = Motion.taking(first[0], first[1], last[0], last[1])
        same_line = abs((T(closing(mids[1])) / u).imag) < 1e-7
        length = hyperbolic_distance(mids[0], mids[-1])
        out.append(PetrieChain(list(walk), segs, faces, straight and same_line, length))
    return out


def chains_rotation_invariant(chains, steps=8):
    R = Motion.rotation(2 * math.pi / steps)

    def key(chain):
        pts = []
        for p, q in chain.segments:
            pts.append(tuple(sorted((_rkey(p), _rkey(q)))))
        return frozenset(pts)

    keys = {key(c) for c in chains}
    for c in chains:
        moved = PetrieChain(c.darts, [(R(p), R(q)) for p, q in c.segments], c.faces,
                            c.closes_as_geodesic, c.translation_length)
        if key(moved) not in keys:
            return False
    return True


# flat development -----------------------------------------------------------------

def class_labels(chart):
    """Corner class -> ``"P_inf"`` (fixed by the rotation) or ``"P_pm1"`` (swapped pair)."""
    return {int(v): n for v, n in chart.meta["class_names"].items()}


def develop_flat(k, chart=None):
    """Flat 16-gon of the cone structure with triangle angles ``(k1 pi/8, k2 pi/4, k3 pi/8)``.

    Eight kites (a triangle and its mirror in the side from the centre to the
    ``P_inf`` corner) surround the centre; boundary sides are matched by the
    hyperbolic chart's pairing, which here must be by translations.
    """
    k1, k2, k3 = k
    A, B, C = k1 * math.pi / 8, k2 * math.pi / 4, k3 * math.pi / 8
    if min(k) < 1 or abs(A + B + C - math.pi) > 1e-12:
        raise ValueError("angles do not form a euclidean triangle")
    chart = chart or unfold_16gon()
    names = class_labels(chart)
    types = [names[c] for c in chart.corner_class]
    n = len(types)
    off = 1 if types[0] == "P_inf" else 0
    # triangle p0 = 0, p_inf = 1, p_pm1 at angle A with |p0 p_pm1| = sin C / sin B
    rad = math.sin(C) / math.sin(B)
    pts = []
    for i in range(n):
        kite = (i + off) // 2
        turn = cmath.exp(1j * 2 * A * kite)
        if types[i] == "P_inf":
            pts.append(turn * 1)
        else:
            pts.append(turn * rad * cmath.exp(-1j * A))
    vectors = []
    for i, j in enumerate(chart.pairing):
        a, b = pts[i], pts[(i + 1) % n]
        c, d = pts[j], pts[(j + 1) % n]
        # the pairing sends a -> d and b -> c
        t1, t2 = d - a, c - b
        if abs(t1 - t2) > 1e-9:
            raise HolonomyError(f"side {i} is paired with side {j} by a non-translation")
        vectors.append(t1)
    flat = PolygonChart("flat", pts, list(chart.corner_class), list(chart.sides),
                        list(chart.pairing), vectors)
    corner = [_flat_angle(pts[i - 1], pts[i], pts[(i + 1) % n]) for i in range(n)]
    sums = {}
    for c, a in zip(chart.corner_class, corner):
        sums[names[c] + f"#{c}"] = sums.get(names[c] + f"#{c}", 0) + a
    centre = 8 * 2 * A
    cones = {"P_0": centre}
    cones.update(sums)
    flat.meta.update({
        "k": list(k), "corner_angles": corner, "cones": cones,
        "closure": abs(sum(pts[(i + 1) % n] - pts[i] for i in range(n))),
        "winding": _winding_about(pts, 0j), "self_overlapping": centre > 2 * math.pi + 1e-9,
        "triangle_angles": [A, B, C],
    })
    return flat


def _flat_angle(prev, cur, nxt):
    """Interior angle at ``cur`` for a counterclockwise kite boundary, in (0, 2pi)."""
    a = cmath.phase((prev - cur) / (nxt - cur))
    return a % (2 * math.pi)


def _winding_about(pts, z):
    total = 0.0
    n = len(pts)
    for i in range(n):
        total += cmath.phase((pts[(i + 1) % n] - z) / (pts[i] - z))
    return round(total / (2 * math.pi))


def cone_excess(flat):
    """``sum(angle - 2 pi)`` over the vertex classes of a flat chart."""
    return sum(a - 2 * math.pi for a in flat.meta["cones"].values())
