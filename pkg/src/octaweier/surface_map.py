"""Oriented maps (rotation systems) on darts.

A dart is an oriented edge of a face. ``alpha`` reverses a dart, ``phi``
steps to the next dart of the same face, and ``sigma = phi * alpha`` turns
around the tail vertex. Permutations are plain lists of ints.
"""

import json
from collections import Counter
from dataclasses import dataclass, field


class MapError(ValueError):
    pass


def compose(p, q):
    """``p`` after ``q``."""
    return [p[q[i]] for i in range(len(q))]


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return inv


def identity(n):
    return list(range(n))


def perm_order(p):
    order = 1
    for c in cycles(p):
        n = len(c)
        a, b = order, n
        while b:
            a, b = b, a % b
        order = order * n // a
    return order


def cycles(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = p[j]
            out.append(c)
    return out


@dataclass
class OrientedMap:
    sigma: list
    alpha: list
    # optional: tail vertex label and face label of every dart, kept for bookkeeping
    dart_vertex: list = field(default=None, repr=False)
    dart_face: list = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.alpha)
        if len(self.sigma) != n or sorted(self.sigma) != list(range(n)):
            raise MapError("sigma is not a permutation of the darts")
        if any(self.alpha[self.alpha[d]] != d or self.alpha[d] == d for d in range(n)):
            raise MapError("alpha is not a fixed-point-free involution")

    @property
    def dart_count(self):
        return len(self.alpha)

    @property
    def phi(self):
        return compose(self.sigma, self.alpha)

    def vertices(self):
        return cycles(self.sigma)

    def edges(self):
        return cycles(self.alpha)

    def faces(self):
        return cycles(self.phi)

    def census(self):
        return len(self.vertices()), len(self.edges()), len(self.faces())

    def is_connected(self):
        n = self.dart_count
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    def vertex_of(self):
        """Dart -> index into :meth:`vertices`."""
        out = [0] * self.dart_count
        for k, c in enumerate(self.vertices()):
            for d in c:
                out[d] = k
        return out

    def edge_of(self):
        out = [0] * self.dart_count
        for k, c in enumerate(self.edges()):
            for d in c:
                out[d] = k
        return out

    def face_of(self):
        out = [0] * self.dart_count
        for k, c in enumerate(self.faces()):
            for d in c:
                out[d] = k
        return out

    def to_json(self):
        return json.dumps({"dart_count": self.dart_count, "sigma": self.sigma, "alpha": self.alpha},
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if data["dart_count"] != len(data["alpha"]):
            raise MapError("dart_count does not match alpha")
        return cls(list(data["sigma"]), list(data["alpha"]))


def map_from_polygons(polygons):
    """Oriented map of a closed surface given as consistently oriented polygons.

    Each polygon is a cyclic sequence of hashable vertex labels. Every
    undirected edge must occur exactly twice, once in each direction.
    """
    darts = {}
    tails, faces = [], []
    for fi, poly in enumerate(polygons):
        k = len(poly)
        for i in range(k):
            key = (poly[i], poly[(i + 1) % k])
            if key[0] == key[1]:
                raise MapError("degenerate edge")
            if key in darts:
                raise MapError(f"oriented edge {key} occurs twice (non-manifold or misoriented)")
            darts[key] = len(tails)
            tails.append(poly[i])
            faces.append(fi)
    keys = list(darts)
    alpha = [0] * len(keys)
    for key, d in darts.items():
        rev = (key[1], key[0])
        if rev not in darts:
            raise MapError(f"edge {key} has only one incident face")
        alpha[d] = darts[rev]
    phi = [0] * len(keys)
    for poly in polygons:
        k = len(poly)
        for i in range(k):
            phi[darts[(poly[i], poly[(i + 1) % k])]] = darts[(poly[(i + 1) % k], poly[(i + 2) % k])]
    sigma = compose(phi, alpha)
    m = OrientedMap(sigma, alpha, tails, faces)
    if not m.is_connected():
        raise MapError("surface is disconnected")
    # every vertex label must be one sigma-orbit (no pinched vertices)
    per_label = Counter(tails[c[0]] for c in m.vertices())
    if any(v > 1 for v in per_label.values()):
        raise MapError("non-manifold vertex")
    return m


def quotient_map(mesh):
    """Glue the paired open faces of a fundamental mesh and return its map."""
    n = len(mesh.vertices)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    paired = set()
    index = {p: i for i, p in enumerate(mesh.vertices)}
    for si, sj, t in mesh.boundary_pairs:
        paired.update((si, sj))
        for v in mesh.boundary_slots[si]:
            target = index.get(mesh.vertices[v] + t)
            if target is None or target not in mesh.boundary_slots[sj]:
                raise MapError("boundary pair does not match under its translation")
            parent[find(v)] = find(target)
    if len(paired) != len(mesh.boundary_slots):
        raise MapError("unpaired boundary face")
    polys = [tuple(find(v) for v in t) for t in mesh.triangles]
    return map_from_polygons(polys)


def euler_genus(m):
    if not m.is_connected():
        raise MapError("map is disconnected")
    v, e, f = m.census()
    chi = v - e + f
    if chi % 2:
        raise MapError("odd Euler characteristic")
    return (2 - chi) // 2


def valence_profile(m):
    return (dict(Counter(len(c) for c in m.vertices())),
            dict(Counter(len(c) for c in m.faces())))


def petrie_walk(m, start):
    """Darts of the zigzag from ``start``, turning left first, until it closes."""
    phi = m.phi
    phi_inv = inverse(phi)
    alpha = m.alpha

    def left(d):
        return phi[d]

    def right(d):
        return alpha[phi_inv[alpha[d]]]

    path = [start]
    d = start
    step = 0
    while True:
        d = left(d) if step % 2 == 0 else right(d)
        step += 1
        if d == start and step % 2 == 0:
            return path
        path.append(d)


def _canonical_cycle(edges):
    n = len(edges)
    best = None
    for seq in (edges, edges[::-1]):
        for r in range(n):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


def petrie_polygons(m):
    """All Petrie polygons, each as a list of darts (a left-first walk)."""
    edge = m.edge_of()
    found = {}
    for d in range(m.dart_count):
        walk = petrie_walk(m, d)
        key = _canonical_cycle([edge[x] for x in walk])
        if key not in found:
            found[key] = walk
    return [found[k] for k in sorted(found)]


def seed_automorphism(m, d0, d1):
    """The automorphism sending dart ``d0`` to ``d1``, or None if none exists."""
    n = m.dart_count
    img = [-1] * n
    img[d0] = d1
    stack = [d0]
    while stack:
        d = stack.pop()
        for gen in (m.sigma, m.alpha):
            a, b = gen[d], gen[img[d]]
            if img[a] == -1:
                img[a] = b
                stack.append(a)
            elif img[a] != b:
                return None
    if -1 in img or len(set(img)) != n:
        return None
    return img


def is_automorphism(m, g):
    return compose(g, m.sigma) == compose(m.sigma, g) and compose(g, m.alpha) == compose(m.alpha, g)


def automorphism_group(m):
    """All orientation-preserving automorphisms, as dart permutations."""
    if not m.is_connected():
        raise MapError("map is disconnected")
    out = []
    for d in range(m.dart_count):
        g = seed_automorphism(m, 0, d)
        if g is not None:
            out.append(g)
    return out


def vertex_rotation(m, dart=0):
    """Automorphism turning one step around the tail vertex of ``dart``."""
    return seed_automorphism(m, dart, m.sigma[dart])


def face_rotation(m, dart=0):
    """Automorphism turning one step around the face of ``dart``."""
    return seed_automorphism(m, dart, m.phi[dart])


def power(g, k):
    out = identity(len(g))
    for _ in range(k % perm_order(g)):
        out = compose(g, out)
    return out


def is_isomorphic(m1, m2):
    """True when some dart bijection carries ``m1`` onto ``m2``."""
    if m1.dart_count != m2.dart_count:
        return False
    n = m1.dart_count
    for d in range(n):
        img = [-1] * n
        img[0] = d
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for g1, g2 in ((m1.sigma, m2.sigma), (m1.alpha, m2.alpha)):
                a, b = g1[x], g2[img[x]]
                if img[a] == -1:
                    img[a] = b
                    stack.append(a)
                elif img[a] != b:
                    ok = False
                    break
        if ok and -1 not in img and len(set(img)) == n:
            return True
    return False


@dataclass
class BranchRecord:
    cell: str          # "vertex", "edge" or "face"
    base: int          # orbit index in the quotient
    ramification: int
    fiber_size: int


@dataclass
class QuotientData:
    order: int
    vertex_orbits: list
    edge_orbits: list
    face_orbits: list
    branch: list
    genus: int

    @property
    def census(self):
        return len(self.vertex_orbits), len(self.edge_orbits), len(self.face_orbits)

    def branch_values(self):
        return sorted({(r.cell, r.base) for r in self.branch})

    def signature(self):
        """Ramification indices grouped by branch value, e.g. ``[[4, 4], [8], [8]]``."""
        groups = {}
        for r in self.branch:
            groups.setdefault((r.cell, r.base), []).extend([r.ramification] * r.fiber_size)
        return sorted(sorted(v) for v in groups.values())


def _orbits(cells, cell_of, g_cells):
    seen = set()
    out = []
    for c in range(cells):
        if c in seen:
            continue
        orbit = [c]
        seen.add(c)
        x = g_cells[c]
        while x != c:
            orbit.append(x)
            seen.add(x)
            x = g_cells[x]
        out.append(sorted(orbit))
    return out


def cyclic_quotient(m, g):
    """Orbit data of the cyclic group generated by the automorphism ``g``."""
    if not is_automorphism(m, g):
        raise MapError("not an automorphism")
    n = perm_order(g)
    chi_x = m.census()[0] - m.census()[1] + m.census()[2]
    tables = {}
    branch = []
    for cell, cyc, of in (("vertex", m.vertices(), m.vertex_of()),
                          ("edge", m.edges(), m.edge_of()),
                          ("face", m.faces(), m.face_of())):
        g_cells = [of[g[c[0]]] for c in cyc]
        orbits = _orbits(len(cyc), of, g_cells)
        tables[cell] = orbits
        for k, orb in enumerate(orbits):
            e = n // len(orb)
            if e > 1:
                branch.append(BranchRecord(cell, k, e, len(orb)))
    chi_q = len(tables["vertex"]) - len(tables["edge"]) + len(tables["face"])
    deficit = sum((r.ramification - 1) * r.fiber_size for r in branch)
    if chi_x != n * chi_q - deficit:
        raise MapError("Riemann-Hurwitz balance fails")
    return QuotientData(n, tables["vertex"], tables["edge"], tables["face"], branch, (2 - chi_q) // 2)


def octahedron_map():
    from .lattice_mesh import single_octahedron_mesh
    return quotient_map(single_octahedron_mesh())


def cube_map():
    faces = [(0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7)]
    return map_from_polygons(faces)


def torus_map():
    """One vertex, two edges, one square face."""
    # darts: 0 = x, 1 = x^-1, 2 = y, 3 = y^-1; face word x y x^-1 y^-1
    alpha = [1, 0, 3, 2]
    phi = [2, 3, 1, 0]
    sigma = compose(phi, alpha)
    return OrientedMap(sigma, alpha)


def surface_x():
    """The genus-3 quotient surface as an oriented map."""
    from .lattice_mesh import assemble_fundamental_piece
    return quotient_map(assemble_fundamental_piece())
