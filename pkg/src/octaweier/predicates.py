"""Exact geometric predicates on integer or rational coordinates.

Everything here works on tuples of ``int`` or ``Fraction``; no floating
point is involved, so the answers are exact. Triangles are closed sets.
"""

from fractions import Fraction
from math import lcm


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def orient3d(a, b, c, d):
    """Sign of the signed volume of the tetrahedron ``abcd``."""
    det = dot(cross(sub(b, a), sub(c, a)), sub(d, a))
    return (det > 0) - (det < 0)


def _orient2d(a, b, c):
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def _project(points, normal):
    # drop the coordinate where the normal is largest in magnitude
    k = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != k]
    return [(p[keep[0]], p[keep[1]]) for p in points]


def _on_segment_2d(p, a, b):
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_meet_2d(p, q, a, b):
    o1 = _orient2d(p, q, a)
    o2 = _orient2d(p, q, b)
    o3 = _orient2d(a, b, p)
    o4 = _orient2d(a, b, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment_2d(a, p, q):
        return True
    if o2 == 0 and _on_segment_2d(b, p, q):
        return True
    if o3 == 0 and _on_segment_2d(p, a, b):
        return True
    if o4 == 0 and _on_segment_2d(q, a, b):
        return True
    return False


def _point_in_triangle_2d(p, a, b, c):
    s = (_orient2d(a, b, p), _orient2d(b, c, p), _orient2d(c, a, p))
    return not (min(s) < 0 < max(s))


def segment_meets_triangle(p, q, a, b, c):
    """True when the closed segment ``pq`` meets the closed triangle ``abc``."""
    dp = orient3d(a, b, c, p)
    dq = orient3d(a, b, c, q)
    if dp * dq > 0:
        return False
    if dp == 0 and dq == 0:
        normal = cross(sub(b, a), sub(c, a))
        p2, q2, a2, b2, c2 = _project([p, q, a, b, c], normal)
        if _point_in_triangle_2d(p2, a2, b2, c2) or _point_in_triangle_2d(q2, a2, b2, c2):
            return True
        return (_segments_meet_2d(p2, q2, a2, b2)
                or _segments_meet_2d(p2, q2, b2, c2)
                or _segments_meet_2d(p2, q2, c2, a2))
    s1 = orient3d(p, q, a, b)
    s2 = orient3d(p, q, b, c)
    s3 = orient3d(p, q, c, a)
    return not (min(s1, s2, s3) < 0 < max(s1, s2, s3))


def _edges(t):
    return ((t[0], t[1]), (t[1], t[2]), (t[2], t[0]))


def triangles_meet(t1, t2):
    """True when two closed triangles share at least one point."""
    for p, q in _edges(t1):
        if segment_meets_triangle(p, q, *t2):
            return True
    for p, q in _edges(t2):
        if segment_meets_triangle(p, q, *t1):
            return True
    return False


def improper_contact(t1, t2):
    """True when ``t1`` and ``t2`` meet anywhere other than a common vertex or edge.

    Two triangles of a proper embedded mesh may touch only in the vertices
    (or the one edge) they share combinatorially.
    """
    shared = set(t1) & set(t2)
    if len(shared) == 3:
        return True
    if len(shared) == 0:
        return triangles_meet(t1, t2)
    if len(shared) == 1:
        v = next(iter(shared))
        e1 = tuple(p for p in t1 if p != v)
        e2 = tuple(p for p in t2 if p != v)
        return segment_meets_triangle(*e1, *t2) or segment_meets_triangle(*e2, *t1)
    u, w = tuple(shared)
    x1 = next(p for p in t1 if p not in shared)
    x2 = next(p for p in t2 if p not in shared)
    if orient3d(u, w, x1, x2) != 0:
        return False
    # coplanar hinge: overlap iff the far vertices lie on the same side of uw
    normal = cross(sub(w, u), sub(x1, u))
    u2, w2, a2, b2 = _project([u, w, x1, x2], normal)
    return _orient2d(u2, w2, a2) == _orient2d(u2, w2, b2)


def to_integer_coordinates(triangles):
    """Rescale rational triangles to integers by a common denominator."""
    den = 1
    for t in triangles:
        for p in t:
            for c in p:
                den = lcm(den, Fraction(c).denominator)
    return [tuple(tuple(int(Fraction(c) * den) for c in p) for p in t)
            for t in triangles]


def _bbox(t):
    return tuple(min(p[i] for p in t) for i in range(3)), tuple(max(p[i] for p in t) for i in range(3))


def find_improper_contacts(triangles):
    """Return every index pair ``(i, j)`` whose triangles meet improperly.

    An axis-aligned bounding box sweep prunes pairs that cannot touch; the
    surviving pairs go through :func:`improper_contact`.
    """
    tris = to_integer_coordinates(triangles)
    boxes = [_bbox(t) for t in tris]
    order = sorted(range(len(tris)), key=lambda i: boxes[i][0][0])
    bad = []
    active = []
    for i in order:
        lo, hi = boxes[i]
        active = [j for j in active if boxes[j][1][0] >= lo[0]]
        for j in active:
            blo, bhi = boxes[j]
            if (blo[1] > hi[1] or bhi[1] < lo[1] or blo[2] > hi[2] or bhi[2] < lo[2]):
                continue
            if improper_contact(tris[i], tris[j]):
                bad.append((min(i, j), max(i, j)))
        active.append(i)
    return sorted(bad)
