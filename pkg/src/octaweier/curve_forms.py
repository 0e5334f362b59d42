"""Holomorphic 1-forms, Weierstrass weights and cone structures on ``w^4 = z^3 - z``.

The surface X is the curve ``w^4 = z^3 - z`` (the relation ``f^3 - f = g^4``
with ``z = f``, ``w = g``). A differential ``h dz`` is stored as its
coefficient ``h``. Everything is exact; places off the branch locus are
Galois orbits, so no root is ever approximated.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import sympy as sp

from .function_field import (QZ, CurveError, Divisor, FieldElement, ResidueField,
                             SuperellipticCurve, ord_at)

_z = sp.Symbol("z")


def main_curve():
    return SuperellipticCurve(4, _z ** 3 - _z, name="w^4 = z^3 - z")


def toy_curve():
    """Genus 2 control ``w^2 = z^5 - z``; every genus 2 curve is hyperelliptic."""
    return SuperellipticCurve(2, _z ** 5 - _z, name="w^2 = z^5 - z")


# verbatim divisor display from the source, in its own labels
SOURCE_DIVISOR_TABLE = {
    "(omega_1)": "p_2 + 4 p_3",
    "(omega_2)": "p_1 + 3 p_2 + p_3",
    "(omega_3)": "4 p_1 + p_2",
    "(f)": "-4 p_1 + 4 p_3",
    "(g)": "-3 p_1 + 2 p_2 + p_3",
    "(f^2)": "-8 p_1 + 8 p_3",
    "(g^4/f)": "-8 p_1 + 8 p_2",
}


def _label_degree(text):
    total = 0
    for sign, coeff in re.findall(r"([+-]?)\s*(\d*)\s*p_\d", text):
        total += (-1 if sign == "-" else 1) * int(coeff or 1)
    return total


def source_table_audit():
    """The source table with its degrees and whether they fit the curve."""
    out = []
    for name, text in SOURCE_DIVISOR_TABLE.items():
        deg = _label_degree(text)
        expected = 4 if name.startswith("(omega") else 0
        out.append({"divisor": name, "as_printed": text, "degree": deg,
                    "expected_degree": expected, "consistent": deg == expected})
    return out


@dataclass
class AbelianDifferential:
    """The differential ``h dz``."""
    h: FieldElement
    name: str = ""

    @property
    def curve(self):
        return self.h.curve

    def divisor(self):
        return self.curve.form_divisor(self.h)

    def is_holomorphic(self):
        return all(m >= 0 for m in self.divisor().mult.values())

    def ord_at(self, P):
        return ord_at(P, self.h) + self.curve.dz_divisor()[P]


def _monomial_name(x):
    j, c = x.single_term()
    num, den = c.numer.as_expr(), c.denom.as_expr()
    power = x.curve.n - j
    # c w^j with j = n - b equals (c h) / w^b
    top = sp.factor(num * x.curve.h.as_expr() / den)
    top = "" if top == 1 else f"{top}*"
    return f"{top}dz/w^{power}" if power != 1 else f"{top}dz/w"


def holomorphic_basis(curve=None):
    curve = curve or main_curve()
    return [AbelianDifferential(h, _monomial_name(h)) for h in curve.holomorphic_basis()]


def deck_exponent(n, x, form=False):
    """``e`` with ``x o s = zeta^e x`` for ``s(z, w) = (-z, zeta w)``, ``zeta = exp(i pi / n)``.

    Requires ``h`` odd so that ``s`` preserves the curve. Returns None when
    ``x`` is not an eigenvector. ``form=True`` multiplies by the ``-1`` from ``dz``.
    """
    term = x.single_term()
    if term is None:
        return None
    j, c = term
    x = c.numer.ring.gens[0]
    flipped = QZ(c.numer.compose(x, -x)) / QZ(c.denom.compose(x, -x))
    if flipped == c:
        sign = 0
    elif flipped == -c:
        sign = n
    else:
        return None
    return (j + sign + (n if form else 0)) % (2 * n)


def deck_preserves_curve(curve):
    h = curve.h
    x = h.ring.gens[0]
    # (zeta w)^n = -w^n must equal h(-z)
    return h.compose(x, -x) == -h


def _check_relation(curve):
    w, z = curve.w, curve.z
    lhs = w ** 4 - (z ** 3 - z)
    return lhs.is_zero()


def verify_curve_relation(curve=None):
    curve = curve or main_curve()
    z, w = curve.z, curve.w
    P0 = curve.place_at(0)[0]
    P1 = curve.place_at(1)[0]
    Pm1 = curve.place_at(-1)[0]
    Pinf = curve.infinity()
    dw, dz_ = curve.divisor(w), curve.divisor(z)
    lhs = dw.scale(4)
    rhs = dz_ + curve.divisor(z - 1) + curve.divisor(z + 1)
    z2 = curve.divisor(z ** 2)
    g4f = curve.divisor(w ** 4 / z)
    checks = {
        "relation_reduces": _check_relation(curve),
        "four_w_equals_branch_sum": lhs == rhs,
        "four_w_value": lhs == Divisor({P0: 4, P1: 4, Pm1: 4, Pinf: -12}),
        "z_squared": z2 == Divisor({P0: 8, Pinf: -8}),
        "w4_over_z": g4f == Divisor({P1: 4, Pm1: 4, Pinf: -8}),
        "deck_preserves_curve": deck_preserves_curve(curve),
    }
    return {"checks": checks, "ok": all(checks.values()),
            "divisors": {"(w)": dw.as_dict(), "(z)": dz_.as_dict(),
                         "(z^2)": z2.as_dict(), "(w^4/z)": g4f.as_dict()}}


# gap sequences ---------------------------------------------------------------

def _residue_lift(P, y):
    """A function with the same residue at ``P`` as ``y`` (``ord_P(y) >= 0``)."""
    curve = y.curve
    if P.kind == "infinity":
        c = y.coeffs[0]
        if not c or c.numer.degree() < c.denom.degree():
            return curve.from_z(0)
        return curve.from_z(QZ(c.numer.LC / c.denom.LC))
    if P.kind == "ramified":
        c = y.coeffs[0]
        if not c:
            return curve.from_z(0)
        return curve.from_z(QZ(ResidueField(P.pi).of_frac(c)))
    F = ResidueField(P.pi)
    coeffs = [F.of_frac(c) if c else c.numer.ring.zero for c in y.coeffs]
    rem = F.poly_rem(coeffs, list(P.q))
    return curve.element([QZ(r) for r in rem])


class _Residues:
    """Arithmetic in the residue field at ``P`` through canonical lifts."""

    def __init__(self, P):
        self.P = P

    def of(self, y):
        return _residue_lift(self.P, y)

    def mul(self, a, b):
        return self.of(a * b)

    def sub(self, a, b):
        return self.of(a - b)

    def inv(self, a):
        return self.of(a.inverse())


def _rank(rows, K):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = K.inv(rows[rank][c])
        for i in range(len(rows)):
            if i != rank and not rows[i][c].is_zero():
                f = K.mul(rows[i][c], inv)
                rows[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def taylor_residues(P, f, terms):
    """Residues of ``f, df/dt, d^2f/dt^2, ...`` at ``P`` for the local parameter ``t``.

    These are the Taylor coefficients of ``f`` up to the factors ``k!``, as
    canonical lifts of residue-field elements.
    """
    curve = f.curve
    t = curve.local_parameter(P)
    dt = t.derivative()
    if ord_at(P, f) < 0:
        raise CurveError("function has a pole at the place")
    out = []
    cur = f
    for _ in range(terms):
        out.append(_residue_lift(P, cur) if not cur.is_zero() else curve.from_z(0))
        cur = cur.derivative() / dt
    return out


def vanishing_orders(P, forms):
    """Orders at ``P`` achieved by combinations of the forms (one per dimension).

    Each form ``h dz`` becomes the function ``h dz/dt`` for a local parameter
    ``t``; an order ``k`` occurs exactly when the rank of the first ``k + 1``
    expansion columns jumps. Coefficients live in the residue field, which is
    a number field at places of higher degree.
    """
    curve = forms[0].curve
    t = curve.local_parameter(P)
    dt = t.derivative()
    funcs = [f.h / dt for f in forms]
    depth = 2 * curve.genus - 1
    K = _Residues(P)
    rows = [taylor_residues(P, f, depth) for f in funcs]
    orders = []
    prev = 0
    for c in range(depth):
        r = _rank([row[:c + 1] for row in rows], K)
        if r > prev:
            orders.append(c)
            prev = r
    if len(orders) != len(forms):
        raise CurveError("forms are linearly dependent at the place")
    return orders


def gap_weight(P, forms=None):
    forms = forms or holomorphic_basis(P.curve)
    orders = vanishing_orders(P, forms)
    return sum(o - k for k, o in enumerate(orders))


# Wronskian -------------------------------------------------------------------

def _det(rows):
    n = len(rows)
    total = None
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total


def wronskian(forms):
    """``det(d^k h_i / dz^k)`` for ``k < g``."""
    rows = []
    cur = [f.h for f in forms]
    for _ in range(len(forms)):
        rows.append(cur)
        cur = [x.derivative() for x in cur]
    W = _det(rows)
    if W.is_zero():
        raise CurveError("Wronskian vanishes: basis not independent")
    return W


def wronskian_divisor(curve=None, forms=None):
    """Weierstrass divisor ``(W) + g(g+1)/2 (dz)``."""
    curve = curve or main_curve()
    forms = forms or holomorphic_basis(curve)
    g = len(forms)
    W = wronskian(forms)
    D = curve.divisor(W) + curve.dz_divisor().scale(g * (g + 1) // 2)
    if any(m < 0 for m in D.mult.values()):
        raise CurveError("Weierstrass divisor is not effective")
    return D


@dataclass
class HyperellipticVerdict:
    hyperelliptic: bool
    genus: int
    hyperelliptic_weight: int
    witness: str
    witness_weight: int


def is_hyperelliptic(curve=None, divisor=None):
    """Weight criterion: hyperelliptic iff every Weierstrass point has weight ``g(g-1)/2``."""
    curve = curve or main_curve()
    D = divisor or wronskian_divisor(curve)
    target = curve.genus * (curve.genus - 1) // 2
    for P in D.support():
        if D[P] != target:
            return HyperellipticVerdict(False, curve.genus, target, P.label, D[P])
    P = D.support()[0]
    return HyperellipticVerdict(True, curve.genus, target, P.label, D[P])


def deck_orbit_sizes(curve, D):
    """Orbit sizes of the geometric points of ``D`` under ``(z, w) -> (-z, zeta w)``.

    A point with ``z`` and ``w`` both finite and non-zero has trivial
    stabiliser. Branch points are permuted by ``z -> -z`` and fixed by the
    square of the deck map.
    """
    n = curve.n
    sizes = []
    free = 0
    branch = []
    for P in D.support():
        if P.kind == "unramified":
            free += P.degree
        elif P.kind == "infinity":
            sizes.append(1)
        else:
            branch.append(P)
    seen = set()
    for P in branch:
        if P in seen:
            continue
        x = P.pi.ring.gens[0]
        img = P.pi.compose(x, -x)
        img = img.monic()
        partner = next((Q for Q in branch if Q.pi == img), None)
        if partner is None:
            raise CurveError("branch divisor not deck invariant")
        seen.update({P, partner})
        # a degree-d branch polynomial fixed by z -> -z contributes d points in one orbit
        sizes.append(P.degree if partner == P else 2 * P.degree)
    if free % (2 * n):
        raise CurveError("free points do not split into full orbits")
    sizes += [2 * n] * (free // (2 * n))
    return sorted(sizes)


def deck_invariant(curve, D):
    """Divisor invariance under the deck map at the level of closed points."""
    x = curve.h.ring.gens[0]
    for P in D.support():
        if P.kind == "ramified":
            img = P.pi.compose(x, -x).monic()
            Q = curve.places_over(img)[0]
            if D[Q] != D[P]:
                return False
        elif P.kind == "unramified":
            img = P.pi.compose(x, -x).monic()
            mass = sum(D[Q] * Q.degree for Q in curve.places_over(img))
            own = sum(D[Q] * Q.degree for Q in curve.places_over(P.pi))
            if mass != own:
                return False
    return True


# cone structures ---------------------------------------------------------------

@dataclass
class ConeStructure:
    form: str
    divisor: dict
    k: tuple                       # (k1, k2, k3) at P_0, P_(+-1), P_inf
    cone_angles: dict              # place label -> angle / pi
    triangle_angles: tuple         # multiples of pi
    deck_exponent: int

    @property
    def excess(self):
        """``sum(angle - 2 pi)`` in units of pi."""
        return sum(a - 2 for a in self.cone_angles.values())

    def sheets_angle_at_infinity(self):
        return self.cone_angles["P_inf"]

    def to_dict(self):
        return {"form": self.form, "divisor": self.divisor, "k": list(self.k),
                "cone_angles_over_pi": {k: str(v) for k, v in self.cone_angles.items()},
                "triangle_angles_over_pi": [str(a) for a in self.triangle_angles],
                "excess_over_pi": str(self.excess), "deck_exponent": self.deck_exponent}


def cone_structure(form):
    curve = form.curve
    P0 = curve.place_at(0)[0]
    P1 = curve.place_at(1)[0]
    Pm1 = curve.place_at(-1)[0]
    Pinf = curve.infinity()
    D = form.divisor()
    angles = {P.label: Fraction(2 * (1 + D[P])) for P in (P0, P1, Pm1, Pinf)}
    if D[P1] != D[Pm1]:
        raise CurveError("form does not respect the z -> -z symmetry")
    k = (1 + D[P0], 1 + D[P1], 1 + D[Pinf])
    tri = (Fraction(k[0], 8), Fraction(k[1], 4), Fraction(k[2], 8))
    return ConeStructure(form.name, D.as_dict(), k, angles, tri,
                         deck_exponent(curve.n, form.h, form=True))


def translation_structures(curve=None):
    return [cone_structure(f) for f in holomorphic_basis(curve)]


def valid_k_triple(k, structures=None):
    """True when ``k`` is the triple of one of the eigenform structures."""
    structures = structures or translation_structures()
    return tuple(k) in {s.k for s in structures}


# report ------------------------------------------------------------------------

def places_of_interest(curve):
    return curve.ramified_places() + curve.place_at(2)


def curve_report(curve=None):
    curve = curve or main_curve()
    forms = holomorphic_basis(curve)
    D = wronskian_divisor(curve, forms)
    half = D.halve()
    weights = []
    for P in D.support():
        weights.append({"place": P.label, "degree": P.degree, "multiplicity": D[P],
                        "gap_weight": gap_weight(P, forms),
                        "orders": vanishing_orders(P, forms)})
    generic = curve.place_at(2)[0]
    verdict = is_hyperelliptic(curve, D)
    toy = toy_curve()
    toy_verdict = is_hyperelliptic(toy)
    return {
        "curve": curve.name,
        "genus": curve.genus,
        "relation": verify_curve_relation(curve),
        "basis": [{"form": f.name, "divisor": f.divisor().as_dict(), "degree": f.divisor().degree,
                   "deck_exponent": deck_exponent(curve.n, f.h, form=True)} for f in forms],
        "source_divisor_table": source_table_audit(),
        "weierstrass": {
            "divisor": D.as_dict(), "degree": D.degree,
            "half_divisor_degree": half.degree,
            "geometric_points": sum(P.degree for P in half.support()),
            "deck_orbit_sizes": deck_orbit_sizes(curve, half),
            "weights": weights,
            "generic_place": {"place": generic.label, "gap_weight": gap_weight(generic, forms)},
        },
        "hyperelliptic": {"verdict": verdict.hyperelliptic, "witness": verdict.witness,
                          "witness_weight": verdict.witness_weight,
                          "threshold": verdict.hyperelliptic_weight,
                          "minimal_surface_possible": verdict.hyperelliptic},
        "toy_control": {"curve": toy.name, "hyperelliptic": toy_verdict.hyperelliptic,
                        "weight": toy_verdict.witness_weight},
        "cone_structures": [s.to_dict() for s in translation_structures(curve)],
    }


def report_json(curve=None):
    return json.dumps(curve_report(curve), indent=2, sort_keys=True)
