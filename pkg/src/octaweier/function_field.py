"""Exact arithmetic in the function field of a superelliptic curve ``w^n = h(z)``.

Elements are ``sum(c_j * w**j for j < n)`` with ``c_j`` in ``Q(z)``; the
reduction ``w^n -> h`` keeps products in that shape. Only curves with ``h``
squarefree and ``gcd(n, deg h) == 1`` are supported: then every root of
``h`` and the point at infinity is totally ramified, which makes the
valuations at those places a plain minimum over the ``w``-terms.

Places are closed points over ``Q``: a monic irreducible ``pi(z)`` plus, for
unramified fibres, a monic irreducible factor ``q(T)`` of ``T^n - h`` over
``Q[z]/pi``.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import sympy as sp
from sympy import QQ
from sympy.polys.fields import field

QZ, Z = field("z", QQ)
RZ = QZ.ring
ZG = RZ.gens[0]


class CurveError(ValueError):
    pass


def as_poly(p):
    """Coerce an int, Fraction, sympy expression or ring element into ``Q[z]``."""
    if isinstance(p, type(RZ.one)):
        return p
    if isinstance(p, type(QZ.one)):
        if p.denom != RZ.one:
            raise CurveError("not a polynomial")
        return p.numer
    return RZ(sp.sympify(p).subs(sp.Symbol("z"), sp.Symbol("z")))


def valuation(p, pi):
    """Exponent of ``pi`` in the polynomial ``p`` (``p != 0``)."""
    if not p:
        raise CurveError("valuation of zero")
    k = 0
    while True:
        q, r = divmod(p, pi)
        if r:
            return k
        p, k = q, k + 1


def frac_valuation(c, pi):
    return valuation(c.numer, pi) - valuation(c.denom, pi)


class ResidueField:
    """``Q[z]/(pi)`` with elements stored as reduced polynomials."""

    def __init__(self, pi):
        self.pi = pi
        self.degree = pi.degree()

    def reduce(self, p):
        return p % self.pi

    def of_frac(self, c):
        """Residue of a ``pi``-integral rational function."""
        num, den = c.numer % self.pi, c.denom % self.pi
        if not den:
            raise CurveError("rational function has a pole at pi")
        return (num * self.inv(den)) % self.pi

    def inv(self, a):
        s, _, g = a.gcdex(self.pi)
        if g.degree() != 0:
            raise CurveError("not invertible modulo pi")
        return (s * (1 / g.LC)) % self.pi

    def poly_rem(self, coeffs, q):
        """Remainder of the polynomial ``sum coeffs[j] T^j`` by monic ``q`` (lists low-to-high)."""
        r = [self.reduce(c) for c in coeffs]
        dq = len(q) - 1
        while len(r) - 1 >= dq:
            lead = r[-1]
            if lead:
                shift = len(r) - 1 - dq
                for i in range(dq + 1):
                    r[shift + i] = self.reduce(r[shift + i] - lead * q[i])
            r.pop()
        return r


class SuperellipticCurve:
    def __init__(self, n, h, name=None):
        h = as_poly(h)
        if n < 2:
            raise CurveError("n must be at least 2")
        if h.degree() < 1 or h.gcd(h.diff(ZG)).degree() > 0:
            raise CurveError("h must be squarefree of positive degree")
        if gcd(n, h.degree()) != 1:
            raise CurveError("only gcd(n, deg h) = 1 is supported")
        self.n = n
        self.h = h
        self.name = name or f"w^{n} = {h.as_expr()}"
        self.dh = h.diff(ZG)
        self.genus = (n - 1) * (h.degree() - 1) // 2
        _, facs = h.factor_list()
        self.branch_polys = sorted((f.monic() for f, _ in facs), key=_poly_key)

    # elements -----------------------------------------------------------------
    def element(self, coeffs):
        coeffs = list(coeffs) + [0] * (self.n - len(coeffs))
        if len(coeffs) != self.n:
            raise CurveError("too many coefficients")
        return FieldElement(self, tuple(QZ(c) if not isinstance(c, type(QZ.one)) else c for c in coeffs))

    def const(self, c):
        return self.element([QZ(sp.Rational(c)) if not isinstance(c, int) else QZ(c)])

    @property
    def z(self):
        return self.element([QZ.gens[0]])

    @property
    def w(self):
        return self.element([0, 1])

    def from_z(self, c):
        """Embed a rational function of ``z``."""
        return self.element([QZ(c) if not isinstance(c, type(QZ.one)) else c])

    # places -------------------------------------------------------------------
    def infinity(self):
        return Place(self, "infinity", None, None)

    def ramified_places(self):
        return [Place(self, "ramified", pi, None) for pi in self.branch_polys] + [self.infinity()]

    def places_over(self, pi):
        """All places over the monic irreducible ``pi``."""
        pi = as_poly(pi).monic()
        if any(pi == b for b in self.branch_polys):
            return [Place(self, "ramified", pi, None)]
        return [Place(self, "unramified", pi, q) for q in fiber_factors(self.n, self.h, pi)]

    def place_at(self, value):
        """The places over ``z = value`` (a rational number)."""
        return self.places_over(ZG - value)

    def divisor(self, x):
        """Divisor of a non-zero element."""
        if x.is_zero():
            raise CurveError("divisor of zero")
        out = {}
        for P in self.ramified_places():
            out[P] = ord_at(P, x)
        num, den = x.norm().numer, x.norm().denom
        seen = set()
        for poly in (num, den):
            if poly.degree() <= 0:
                continue
            _, facs = poly.factor_list()
            for f, _ in facs:
                f = f.monic()
                if _poly_key(f) in seen or any(f == b for b in self.branch_polys):
                    continue
                seen.add(_poly_key(f))
                for P in self.places_over(f):
                    out[P] = ord_at(P, x)
        return Divisor(out)

    def dz_divisor(self):
        """Divisor of ``dz``: ``(n-1)`` at finite branch places, ``-(n+1)`` at infinity."""
        d = {P: self.n - 1 for P in self.ramified_places() if P.kind == "ramified"}
        d[self.infinity()] = -(self.n + 1)
        return Divisor(d)

    def form_divisor(self, h):
        """Divisor of the differential ``h dz``."""
        return self.divisor(h) + self.dz_divisor()

    def local_parameter(self, P):
        """An element of order 1 at ``P``."""
        if P.kind == "unramified":
            return self.from_z(QZ(P.pi))
        if P.kind == "ramified":
            return self.w
        # -n a - deg(h) b = 1
        d = self.h.degree()
        for b in range(1, self.n + 1):
            if (1 + d * b) % self.n == 0:
                a = -(1 + d * b) // self.n
                return self.z ** a * self.w ** b
        raise CurveError("no uniformizer at infinity")

    def holomorphic_basis(self):
        """Monomial forms ``z^a dz / w^b`` holomorphic everywhere, as their ``h``."""
        out = []
        d = self.h.degree()
        for b in range(1, self.n):
            a = 0
            while -self.n * a - (self.n + 1) + b * d >= 0:
                out.append(self.z ** a * self.w ** (-b))
                a += 1
        if len(out) != self.genus:
            raise CurveError("monomial basis size differs from the genus")
        return out


def _poly_key(p):
    return (p.degree(), tuple(str(c) for c in p.to_dense()))


@lru_cache(maxsize=None)
def _fiber_factors_cached(n, h_dense, pi_dense):
    z = sp.Symbol("z")
    T = sp.Symbol("T")
    pi_expr = sum(sp.Rational(str(c)) * z ** k for k, c in enumerate(reversed(pi_dense)))
    h_expr = sum(sp.Rational(str(c)) * z ** k for k, c in enumerate(reversed(h_dense)))
    if sp.degree(pi_expr, z) == 1:
        a = sp.solve(pi_expr, z)[0]
        _, facs = sp.Poly(T ** n - h_expr.subs(z, a), T).factor_list()
        out = []
        for f, _ in facs:
            f = f.monic()
            out.append(tuple(RZ(sp.Rational(c)) for c in reversed(f.all_coeffs())))
        return tuple(out)
    root = sp.CRootOf(pi_expr, 0)
    K = QQ.algebraic_field(root)
    mod = [sp.Rational(str(c)) for c in K.mod.to_list()]
    lead = sp.Poly(pi_expr, z).LC()
    if mod != [c / lead for c in sp.Poly(pi_expr, z).all_coeffs()]:
        raise CurveError("algebraic field uses a different generator")
    g = sp.Poly(T ** n - h_expr.subs(z, root), T, domain=K)
    _, facs = g.factor_list()
    out = []
    for f, _ in facs:
        f = f.monic()
        coeffs = []
        for c in reversed(f.rep.to_list()):
            lst = c.to_list() if hasattr(c, "to_list") else list(c)
            coeff = RZ.zero
            for k, a in enumerate(reversed(lst)):
                coeff += RZ(sp.Rational(str(a))) * ZG ** k
            coeffs.append(coeff)
        out.append(tuple(coeffs))
    return tuple(out)


def fiber_factors(n, h, pi):
    """Monic irreducible factors of ``T^n - h`` over ``Q[z]/pi`` (coefficient lists low-to-high)."""
    facs = _fiber_factors_cached(n, tuple(str(c) for c in h.to_dense()), tuple(str(c) for c in pi.to_dense()))
    return sorted(facs, key=lambda q: (len(q), [_poly_key(c) for c in q]))


class FieldElement:
    __slots__ = ("curve", "coeffs")

    def __init__(self, curve, coeffs):
        self.curve = curve
        self.coeffs = coeffs

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, FieldElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other):
        if isinstance(other, FieldElement):
            return other
        return self.curve.from_z(QZ(other) if not isinstance(other, type(QZ.one)) else other)

    def __add__(self, other):
        other = self._lift(other)
        return FieldElement(self.curve, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.curve, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        n, h = self.curve.n, QZ(self.curve.h)
        out = [QZ.zero] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = i + j
                if k >= n:
                    out[k - n] += a * b * h
                else:
                    out[k] += a * b
        return FieldElement(self.curve, tuple(out))

    __rmul__ = __mul__

    def mult_matrix(self):
        """Matrix of multiplication by ``self`` on the basis ``1, w, ..., w^(n-1)``."""
        n = self.curve.n
        cols = []
        for j in range(n):
            e = self.curve.element([0] * j + [1])
            cols.append((self * e).coeffs)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self):
        return _det(self.mult_matrix())

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.mult_matrix()
        rhs = [QZ.one] + [QZ.zero] * (self.curve.n - 1)
        return FieldElement(self.curve, tuple(_solve(m, rhs)))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.curve.element([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self):
        """``d/dz`` using ``dw/dz = h' w / (n h)``."""
        n = self.curve.n
        log = QZ(self.curve.dh) / (n * QZ(self.curve.h))
        out = []
        for j, c in enumerate(self.coeffs):
            out.append(c.diff(QZ.gens[0]) + (c * j * log if j else QZ.zero))
        return FieldElement(self.curve, tuple(out))

    def single_term(self):
        """``(j, c_j)`` when exactly one ``w``-power is present, else None."""
        terms = [(j, c) for j, c in enumerate(self.coeffs) if c]
        return terms[0] if len(terms) == 1 else None

    def __repr__(self):
        terms = [f"({c.as_expr()})*w**{j}" for j, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def _det(m):
    m = [row[:] for row in m]
    n = len(m)
    det = QZ.one
    for i in range(n):
        p = next((r for r in range(i, n) if m[r][i]), None)
        if p is None:
            return QZ.zero
        if p != i:
            m[i], m[p] = m[p], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            if m[r][i]:
                f = m[r][i] / m[i][i]
                m[r] = [a - f * b for a, b in zip(m[r], m[i])]
    return det


def _solve(m, rhs):
    n = len(m)
    a = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    for i in range(n):
        p = next(r for r in range(i, n) if a[r][i])
        a[i], a[p] = a[p], a[i]
        piv = a[i][i]
        a[i] = [x / piv for x in a[i]]
        for r in range(n):
            if r != i and a[r][i]:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [a[i][n] for i in range(n)]


@dataclass(frozen=True, eq=False)
class Place:
    curve: SuperellipticCurve
    kind: str              # "ramified", "infinity" or "unramified"
    pi: object             # monic irreducible in Q[z], None at infinity
    q: tuple               # fibre factor over Q[z]/pi for unramified places

    @property
    def degree(self):
        if self.kind == "infinity":
            return 1
        if self.kind == "ramified":
            return self.pi.degree()
        return self.pi.degree() * (len(self.q) - 1)

    @property
    def ramification(self):
        return 1 if self.kind == "unramified" else self.curve.n

    def key(self):
        order = {"ramified": 0, "unramified": 1, "infinity": 2}[self.kind]
        pk = _poly_key(self.pi) if self.pi is not None else ()
        qk = tuple(_poly_key(c) for c in self.q) if self.q else ()
        return (order, pk, qk)

    def __eq__(self, other):
        return isinstance(other, Place) and self.curve is other.curve and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    @property
    def label(self):
        if self.kind == "infinity":
            return "P_inf"
        root = _linear_root(self.pi)
        if self.kind == "ramified":
            return f"P_{root}" if root is not None else f"P[{self.pi.as_expr()}]"
        qs = " + ".join(f"({c.as_expr()})*T^{k}" for k, c in enumerate(self.q) if c)
        return f"Q[{self.pi.as_expr()}; {qs}]"

    def __repr__(self):
        return self.label


def _linear_root(pi):
    if pi.degree() != 1:
        return None
    c1, c0 = pi.to_dense()
    return str(sp.Rational(str(-c0 / c1)))


class Divisor:
    """Finite formal sum of places with integer multiplicities."""

    def __init__(self, mult=None):
        self.mult = {P: m for P, m in (mult or {}).items() if m}

    def __add__(self, other):
        out = dict(self.mult)
        for P, m in other.mult.items():
            out[P] = out.get(P, 0) + m
        return Divisor(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return Divisor({P: k * m for P, m in self.mult.items()})

    __rmul__ = lambda self, k: self.scale(k)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.mult == other.mult

    def __getitem__(self, P):
        return self.mult.get(P, 0)

    @property
    def degree(self):
        return sum(m * P.degree for P, m in self.mult.items())

    def is_effective(self):
        return all(m > 0 for m in self.mult.values())

    def support(self):
        return sorted(self.mult)

    def halve(self):
        if any(m % 2 for m in self.mult.values()):
            raise CurveError("divisor is not divisible by 2")
        return Divisor({P: m // 2 for P, m in self.mult.items()})

    def as_dict(self):
        return {P.label: m for P, m in sorted(self.mult.items())}

    def __repr__(self):
        return " + ".join(f"{m}*{P.label}" for P, m in sorted(self.mult.items())) or "0"


def _integral_scale(x, pi):
    """``(m, y)`` with ``x = pi^m * y`` and ``y`` integral but not divisible at ``pi``."""
    m = min(frac_valuation(c, pi) for c in x.coeffs if c)
    y = x * x.curve.from_z(QZ(pi) ** (-m)) if m else x
    return m, y


def _vanishes_unramified(P, y):
    F = ResidueField(P.pi)
    coeffs = [F.of_frac(c) if c else RZ.zero for c in y.coeffs]
    rem = F.poly_rem(coeffs, list(P.q))
    return all(not r for r in rem)


def ord_at(P, x):
    """Order of vanishing of the non-zero element ``x`` at the place ``P``."""
    if x.is_zero():
        raise CurveError("order of zero is undefined")
    curve = x.curve
    n = curve.n
    if P.kind == "ramified":
        return min(n * frac_valuation(c, P.pi) + j for j, c in enumerate(x.coeffs) if c)
    if P.kind == "infinity":
        d = curve.h.degree()
        return min(-n * (c.numer.degree() - c.denom.degree()) - j * d
                   for j, c in enumerate(x.coeffs) if c)
    # z - z0 is a local coordinate on unramified fibres
    m, y = _integral_scale(x, P.pi)
    k = 0
    while _vanishes_unramified(P, y):
        y = y.derivative()
        k += 1
        if k > 10 ** 4:
            raise CurveError("runaway order computation")
    return m + k


def vanishes_at(P, x):
    return not x.is_zero() and ord_at(P, x) > 0 or x.is_zero()
