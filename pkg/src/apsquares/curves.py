"""Elliptic curves over Q and Q(sqrt(D)): group law, torsion, halving, twists,
and birational maps between quartic models y^2 = quartic(x) and Weierstrass
cubics.

Curves are kept in the form y^2 = x^3 + a2 x^2 + a4 x + a6 throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional, Union

from .polynomials import Poly, factor_rational_poly, roots_in_quadfield
from .quadfield import QuadElem, QuadField, is_square_quad
from .rationals import is_square_rational

__all__ = [
    "BadReductionError",
    "CurvePoint",
    "ExceptionalPointError",
    "QuarticCurve",
    "TorsionData",
    "WeierstrassCurve",
    "compute_torsion",
    "find_rational_isomorphism",
    "halve_point",
    "point_order",
    "quadratic_twist",
    "quartic_to_weierstrass",
    "trace_of_frobenius",
]

Coord = Union[Fraction, QuadElem]


class ExceptionalPointError(ValueError):
    """The birational map is undefined at this point."""


class BadReductionError(ValueError):
    """The curve has bad reduction at the requested prime."""


def _is_zero(v: Coord) -> bool:
    return v.is_zero() if isinstance(v, QuadElem) else v == 0


class WeierstrassCurve:
    """y^2 = x^3 + a2*x^2 + a4*x + a6 over Q (field=None) or Q(sqrt(D))."""

    __slots__ = ("a2", "a4", "a6", "field", "label", "_psi_cache")

    def __init__(self, a2, a4, a6, field: Optional[QuadField] = None, label: str = ""):
        if field is None:
            self.a2, self.a4, self.a6 = Fraction(a2), Fraction(a4), Fraction(a6)
        else:
            conv = lambda c: c if isinstance(c, QuadElem) else field(Fraction(c))
            self.a2, self.a4, self.a6 = conv(a2), conv(a4), conv(a6)
        self.field = field
        self.label = label
        self._psi_cache: dict[int, Poly] = {}
        if _is_zero(self.discriminant()):
            raise ValueError("singular curve (zero discriminant)")

    # -- invariants -------------------------------------------------------
    def b_invariants(self):
        b2 = 4 * self.a2
        b4 = 2 * self.a4
        b6 = 4 * self.a6
        b8 = 4 * self.a2 * self.a6 - self.a4 * self.a4
        return b2, b4, b6, b8

    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants()
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        return c4, c6

    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants()
        return (
            -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        )

    def j_invariant(self):
        c4, _ = self.c_invariants()
        return c4 * c4 * c4 / self.discriminant()

    # -- structure ---------------------------------------------------------
    def rhs(self, x: Coord) -> Coord:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def rhs_poly(self) -> Poly:
        return Poly([self.a6, self.a4, self.a2, 1], self.field)

    def contains(self, x: Coord, y: Coord) -> bool:
        return _is_zero(y * y - self.rhs(x))

    def promote(self, field: QuadField) -> "WeierstrassCurve":
        if self.field is not None:
            if self.field != field:
                raise ValueError("curve already over another field")
            return self
        return WeierstrassCurve(
            field(self.a2), field(self.a4), field(self.a6), field, self.label
        )

    def is_rational_model(self) -> bool:
        if self.field is None:
            return True
        return all(c.is_rational() for c in (self.a2, self.a4, self.a6))

    def rational_model(self) -> "WeierstrassCurve":
        if self.field is None:
            return self
        if not self.is_rational_model():
            raise ValueError("curve is not defined over Q")
        return WeierstrassCurve(
            self.a2.u, self.a4.u, self.a6.u, None, self.label
        )

    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def point(self, x, y) -> "CurvePoint":
        if self.field is None:
            x, y = Fraction(x), Fraction(y)
        else:
            conv = lambda c: c if isinstance(c, QuadElem) else self.field(Fraction(c))
            x, y = conv(x), conv(y)
        if not self.contains(x, y):
            raise ValueError(f"({x}, {y}) is not on {self}")
        return CurvePoint(self, x, y)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeierstrassCurve)
            and self.a2 == other.a2
            and self.a4 == other.a4
            and self.a6 == other.a6
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.a2, self.a4, self.a6, None if self.field is None else self.field.D))

    def __str__(self) -> str:
        tag = f" [{self.label}]" if self.label else ""
        return f"y^2 = x^3 + ({self.a2})x^2 + ({self.a4})x + ({self.a6}){tag}"

    __repr__ = __str__

    # -- division polynomials (a1 = a3 = 0 model) ---------------------------
    def division_poly(self, n: int) -> Poly:
        """P_n with psi_n = P_n (n odd) or psi_n = P_n * psi_2 (n even)."""
        if n in self._psi_cache:
            return self._psi_cache[n]
        F = self.field
        b2, b4, b6, b8 = self.b_invariants()
        mk = lambda cs: Poly(cs, F)
        seeds = {
            -1: mk([-1]),
            0: mk([]),
            1: mk([1]),
            2: mk([1]),
            3: mk([b8, 3 * b6, 3 * b4, b2, 3]),
            4: mk(
                [
                    b4 * b8 - b6 * b6,
                    b2 * b8 - b4 * b6,
                    10 * b8,
                    10 * b6,
                    5 * b4,
                    b2,
                    2,
                ]
            ),
        }
        if n in seeds:
            self._psi_cache[n] = seeds[n]
            return seeds[n]
        P = self.division_poly
        f4 = mk([self.a6, self.a4, self.a2, 1]) * 4
        if n % 2:
            m = (n - 1) // 2
            if m % 2 == 0:
                val = f4 * f4 * P(m + 2) * P(m) ** 3 - P(m - 1) * P(m + 1) ** 3
            else:
                val = P(m + 2) * P(m) ** 3 - f4 * f4 * P(m - 1) * P(m + 1) ** 3
        else:
            m = n // 2
            val = P(m) * (P(m + 2) * P(m - 1) ** 2 - P(m - 2) * P(m + 1) ** 2)
        self._psi_cache[n] = val
        return val


class CurvePoint:
    """Affine point or the point at infinity on a WeierstrassCurve."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x: Optional[Coord], y: Optional[Coord]):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.curve != other.curve:
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        if self.is_infinity:
            return hash((hash(self.curve), "O"))
        return hash((hash(self.curve), self.x, self.y))

    def __neg__(self) -> "CurvePoint":
        if self.is_infinity:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        if self.curve != other.curve:
            raise ValueError("points on different curves")
        if self.is_infinity:
            return other
        if other.is_infinity:
            return self
        E = self.curve
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if _is_zero(y1 + y2):
                return E.infinity()
            num = 3 * x1 * x1 + 2 * E.a2 * x1 + E.a4
            lam = num / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - E.a2 - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return CurvePoint(E, x3, y3)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return self + (-other)

    def __rmul__(self, n: int) -> "CurvePoint":
        if n < 0:
            return (-n) * (-self)
        result = self.curve.infinity()
        base = self
        while n:
            if n & 1:
                result = result + base
            base = base + base
            n >>= 1
        return result

    def promote(self, curve: WeierstrassCurve) -> "CurvePoint":
        """The same point viewed on the promoted curve."""
        if self.is_infinity:
            return curve.infinity()
        field = curve.field
        assert field is not None
        conv = lambda c: c if isinstance(c, QuadElem) else field(Fraction(c))
        return CurvePoint(curve, conv(self.x), conv(self.y))

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"

    __repr__ = __str__


def point_order(P: CurvePoint, bound: int = 18) -> Optional[int]:
    """Exact order of P when it is torsion of order <= bound, else None.

    Over quadratic fields torsion orders never exceed 18, so None means
    infinite order in that setting.
    """
    if P.is_infinity:
        return 1
    Q = P
    for n in range(2, bound + 1):
        Q = Q + P
        if Q.is_infinity:
            return n
    return None


def quadratic_twist(E: WeierstrassCurve, d: int) -> WeierstrassCurve:
    """The d-quadratic twist: y^2 = x^3 + d*a2 x^2 + d^2*a4 x + d^3*a6."""
    label = f"{E.label}^({d})" if E.label else ""
    return WeierstrassCurve(
        d * E.a2, d * d * E.a4, d * d * d * E.a6, E.field, label
    )


def halve_point(Q: CurvePoint, field: QuadField) -> set[CurvePoint]:
    """All R with coordinates in Q(sqrt(D)) such that 2R = Q.

    The x-coordinates of halves are the roots of the degree-4 polynomial
    4*f(x)*(x - xQ) - psi_3(x) coming from the duplication map; y is
    recovered by the field square test, and every result is verified by
    doubling.
    """
    E = Q.curve.promote(field) if Q.curve.field is None else Q.curve
    if E.field != field:
        raise ValueError("field mismatch")
    Qp = Q.promote(E) if Q.curve.field is None else Q
    f4 = E.rhs_poly() * 4
    psi3 = E.division_poly(3)
    if Qp.is_infinity:
        # 2R = O exactly for 2-torsion and O
        results = {E.infinity()}
        for x0 in roots_in_quadfield(E.rhs_poly(), field):
            results.add(CurvePoint(E, x0, field.zero))
        return results
    halving = f4 * Poly([-Qp.x, field.one], field) - psi3
    results: set[CurvePoint] = set()
    for x0 in roots_in_quadfield(halving, field):
        y2 = E.rhs(x0)
        y0 = is_square_quad(y2) if isinstance(y2, QuadElem) else None
        if y0 is None:
            continue
        for cand in {CurvePoint(E, x0, y0), CurvePoint(E, x0, -y0)}:
            if 2 * cand == Qp:
                results.add(cand)
    return results


# -- torsion ------------------------------------------------------------------

class TorsionData:
    """Full torsion subgroup over a quadratic field."""

    def __init__(self, structure: tuple[int, ...], points: list[CurvePoint]):
        self.structure = structure  # invariant factors, e.g. (2, 4) for Z/2 x Z/4
        self.points = points

    @property
    def order(self) -> int:
        return math.prod(self.structure) if self.structure else 1

    def structure_string(self) -> str:
        if not self.structure:
            return "trivial"
        return " x ".join(f"Z/{m}" for m in self.structure)

    def __repr__(self) -> str:
        return f"TorsionData({self.structure_string()}, {len(self.points)} points)"


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def trace_of_frobenius(E: WeierstrassCurve, p: int) -> int:
    """a_p = p + 1 - #E(F_p) by exhaustive point count; p odd, good reduction."""
    if p == 2 or not is_probable_prime_cached(p):
        raise ValueError("p must be an odd prime")
    Er = E.rational_model()
    den = math.lcm(
        Er.a2.denominator, Er.a4.denominator, Er.a6.denominator
    )
    disc = Er.discriminant()
    if den % p == 0 or (disc.numerator % p == 0):
        raise BadReductionError(f"bad reduction at {p}")
    inv = pow(den % p, -1, p)
    a2 = int(Er.a2 * den) * inv % p
    a4 = int(Er.a4 * den) * inv % p
    a6 = int(Er.a6 * den) * inv % p
    count = 0
    for x in range(p):
        fx = ((x + a2) * x + a4) * x + a6
        count += 1 + _legendre(fx, p)
    return p + 1 - (count + 1)


_prime_cache: dict[int, bool] = {}


def is_probable_prime_cached(p: int) -> bool:
    from .rationals import is_probable_prime

    if p not in _prime_cache:
        _prime_cache[p] = is_probable_prime(p)
    return _prime_cache[p]


def _torsion_order_bound(E: WeierstrassCurve, field: QuadField, primes_used: int = 8) -> int:
    """gcd of reduced group orders: a multiple of #E(Q(sqrt(D)))_tors."""
    Er = E.rational_model()
    bound = 0
    used = 0
    p = 3
    disc = Er.discriminant()
    den = math.lcm(Er.a2.denominator, Er.a4.denominator, Er.a6.denominator)
    while used < primes_used and p < 500:
        p += 2
        if not is_probable_prime_cached(p):
            continue
        if den % p == 0 or disc.numerator % p == 0 or field.D % p == 0:
            continue
        ap = trace_of_frobenius(Er, p)
        chi = _legendre(field.D % p, p)
        if chi == 1:
            n = p + 1 - ap
        else:
            n = p * p + 1 - (ap * ap - 2 * p)
        bound = math.gcd(bound, n)
        used += 1
        if bound == 1:
            break
    return bound


def _points_of_x_poly(E: WeierstrassCurve, poly: Poly, field: QuadField) -> set[CurvePoint]:
    pts: set[CurvePoint] = set()
    for x0 in roots_in_quadfield(poly, field):
        y2 = E.rhs(x0)
        y0 = is_square_quad(y2)
        if y0 is None:
            continue
        pts.add(CurvePoint(E, x0, y0))
        pts.add(CurvePoint(E, x0, -y0))
    return pts


def compute_torsion(E: WeierstrassCurve, field: QuadField) -> TorsionData:
    """The full torsion subgroup of E over Q(sqrt(D)).

    Strategy: bound the order by reduction mod good primes, then find the
    2-power part by iterated halving, the 3- and 9-parts via the division
    polynomial and trisection, the 5- and 7-parts via division polynomials,
    and assemble the product.
    """
    Ef = E.promote(field) if E.field is None else E
    bound = _torsion_order_bound(E, field)
    if bound == 0:
        raise RuntimeError("could not bound the torsion order")
    # 2-power part by halving ladder
    two_part: set[CurvePoint] = {Ef.infinity()}
    frontier: set[CurvePoint] = {Ef.infinity()}
    level = 1
    while level * 2 <= _p_part(bound, 2):
        new_pts: set[CurvePoint] = set()
        for Q in frontier:
            new_pts |= halve_point(Q, field)
        new_pts -= two_part
        if not new_pts:
            break
        two_part |= new_pts
        frontier = new_pts
        level *= 2
    points = set(two_part)
    # odd parts
    for q in (3, 5, 7, 11, 13):
        if bound % q:
            continue
        qpts = _points_of_x_poly(Ef, Ef.division_poly(q), field)
        if q == 3 and _p_part(bound, 3) >= 9 and qpts:
            # trisection: solve x(3R) = x_T for each 3-torsion T
            f4 = Ef.rhs_poly() * 4
            P3, P4 = Ef.division_poly(3), Ef.division_poly(4)
            nine: set[CurvePoint] = set()
            for T in set(qpts):
                tri = Poly([-T.x, field.one], field) * P3 * P3 - f4 * P4
                for x0 in roots_in_quadfield(tri, field):
                    y2 = Ef.rhs(x0)
                    y0 = is_square_quad(y2)
                    if y0 is None:
                        continue
                    for cand in (CurvePoint(Ef, x0, y0), CurvePoint(Ef, x0, -y0)):
                        if 3 * cand == T:
                            nine.add(cand)
            qpts |= nine
        if qpts:
            new_points = set()
            for P in points:
                for Q in qpts | {Ef.infinity()}:
                    new_points.add(P + Q)
            points = new_points
    pts = sorted(
        points,
        key=lambda P: (
            0 if P.is_infinity else 1,
            () if P.is_infinity else _coord_key(P.x) + _coord_key(P.y),
        ),
    )
    # group structure from element orders
    n = len(pts)
    orders = [point_order(P, bound=2 * n + 2) for P in pts]
    assert all(o is not None for o in orders), "non-torsion point in torsion set"
    mx = max(orders)  # type: ignore[type-var]
    if mx == n:
        structure = (n,) if n > 1 else ()
    else:
        assert n % mx == 0
        structure = (n // mx, mx)
    return TorsionData(structure, pts)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _coord_key(c: Coord):
    if isinstance(c, QuadElem):
        return (c.u, c.v)
    return (c, Fraction(0))


# -- rational isomorphism search ----------------------------------------------

def find_rational_isomorphism(
    E1: WeierstrassCurve, E2: WeierstrassCurve
) -> Optional[tuple[Fraction, Fraction]]:
    """Admissible change of variables x = u^2 x' + r, y = u^3 y' taking E1 to E2.

    Returns (u, r) or None.  Both curves must be rational models with
    a1 = a3 = 0 (true throughout this project), so s = t = 0 suffices.
    """
    A = E1.rational_model()
    B = E2.rational_model()
    if A.j_invariant() != B.j_invariant():
        return None
    c4a, c6a = A.c_invariants()
    c4b, c6b = B.c_invariants()
    candidates: list[Fraction] = []
    if c4b != 0 and c6b != 0:
        u2 = (c6a * c4b) / (c6b * c4a)
        candidates.append(u2)
    elif c4b != 0:  # j = 0 is impossible here; c6 = 0 means j = 1728
        q = Fraction(c4a, c4b)
        r = is_square_rational(q)
        if r is not None:
            candidates += [r, -r]
    else:  # c4 = 0, j = 0: u^6 = c6a/c6b
        q = Fraction(c6a, c6b)
        for num in _rational_cube_root(q):
            candidates.append(num)
    for u2 in candidates:
        if u2 <= 0:
            continue
        u = is_square_rational(u2)
        if u is None:
            continue
        r = (u2 * B.a2 - A.a2) / 3
        ok = (
            A.a4 + 2 * A.a2 * r + 3 * r * r == u2 * u2 * B.a4
            and A.a6 + A.a4 * r + A.a2 * r * r + r**3 == u2**3 * B.a6
        )
        if ok:
            return (u, r)
    return None


def _rational_cube_root(q: Fraction) -> list[Fraction]:
    def icbrt(n: int) -> Optional[int]:
        if n < 0:
            r = icbrt(-n)
            return None if r is None else -r
        r = round(n ** (1 / 3)) if n < 1 << 50 else int(n ** (1 / 3))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**3 == n:
                return cand
        return None

    a = icbrt(q.numerator)
    b = icbrt(q.denominator)
    if a is None or b is None:
        return []
    return [Fraction(a, b)]


# -- quartic models -------------------------------------------------------------

class QuarticCurve:
    """y^2 = q4 x^4 + q3 x^3 + q2 x^2 + q1 x + q0 with a marked point, y != 0."""

    __slots__ = ("q4", "q3", "q2", "q1", "q0", "base_point", "field", "label")

    def __init__(self, coeffs, base_point, field: Optional[QuadField] = None, label: str = ""):
        if field is None:
            self.q4, self.q3, self.q2, self.q1, self.q0 = (Fraction(c) for c in coeffs)
            bx, by = (Fraction(c) for c in base_point)
        else:
            conv = lambda c: c if isinstance(c, QuadElem) else field(Fraction(c))
            self.q4, self.q3, self.q2, self.q1, self.q0 = (conv(c) for c in coeffs)
            bx, by = (conv(c) for c in base_point)
        self.field = field
        self.label = label
        if _is_zero(by):
            raise ValueError("base point must have y != 0")
        self.base_point = (bx, by)
        if not self.contains(bx, by):
            raise ValueError("base point not on quartic")
        rhs = self.rhs_poly()
        if not rhs.gcd(rhs.derivative()).degree == 0:
            raise ValueError("quartic has repeated roots")

    def rhs_poly(self) -> Poly:
        return Poly([self.q0, self.q1, self.q2, self.q3, self.q4], self.field)

    def rhs(self, x: Coord) -> Coord:
        return self.rhs_poly()(x)

    def contains(self, x: Coord, y: Coord) -> bool:
        return _is_zero(y * y - self.rhs(x))

    def promote(self, field: QuadField) -> "QuarticCurve":
        if self.field is not None:
            if self.field != field:
                raise ValueError("already over another field")
            return self
        return QuarticCurve(
            [field(c) for c in (self.q4, self.q3, self.q2, self.q1, self.q0)],
            (field(self.base_point[0]), field(self.base_point[1])),
            field,
            self.label,
        )

    def __str__(self) -> str:
        tag = f" [{self.label}]" if self.label else ""
        return (
            f"y^2 = ({self.q4})x^4 + ({self.q3})x^3 + ({self.q2})x^2 "
            f"+ ({self.q1})x + ({self.q0}){tag}"
        )

    __repr__ = __str__


def quartic_to_weierstrass(
    C: QuarticCurve,
) -> tuple[WeierstrassCurve, Callable, Callable]:
    """Birational maps between a quartic model and a Weierstrass cubic.

    Returns (E, phi, psi): phi maps quartic points to E, psi inverts it.
    Convention for the exceptional set: the base point maps to O; its
    hyperelliptic conjugate maps to the finite point computed by series
    expansion; psi(O) is the base point; points of E with y = 0 and the
    leftover partner of the conjugate map to the quartic's points at
    infinity and raise ExceptionalPointError.
    """
    x0, y0 = C.base_point
    # translate the base point to x = 0
    q = C.rhs_poly().compose(Poly([x0, 1], C.field))
    e, d, c, b, a = q.coeffs[0], q[1], q[2], q[3], q[4]
    del e  # q(0) = y0^2 by construction
    qq = y0
    one = Fraction(1) if C.field is None else C.field.one

    # Washington-style model y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
    a1 = d / qq
    a2 = c - d * d / (4 * qq * qq)
    a3 = 2 * qq * b
    a4 = -4 * qq * qq * a
    a6 = a2 * a4
    # complete the square: Y = y + (a1 x + a3)/2
    A2 = a2 + a1 * a1 / 4
    A4 = a4 + a1 * a3 / 2
    A6 = a6 + a3 * a3 / 4
    E = WeierstrassCurve(A2, A4, A6, C.field, label=f"W({C.label})" if C.label else "")

    # series images of the conjugate base point (u = 0, v = -q)
    x_conj = d * d / (4 * qq * qq) - c
    y_conj_w = -2 * qq * b + d * c / qq - d**3 / (4 * qq**3)
    y_conj = y_conj_w + (a1 * x_conj + a3) / 2

    def phi(P: tuple[Coord, Coord]) -> CurvePoint:
        px, py = P
        if not C.contains(px, py):
            raise ValueError("point not on quartic")
        u = px - x0
        v = py
        if _is_zero(u):
            if v == qq:
                return E.infinity()
            return E.point(x_conj, y_conj)
        xw = (2 * qq * (v + qq) + d * u) / (u * u)
        yw = (
            4 * qq * qq * (v + qq) + 2 * qq * (d * u + c * u * u)
        ) / (u**3) - d * d / (2 * qq * u)
        Y = yw + (a1 * xw + a3) / 2
        return E.point(xw, Y)

    def psi(P: CurvePoint) -> tuple[Coord, Coord]:
        if P.curve != E:
            raise ValueError("point not on the derived Weierstrass model")
        if P.is_infinity:
            return (x0, y0)
        X, Y = P.x, P.y
        yw = Y - (a1 * X + a3) / 2
        if _is_zero(yw):
            raise ExceptionalPointError(
                "point maps to infinity on the quartic model"
            )
        u = (4 * qq * qq * (X + c) - d * d) / (2 * qq * yw)
        if _is_zero(u):
            if P.x == x_conj and P.y == y_conj:
                return (x0, -y0)
            raise ExceptionalPointError(
                "point maps to infinity on the quartic model"
            )
        v = (X * u * u - d * u - 2 * qq * qq) / (2 * qq)
        res = (u + x0, v)
        assert C.contains(*res)
        return res

    return E, phi, psi
