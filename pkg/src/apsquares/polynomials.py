"""Dense polynomial algebra over Q and over Q(sqrt(D)).

Supports evaluation, exact Euclidean arithmetic, resultants, complete root
extraction inside a fixed quadratic field, rational factorization
(Zassenhaus: factor mod p, Hensel lift, subset recombination), and the
two-quadric elimination used by the curve-point bookkeeping.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .rationals import factor_integer, is_probable_prime, rational_roots
from .quadfield import QuadElem, QuadField, is_square_quad

__all__ = [
    "Poly",
    "RecombinationLimitError",
    "DegenerateSystemError",
    "factor_rational_poly",
    "resultant",
    "roots_in_quadfield",
    "solve_two_quadric_system",
]

Scalar = Union[int, Fraction, QuadElem]


class RecombinationLimitError(RuntimeError):
    """Zassenhaus recombination would exceed the configured subset bound."""


class DegenerateSystemError(RuntimeError):
    """Elimination degenerated (identically vanishing eliminant)."""


class Poly:
    """Dense polynomial, coefficients lowest-degree first.

    ``field`` is None for rational coefficients, otherwise the QuadField
    whose elements the coefficients are.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence[Scalar], field: Optional[QuadField] = None):
        cs = list(coeffs)
        if field is None:
            cs = [Fraction(c) for c in cs]
            zero = Fraction(0)
        else:
            cs = [c if isinstance(c, QuadElem) else field(Fraction(c)) for c in cs]
            zero = field.zero
        while cs and cs[-1] == zero:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    # -- constructors ----------------------------------------------------
    @staticmethod
    def rational(coeffs: Sequence[Union[int, Fraction]]) -> "Poly":
        return Poly(coeffs, None)

    @staticmethod
    def over(field: QuadField, coeffs: Sequence[Scalar]) -> "Poly":
        return Poly(coeffs, field)

    @staticmethod
    def x(field: Optional[QuadField] = None) -> "Poly":
        return Poly([0, 1], field)

    def promote(self, field: QuadField) -> "Poly":
        if self.field is not None:
            if self.field != field:
                raise ValueError("polynomial already tagged with another field")
            return self
        return Poly([field(c) for c in self.coeffs], field)

    # -- basics -----------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def zero_scalar(self) -> Scalar:
        return Fraction(0) if self.field is None else self.field.zero

    @property
    def lc(self) -> Scalar:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero_scalar

    def _check(self, other: "Poly") -> None:
        if (self.field is None) != (other.field is None) or (
            self.field is not None and self.field != other.field
        ):
            raise ValueError("polynomials over different coefficient domains")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.coeffs, None if self.field is None else self.field.D))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)], self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] - other[i] for i in range(n)], self.field)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.field)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            if self.is_zero() or other.is_zero():
                return Poly([], self.field)
            out = [self.zero_scalar] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(out, self.field)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Poly":
        return Poly([a * c for a in self.coeffs], self.field)

    def __pow__(self, n: int) -> "Poly":
        result = Poly([1], self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.zero_scalar] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        dlc = other.lc
        inv = (Fraction(1) / dlc) if self.field is None else dlc.inverse()
        while len(r) - 1 >= other.degree and any(c != self.zero_scalar for c in r):
            while r and r[-1] == self.zero_scalar:
                r.pop()
            if len(r) - 1 < other.degree:
                break
            k = len(r) - 1 - other.degree
            factor = r[-1] * inv
            q[k] = factor
            for i, c in enumerate(other.coeffs):
                r[k + i] = r[k + i] - factor * c
        return Poly(q, self.field), Poly(r, self.field)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division was not exact")
        return q

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = (Fraction(1) / self.lc) if self.field is None else self.lc.inverse()
        return self.scale(inv)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.field)

    def __call__(self, x):
        """Horner evaluation; x may be rational, QuadElem or TowerElem."""
        if self.is_zero():
            return self.zero_scalar if not isinstance(x, QuadElem) else x.field.zero
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x)) by Horner over polynomials."""
        acc = Poly([], self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c], self.field)
        return acc

    def reverse(self) -> "Poly":
        return Poly(list(reversed(self.coeffs)), self.field)

    # -- field-coefficient helpers ------------------------------------------
    def conjugate(self) -> "Poly":
        if self.field is None:
            return self
        return Poly([c.conjugate() for c in self.coeffs], self.field)

    def norm_to_rational(self) -> "Poly":
        """p * conj(p) has rational coefficients; return it over Q."""
        if self.field is None:
            return self * self
        prod = self * self.conjugate()
        coeffs = []
        for c in prod.coeffs:
            if c.v != 0:
                raise AssertionError("norm polynomial must be rational")
            coeffs.append(c.u)
        return Poly.rational(coeffs)

    def rational_coeff_view(self) -> Optional["Poly"]:
        """The same polynomial over Q when every coefficient is rational."""
        if self.field is None:
            return self
        if all(c.is_rational() for c in self.coeffs):
            return Poly.rational([c.u for c in self.coeffs])
        return None

    def rational_roots_set(self) -> set[Fraction]:
        view = self.rational_coeff_view()
        if view is None:
            raise ValueError("polynomial does not have rational coefficients")
        return rational_roots(view.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.zero_scalar:
                continue
            cs = str(c)
            if self.field is not None and ("+" in cs[1:] or "-" in cs[1:] or "sqrt" in cs):
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{cs}*x")
            else:
                parts.append(f"{cs}*x^{i}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


# -- resultants -------------------------------------------------------------

def resultant(p: Poly, q: Poly):
    """Resultant of two nonzero polynomials over the same coefficient field."""
    p._check(q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant requires nonzero polynomials")
    one = Fraction(1) if p.field is None else p.field.one

    def rec(f: Poly, g: Poly):
        if g.degree == 0:
            return g.lc ** f.degree if f.degree >= 0 else one
        if f.degree < g.degree:
            sign = -1 if (f.degree * g.degree) % 2 else 1
            return rec(g, f) * sign
        r = f % g
        if r.is_zero():
            return one * 0
        sign = -1 if (f.degree * g.degree) % 2 else 1
        return sign * (g.lc ** (f.degree - r.degree)) * rec(g, r)

    if p.degree == 0:
        return p.lc ** q.degree
    return rec(p, q)


# -- GF(p) dense polynomial kernel (for Zassenhaus) ---------------------------

def _gf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gf_trim(out)


def _gf_divmod(a, b, p):
    a = a[:]
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        k = len(a) - len(b)
        f = a[-1] * inv % p
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] = (a[k + i] - f * c) % p
        a.pop()
    return _gf_trim(q), _gf_trim(a)


def _gf_gcd(a, b, p):
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _gf_pow_mod(a, e, mod, p):
    result = [1]
    base = _gf_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = _gf_divmod(_gf_mul(result, base, p), mod, p)[1]
        base = _gf_divmod(_gf_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _gf_factor_squarefree(f: list[int], p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus on a squarefree monic f over GF(p), p odd."""
    n = len(f) - 1
    if n == 1:
        return [f]
    # distinct-degree splitting
    pieces: list[tuple[list[int], int]] = []
    h = [0, 1]
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _gf_pow_mod(h, p, rest, p)
        hx = h[:] + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        g = _gf_gcd(_gf_trim(hx), rest, p)
        if len(g) - 1 > 0:
            pieces.append((g, d))
            rest = _gf_divmod(rest, g, p)[0]
            h = _gf_divmod(h, rest, p)[1]
    if len(rest) - 1 > 0:
        pieces.append((rest, len(rest) - 1))
    out: list[list[int]] = []
    for piece, deg in pieces:
        out.extend(_gf_equal_degree(piece, deg, p, rng))
    return out


def _gf_equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)] + [1]
        g = _gf_gcd(a, f, p)
        if len(g) - 1 not in (0, n):
            break
        b = _gf_pow_mod(a, (p**d - 1) // 2, f, p)
        b = b[:]
        if b:
            b[0] = (b[0] - 1) % p
        else:
            b = [p - 1]
        g = _gf_gcd(b, f, p)
        if len(g) - 1 not in (0, n):
            break
    rest = _gf_divmod(f, g, p)[0]
    return _gf_equal_degree(g, d, p, rng) + _gf_equal_degree(rest, d, p, rng)


# -- Zassenhaus ---------------------------------------------------------------

def _integer_primitive(p: Poly) -> tuple[Fraction, list[int]]:
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
        g = -g
    return Fraction(g, den), ints


def _yun_squarefree(p: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition p = prod(f_i^i), f_i squarefree and coprime.

    Uses the gcd chain w_i = prod of distinct factors of multiplicity >= i;
    plenty fast at the degrees this project meets (char 0 throughout).
    """
    w_chain: list[Poly] = []
    q = p.monic()
    while q.degree > 0:
        g = q.gcd(q.derivative())
        if g.degree == 0:
            w_chain.append(q.monic())
            break
        w_chain.append(q.exact_div(g).monic())
        q = g.monic()
    result: list[tuple[Poly, int]] = []
    for i, cur in enumerate(w_chain):
        nxt = w_chain[i + 1] if i + 1 < len(w_chain) else None
        only_here = cur.exact_div(nxt) if nxt is not None else cur
        if only_here.degree > 0:
            result.append((only_here.monic(), i + 1))
    return result


def _choose_prime(ints: list[int], rng: random.Random) -> tuple[int, list[int]]:
    n = len(ints) - 1
    attempts = 0
    best: Optional[tuple[int, list[int]]] = None
    while attempts < 200:
        p = rng.randrange(1 << 28, 1 << 29) | 1
        if not is_probable_prime(p):
            continue
        attempts += 1
        if ints[-1] % p == 0:
            continue
        fp = [c % p for c in ints]
        inv = pow(fp[-1], p - 2, p)
        fp = [c * inv % p for c in fp]
        dp = _gf_trim([(i * c) % p for i, c in enumerate(fp)][1:])
        if len(_gf_gcd(fp[:], dp, p)) - 1 != 0:
            continue  # not squarefree mod p
        facs = _gf_factor_squarefree(fp, p, rng)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)  # type: ignore[assignment]
        if best is not None and len(best[1]) <= max(2, n // 8):
            break
        if attempts >= 4 and best is not None:
            break
    if best is None:
        raise RuntimeError("no good prime found for factorization")
    p, facs = best
    return p, facs  # type: ignore[return-value]


def _hensel_lift(ints: list[int], p: int, factors_mod_p: list[list[int]], target: int) -> tuple[int, list[list[int]]]:
    """Linear multifactor Hensel lifting of monic factors until p^k >= target."""
    lc = ints[-1]
    hs = [f[:] for f in factors_mod_p]
    # Bezout data over GF(p): t_i = (prod_{j!=i} h_j)^{-1} mod h_i
    ts = []
    for i, hi in enumerate(hs):
        prod = [lc % p]
        for j, hj in enumerate(hs):
            if j != i:
                prod = _gf_mul(prod, hj, p)
        prod = _gf_divmod(prod, hi, p)[1]
        # invert prod mod hi via extended Euclid in GF(p)[x]
        ts.append(_gf_inverse_mod(prod, hi, p))
    pk = p
    while pk < target:
        # error term e = (f - lc*prod hs)/p^k mod p
        prod = [lc]
        for h in hs:
            prod = _int_poly_mul(prod, h)
        diff = _int_poly_sub(ints, prod)
        e = [(c // pk) % p for c in diff]
        for i, hi in enumerate(hs):
            # delta_i = e * t_i mod (h_i, p), added at level p^k
            ei = _gf_divmod(
                _gf_mul(_gf_trim([c % p for c in e]), ts[i], p),
                [c % p for c in hi],
                p,
            )[1]
            for k2, c in enumerate(ei):
                hi[k2] = hi[k2] + pk * c
        pk *= p
    return pk, hs


def _gf_inverse_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    r0, r1 = mod[:], _gf_divmod(a, mod, p)[1]
    s0, s1 = [], [1]
    while r1:
        q, r2 = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r2
        s0, s1 = s1, _gf_trim(_int_mod_sub(s0, _gf_mul(q, s1, p), p))
    if len(r0) - 1 != 0:
        raise ArithmeticError("not invertible")
    inv = pow(r0[0], p - 2, p)
    return [c * inv % p for c in s0]


def _int_mod_sub(a, b, p):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]


def _int_poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _balanced(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


_RECOMBINATION_CAP = 24


def _factor_squarefree_rational(sq: Poly, rng: random.Random) -> list[Poly]:
    """Irreducible factors of a squarefree primitive rational polynomial."""
    _, ints = _integer_primitive(sq)
    n = len(ints) - 1
    if n <= 1:
        return [Poly.rational(ints).monic()]
    p, facs = _choose_prime(ints, rng)
    if len(facs) == 1:
        return [Poly.rational(ints).monic()]
    if len(facs) > _RECOMBINATION_CAP:
        raise RecombinationLimitError(
            f"{len(facs)} modular factors exceed recombination cap"
        )
    lc = ints[-1]
    norm2 = math.isqrt(sum(c * c for c in ints)) + 1
    bound = 2 * abs(lc) * (2**n) * norm2
    pk, lifted = _hensel_lift(ints, p, facs, 2 * bound)
    result: list[Poly] = []
    remaining = list(range(len(lifted)))
    current = ints
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in _subsets(remaining, size):
            cand = [lc]
            for i in subset:
                cand = _int_poly_mul(cand, lifted[i])
            cand = [_balanced(c, pk) for c in cand]
            g = math.gcd(*cand)
            cand = [c // g for c in cand]
            q, r = Poly.rational(current).divmod(Poly.rational(cand))
            if r.is_zero():
                result.append(Poly.rational(cand).monic())
                remaining = [i for i in remaining if i not in subset]
                _, current = _integer_primitive(q)
                lc = current[-1]
                found = True
                break
        if not found:
            size += 1
    if remaining:
        result.append(Poly.rational(current).monic())
    return result


def _subsets(items: list[int], size: int) -> Iterable[tuple[int, ...]]:
    import itertools

    return itertools.combinations(items, size)


def factor_rational_poly(p: Poly) -> tuple[Fraction, list[Poly]]:
    """Factor a rational polynomial into monic irreducible factors.

    Returns (constant, factors) with p = constant * prod(factors), each
    factor monic irreducible over Q, sorted deterministically.  Repeated
    factors appear with multiplicity.
    """
    view = p.rational_coeff_view()
    if view is None:
        raise ValueError("factor_rational_poly requires rational coefficients")
    if view.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(0xFAC70)
    constant = Fraction(view.lc)
    work = view.monic()
    factors: list[Poly] = []
    # strip x^k
    k = 0
    while work.coeffs[0] == 0 and work.degree > 0:
        work = Poly.rational(work.coeffs[1:])
        k += 1
    factors.extend([Poly.rational([0, 1])] * k)
    if work.degree >= 1:
        for sqfree, mult in _yun_squarefree(work):
            for irr in _factor_squarefree_rational(sqfree, rng):
                factors.extend([irr] * mult)
    factors.sort(key=lambda f: (f.degree, f.coeffs))
    return constant, factors


# -- roots in a quadratic field ----------------------------------------------

def roots_in_quadfield(p: Poly, field: QuadField) -> set[QuadElem]:
    """The complete set of roots of p lying in Q(sqrt(D)).

    Every root of p in the field has minimal polynomial of degree <= 2
    dividing norm(p) = p * conj(p) over Q, so factoring the norm and
    sieving linear/quadratic factors is complete; each candidate is
    verified by exact evaluation.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    pf = p.promote(field) if p.field is None else p
    if pf.field != field:
        raise ValueError("polynomial tagged with a different field")
    rat = p.rational_coeff_view()
    norm = rat if rat is not None else pf.norm_to_rational()
    _, factors = factor_rational_poly(norm)
    roots: set[QuadElem] = set()
    seen: set[tuple] = set()
    for f in factors:
        key = f.coeffs
        if key in seen:
            continue
        seen.add(key)
        if f.degree == 1:
            cand = field(-f.coeffs[0])
            if pf(cand).is_zero():
                roots.add(cand)
        elif f.degree == 2:
            b, c = f.coeffs[1], f.coeffs[0]
            disc = field(b * b - 4 * c)
            w = is_square_quad(disc)
            if w is None:
                continue
            for sgn in (1, -1):
                cand = (field(-b) + sgn * w) / field(2)
                if pf(cand).is_zero():
                    roots.add(cand)
    return roots


# -- the two-quadric system ---------------------------------------------------

def solve_two_quadric_system(
    P1: tuple[QuadElem, QuadElem],
    P2: tuple[QuadElem, QuadElem],
    compute_degrees: bool = True,
):
    """Solve, over the ambient Q(sqrt(D)), the system

        x1*(b1^2 + x1 + 8) - 2*b1*y1 - x2*(b2^2 + x2 + 4) + 2*b2*y2 + 16 = 0
        b1^2 - b2^2 - x1 + x2 - 4 = 0

    for (b1, b2), where P1 = (x1, y1) and P2 = (x2, y2).  Returns a dict with
    the verified in-field solution set, the eliminant polynomials, and (when
    the rational factorization succeeds) the multisets of minimal-polynomial
    degrees of the algebraic solutions.
    """
    x1, y1 = P1
    x2, y2 = P2
    F = x1.field
    c = x1 - x2 + 4  # b1^2 = b2^2 + c
    two = F(2)

    def eq1(b1: QuadElem, b2: QuadElem) -> QuadElem:
        return (
            x1 * (b1 * b1 + x1 + 8)
            - two * b1 * y1
            - x2 * (b2 * b2 + x2 + 4)
            + two * b2 * y2
            + 16
        )

    def eq2(b1: QuadElem, b2: QuadElem) -> QuadElem:
        return b1 * b1 - b2 * b2 - x1 + x2 - 4

    # After substituting b1^2 = b2^2 + c into eq1:
    #   B(b2) - 2*y1*b1 = 0, with B quadratic.
    B = Poly.over(
        F,
        [
            x1 * (c + x1 + 8) - x2 * (x2 + 4) + 16,
            two * y2,
            x1 - x2,
        ],
    )
    solutions: list[tuple[QuadElem, QuadElem]] = []
    if not y1.is_zero():
        # eliminant for b2: B(b2)^2 = 4*y1^2*(b2^2 + c)
        lhs = B * B
        rhs = Poly.over(F, [4 * y1 * y1 * c, F.zero, 4 * y1 * y1])
        elim2 = lhs - rhs
        if elim2.is_zero():
            raise DegenerateSystemError("b2-eliminant vanishes identically")
        for b2 in roots_in_quadfield(elim2, F):
            b1 = B(b2) / (two * y1)
            if eq1(b1, b2).is_zero() and eq2(b1, b2).is_zero():
                solutions.append((b1, b2))
    else:
        if B.is_zero():
            raise DegenerateSystemError("system degenerates for y1 = 0")
        elim2 = B
        for b2 in roots_in_quadfield(B, F):
            sq = b2 * b2 + c
            w = is_square_quad(sq)
            if w is None:
                continue
            for b1 in {w, -w}:
                if eq1(b1, b2).is_zero() and eq2(b1, b2).is_zero():
                    solutions.append((b1, b2))

    # symmetric eliminant for b1 (swap roles; b2^2 = b1^2 - c)
    Bp = Poly.over(
        F,
        [
            x1 * (x1 + 8) - x2 * (x2 + 4 - c) + 16,
            -two * y1,
            x1 - x2,
        ],
    )
    if not y2.is_zero():
        lhs = Bp * Bp
        rhs = Poly.over(F, [4 * y2 * y2 * (-c), F.zero, 4 * y2 * y2])
        elim1 = lhs - rhs
    else:
        elim1 = Bp
    if elim1.is_zero():
        raise DegenerateSystemError("b1-eliminant vanishes identically")

    degrees: Optional[tuple[list[int], list[int]]] = None
    if compute_degrees:
        degs = []
        for elim in (elim1, elim2):
            rat = elim.rational_coeff_view()
            norm = rat if rat is not None else elim.norm_to_rational()
            _, facs = factor_rational_poly(norm)
            degs.append(sorted({f.degree for f in facs if f.degree > 0}))
        degrees = (degs[0], degs[1])

    solutions.sort(key=lambda s: (s[0].sort_key(), s[1].sort_key()))
    return {
        "solutions": solutions,
        "eliminant_b1": elim1,
        "eliminant_b2": elim2,
        "degree_sets": degrees,
    }
