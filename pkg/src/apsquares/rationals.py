"""Arbitrary-precision integer and rational primitives.

Everything here is exact: integers are Python ints, rationals are
``fractions.Fraction`` (always stored reduced, positive denominator), so
structural equality coincides with mathematical equality.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "FactorError",
    "PrimeFactorization",
    "factor_integer",
    "is_probable_prime",
    "is_square_rational",
    "rational_roots",
    "register_factor_hints",
    "squarefree_part_rational",
]

TRIAL_BOUND = 10**6

# Deterministic Miller-Rabin witness set, valid below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_BOUND = 3_317_044_064_679_887_385_961_981
# Extra fixed bases used above the proven bound (strong probable-prime test).
_MR_EXTRA_BASES = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class FactorError(ArithmeticError):
    """A composite cofactor resisted factoring within the configured budget."""

    def __init__(self, message: str, cofactor: int):
        super().__init__(message)
        self.cofactor = cofactor


def is_probable_prime(n: int) -> bool:
    """Primality test: deterministic below 3.317e24, strong probable-prime above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_PROVEN_BOUND else _MR_BASES + _MR_EXTRA_BASES
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, max_iter: int, seed: int) -> Optional[int]:
    """Brent's cycle variant of Pollard rho; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    for _attempt in range(30):
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        it = 0
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
                it += steps
                if it > max_iter:
                    return None
            r *= 2
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def _ecm_enabled() -> bool:
    return os.environ.get("APSQUARES_NO_ECM", "") == ""


def _ecm_factor(n: int, max_seconds: Optional[float]) -> Optional[int]:
    if not _ecm_enabled():
        return None
    from .ecm import ecm_find_factor

    return ecm_find_factor(n, max_seconds=max_seconds)


# Known factorizations (verified on use) for integers whose factors exceed
# the online search budget; populated from the embedded data store.
_FACTOR_HINTS: dict[int, tuple[int, ...]] = {}


def register_factor_hints(hints: dict[int, tuple[int, ...]]) -> None:
    """Install verified prime-splitting hints for specific integers.

    Each entry maps n to a tuple of pairwise >1 factors with product n;
    the factors are re-verified (product identity and primality of the
    pieces actually used) whenever a hint is consumed.
    """
    for n, parts in hints.items():
        if math.prod(parts) != n:
            raise ValueError(f"factor hint for {n} does not multiply back")
        _FACTOR_HINTS[int(n)] = tuple(int(p) for p in parts)


def _hint_split(n: int) -> Optional[tuple[int, ...]]:
    parts = _FACTOR_HINTS.get(n)
    if parts is None:
        return None
    if math.prod(parts) != n:  # defensive; register checked already
        return None
    return parts


@dataclass(frozen=True)
class PrimeFactorization:
    """Signed prime factorization: sign * prod(p^e)."""

    sign: int
    factors: dict  # prime -> positive exponent

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors.items():
            v *= p**e
        return v

    def squarefree_part(self) -> int:
        m = self.sign
        for p, e in self.factors.items():
            if e % 2:
                m *= p
        return m

    def square_root_of_square_part(self) -> int:
        d = 1
        for p, e in self.factors.items():
            d *= p ** (e // 2)
        return d


def factor_integer(
    n: int,
    rho_budget: int = 4 * 10**6,
    ecm_seconds: Optional[float] = 600.0,
) -> PrimeFactorization:
    """Factor a nonzero integer: trial division to 10^6, then Brent rho,
    then ECM for whatever resists.

    Registered factor hints short-circuit the search for specific known
    integers (their pieces still pass the primality test here).  Set
    APSQUARES_NO_ECM=1 to disable the ECM stage; a FactorError carries the
    offending cofactor when every stage gives up.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    factors: dict = {}

    def add(p: int, e: int = 1) -> None:
        factors[p] = factors.get(p, 0) + e

    stack = []
    hinted = _hint_split(n)
    if hinted:
        stack = list(hinted)
        n = 1
    for p in (2, 3, 5):
        while n % p == 0:
            add(p)
            n //= p
    # wheel over residues coprime to 30
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while p <= TRIAL_BOUND and p * p <= n:
        while n % p == 0:
            add(p)
            n //= p
        p += wheel[w]
        w = (w + 1) % 8
    if n > 1:
        stack.append(n)
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            add(m)
            continue
        hinted = _hint_split(m)
        if hinted and len(hinted) > 1:
            stack += list(hinted)
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent_rho(m, rho_budget, seed=0x5EED ^ (m % (1 << 61)))
        if d is None or d == m:
            d = _ecm_factor(m, ecm_seconds)
        if d is None or d in (1, m):
            raise FactorError(
                f"composite cofactor with no factor found within budget "
                f"(rho_budget={rho_budget}): {m}",
                m,
            )
        stack += [d, m // d]
    return PrimeFactorization(sign, dict(sorted(factors.items())))


def is_square_rational(q: Fraction | int) -> Optional[Fraction]:
    """Return the nonnegative square root of q if q is a rational square."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra = math.isqrt(a)
    if ra * ra != a:
        return None
    rb = math.isqrt(b)
    if rb * rb != b:
        return None
    return Fraction(ra, rb)


def squarefree_part_rational(q: Fraction | int) -> tuple[int, Fraction]:
    """Write a nonzero rational q as m * s^2 with m a squarefree integer.

    sign(m) = sign(q); s > 0.  For q = a/b the squarefree part of q equals
    that of a*b, which is what gets factored.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("squarefree part of 0 is undefined")
    fac = factor_integer(q.numerator * q.denominator)
    m = fac.squarefree_part()
    s2 = q / m
    s = is_square_rational(s2)
    assert s is not None, "internal error: q/m must be a square"
    return m, s


def rational_roots(coeffs: Sequence[Fraction | int]) -> set[Fraction]:
    """All rational roots of the polynomial sum(coeffs[i] * x^i), coeffs[-1] != 0.

    Uses the rational-root theorem on the primitive integer model, so the
    returned set is complete.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    roots: set[Fraction] = set()
    # strip x^k factor
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        cs = cs[k:]
    if len(cs) == 1:
        return roots
    den = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    a0, an = ints[0], ints[-1]
    p_divs = _divisors(abs(a0))
    q_divs = _divisors(abs(an))
    for p in p_divs:
        for q in q_divs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.add(cand)
    return roots


def _divisors(n: int) -> list[int]:
    if n == 0:
        return []
    fac = factor_integer(n)
    divs = [1]
    for p, e in fac.factors.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)
