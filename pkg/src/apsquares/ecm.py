"""Lenstra ECM for the stubborn cofactors the rho step leaves behind.

Montgomery-form curves with Suyama parametrization, stage 1 plus a
standard baby-step/giant-step stage 2.  Arithmetic runs on gmpy2.mpz when
available (APSQUARES_PURE_INT=1 forces plain Python ints); the algorithm
and the deterministic sigma schedule are identical on both paths, so
results do not depend on the backend.
"""

from __future__ import annotations

import math
import os
from typing import Optional

try:  # pragma: no cover - exercised via the env flag in tests
    import gmpy2

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    gmpy2 = None
    _HAVE_GMPY2 = False

__all__ = ["ecm_find_factor", "mpz_backend_name"]


def _use_gmpy2() -> bool:
    return _HAVE_GMPY2 and os.environ.get("APSQUARES_PURE_INT", "") == ""


def mpz_backend_name() -> str:
    return "gmpy2" if _use_gmpy2() else "int"


def _primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, b in enumerate(sieve) if b]


_PRIME_CACHE: dict[int, list[int]] = {}


def _primes(n: int) -> list[int]:
    if n not in _PRIME_CACHE:
        _PRIME_CACHE[n] = _primes_upto(n)
    return _PRIME_CACHE[n]


def _x_double(X1, Z1, a24, n):
    s = (X1 + Z1) % n
    d = (X1 - Z1) % n
    s2 = s * s % n
    d2 = d * d % n
    t = s2 - d2
    X2 = s2 * d2 % n
    Z2 = t * (d2 + a24 * t) % n
    return X2, Z2

def _x_add(X1, Z1, X2, Z2, Xd, Zd, n):
    # X(P+Q) from P, Q, P-Q
    a = (X1 - Z1) * (X2 + Z2) % n
    b = (X1 + Z1) * (X2 - Z2) % n
    X3 = Zd * pow(a + b, 2, n) % n
    Z3 = Xd * pow(a - b, 2, n) % n
    return X3, Z3


def _x_mul(k: int, X, Z, a24, n):
    """Montgomery ladder for x-only scalar multiplication."""
    if k == 1:
        return X, Z
    R0 = (X, Z)
    R1 = _x_double(X, Z, a24, n)
    for bit in bin(k)[3:]:
        if bit == "1":
            R0 = _x_add(R1[0], R1[1], R0[0], R0[1], X, Z, n)
            R1 = _x_double(R1[0], R1[1], a24, n)
        else:
            R1 = _x_add(R0[0], R0[1], R1[0], R1[1], X, Z, n)
            R0 = _x_double(R0[0], R0[1], a24, n)
    return R0


def _curve_from_sigma(sigma: int, n):
    """Suyama parametrization; returns (a24, X, Z) or a factor of n."""
    u = (sigma * sigma - 5) % n
    v = (4 * sigma) % n
    X = pow(u, 3, n)
    Z = pow(v, 3, n)
    den = (4 * X * v) % n
    g = math.gcd(int(den), int(n))
    if g not in (1, n):
        return g, None, None
    if g == n:
        return None, None, None
    num = pow((v - u) % n, 3, n) * ((3 * u + v) % n) % n
    a24 = num * pow(den, -1, n) % n  # (A+2)/4
    return a24, X, Z


def _stage1(n, a24, X, Z, B1: int):
    for p in _primes(B1):
        pe = p
        while pe * p <= B1:
            pe *= p
        X, Z = _x_mul(pe, X, Z, a24, n)
    return X, Z


def _stage2(n, a24, X, Z, B1: int, B2: int) -> Optional[int]:
    """Standard continuation: detect a prime B1 < q <= B2 dividing the order."""
    d = 210
    # baby steps: j*P for j coprime to d, j < d/2
    js = [j for j in range(1, d // 2) if math.gcd(j, d) == 1]
    baby = {}
    for j in js:
        baby[j] = _x_mul(j, X, Z, a24, n)
    Pd = _x_mul(d, X, Z, a24, n)
    # giant steps: k*d*P for k covering (B1, B2]
    k0 = B1 // d
    if k0 < 2:
        k0 = 2
    acc = 1 if not _use_gmpy2() else gmpy2.mpz(1)
    giant = _x_mul(k0 * d, X, Z, a24, n)
    prev = _x_mul((k0 - 1) * d, X, Z, a24, n)
    primes = _primes(B2)
    idx = 0
    while idx < len(primes) and primes[idx] <= B1:
        idx += 1
    prime_set = set(primes[idx:])
    k = k0
    while (k - 1) * d <= B2:
        Xg, Zg = giant
        for j in js:
            q1 = k * d - j
            q2 = k * d + j
            if q1 in prime_set or q2 in prime_set:
                Xb, Zb = baby[j]
                acc = acc * ((Xg * Zb - Xb * Zg) % n) % n
        giant, prev = (
            _x_add(giant[0], giant[1], Pd[0], Pd[1], prev[0], prev[1], n),
            giant,
        )
        k += 1
    g = math.gcd(int(acc), int(n))
    if g not in (1, n):
        return g
    return None


_B1_SCHEDULE = (
    (2_000, 25),
    (11_000, 90),
    (50_000, 300),
    (250_000, 700),
    (1_000_000, 1200),
)


def ecm_find_factor(
    n: int,
    max_seconds: Optional[float] = None,
    max_b1: int = 1_000_000,
) -> Optional[int]:
    """A nontrivial factor of the odd composite n, or None if the effort
    schedule is exhausted.  Deterministic curve schedule seeded from n."""
    import time

    t0 = time.time()
    wrap = gmpy2.mpz if _use_gmpy2() else int
    N = wrap(n)
    sigma = 6 + (n % 997)
    for B1, curves in _B1_SCHEDULE:
        if B1 > max_b1:
            break
        B2 = 60 * B1
        for _ in range(curves):
            sigma += 1
            if max_seconds is not None and time.time() - t0 > max_seconds:
                return None
            res = _curve_from_sigma(wrap(sigma), N)
            if res[1] is None:
                if res[0] is not None:
                    return int(res[0])
                continue
            a24, X, Z = res
            X, Z = _stage1(N, a24, X, Z, B1)
            g = math.gcd(int(Z), n)
            if g == n:
                continue
            if g != 1:
                return g
            g = _stage2(N, a24, X, Z, B1, B2)
            if g is not None:
                return g
    return None
