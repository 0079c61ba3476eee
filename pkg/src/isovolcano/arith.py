"""Elementary number-theory helpers shared by the other modules."""

from __future__ import annotations

from functools import lru_cache

import gmpy2
import numpy as np
from sympy.ntheory import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import NotPrime


def kronecker(a: int, n: int) -> int:
    return int(gmpy2.kronecker(a, n))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    g, s, t = gmpy2.gcdext(a, b)
    return int(g), int(s), int(t)


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def require_prime(n: int) -> None:
    if not is_prime(n):
        raise NotPrime(f"{n} is not prime")


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; intended for desk-scale n."""
    if n <= 0:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    """Largest v with p^v | n, for n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    n = abs(n)
    while n % p == 0:
        v += 1
        n //= p
    return v


def squarefree_part(n: int) -> tuple[int, int]:
    """Write |n| = c^2 * m with m squarefree; return (c, sign(n) * m)."""
    if n == 0:
        raise ValueError("n must be nonzero")
    sign = -1 if n < 0 else 1
    c, m = 1, 1
    for p, e in factorize(abs(n)).items():
        c *= p ** (e // 2)
        if e % 2:
            m *= p
    return c, sign * m


@lru_cache(maxsize=None)
def sqrts_mod(a: int, m: int) -> tuple[int, ...]:
    """All x in [0, m) with x^2 = a (mod m), sorted."""
    roots = sqrt_mod(a, m, all_roots=True)
    if not roots:
        return ()
    return tuple(sorted(int(r) for r in roots))
