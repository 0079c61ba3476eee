"""Finding k-explosive primes for a given class-group tower.

A split prime p is k-explosive for (D_0, ell, d, k) when the Frobenius
class of p has order dividing k in Cl(O_d) but not in Cl(O_{d+1}). Such
primes are exactly where the requested volcano shows up over F_{p^k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import kronecker, primes_up_to
from .errors import NotSplit, PrimeEqualsEll
from .quadforms import class_group, discriminant_factor, prime_form
from .solvability import XReport, tower_disc, x_bruteforce

DEFAULT_P_MAX = 10**5


def frobenius_order(p: int, D: int, cap: int | None = None) -> int:
    """Order of the class of a prime above p in Cl(D); p must split."""
    if kronecker(D, p) != 1:
        raise NotSplit(f"{p} does not split in the order of discriminant {D}")
    kwargs = {} if cap is None else {"cap": cap}
    G = class_group(D, **kwargs)
    return G.order(prime_form(D, p))


def is_k_explosive(p: int, D_0: int, ell: int, d: int, k: int, cap: int | None = None) -> bool:
    if p == ell:
        raise PrimeEqualsEll(f"p = ell = {p} is excluded")
    cond, D_K = discriminant_factor(D_0)
    if gcd(p, 2 * ell * cond * D_K) != 1:
        raise NotSplit(f"{p} divides 2*ell*conductor*D_K")
    D_d = tower_disc(D_0, ell, d)
    D_next = tower_disc(D_0, ell, d + 1)
    if kronecker(D_d, p) != 1:
        raise NotSplit(f"{p} does not split in the order of discriminant {D_d}")
    if k % frobenius_order(p, D_d, cap) != 0:
        return False
    return k % frobenius_order(p, D_next, cap) != 0


@dataclass(frozen=True)
class SearchResult:
    primes: tuple[int, ...]
    p_max: int
    checked: int
    empirical_density: Fraction
    report: XReport

    @property
    def predicted_density(self) -> Fraction:
        return self.report.density


def search(
    D_0: int,
    ell: int,
    d: int,
    k: int,
    p_max: int = DEFAULT_P_MAX,
    cap: int | None = None,
) -> SearchResult:
    """All k-explosive primes up to p_max, with empirical vs predicted density."""
    report = x_bruteforce(D_0, ell, d, k, cap)
    cond, D_K = discriminant_factor(D_0)
    D_d = tower_disc(D_0, ell, d)
    D_next = tower_disc(D_0, ell, d + 1)
    kwargs = {} if cap is None else {"cap": cap}
    G_d = class_group(D_d, **kwargs)
    G_next = class_group(D_next, **kwargs)
    hits = []
    primes = primes_up_to(p_max)
    for p in primes:
        p = int(p)
        if gcd(p, 2 * ell * cond * D_K) != 1 or kronecker(D_d, p) != 1:
            continue
        if k % G_d.order(prime_form(D_d, p)) != 0:
            continue
        if kronecker(D_next, p) == 1 and k % G_next.order(prime_form(D_next, p)) == 0:
            continue
        hits.append(p)
    count = len(primes)
    return SearchResult(
        tuple(hits), p_max, count, Fraction(len(hits), count), report
    )
