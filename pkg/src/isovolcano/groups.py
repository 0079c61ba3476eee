"""Structure of finite abelian groups given as element tables.

Everything here is brute force on purpose: groups are handed over as a full
list of elements plus a binary operation, and structure is recovered by
successive maximal-order generators inside each Sylow subgroup. Quadratic
desk scale (a few thousand elements) is the intended regime.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Callable, Hashable, Sequence

from .arith import factorize


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    """Invariant factor decomposition Z/d1 x ... x Z/dt with d1 | d2 | ... | dt.

    Divisors are ascending, each > 1; the trivial group has an empty tuple.
    Generators, when present, realize the factors in the same order.
    """

    divisors: tuple[int, ...]
    generators: tuple | None = None

    def __post_init__(self):
        ds = self.divisors
        if any(d < 2 for d in ds):
            raise ValueError("divisors must all be > 1")
        if any(ds[i + 1] % ds[i] for i in range(len(ds) - 1)):
            raise ValueError("divisors must form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.divisors) if self.divisors else 1

    @property
    def exponent(self) -> int:
        return self.divisors[-1] if self.divisors else 1

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def rank_at(self, ell: int) -> int:
        """Rank of the ell-Sylow subgroup."""
        return sum(1 for d in self.divisors if d % ell == 0)

    def same_shape(self, other: "AbelianGroupDescriptor") -> bool:
        return self.divisors == other.divisors

    def __str__(self) -> str:
        if not self.divisors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.divisors)


def invariant_factors(cyclic_orders: Sequence[int]) -> tuple[int, ...]:
    """Canonical ascending divisor chain of a product of cyclic groups."""
    per_prime: dict[int, list[int]] = {}
    for n in cyclic_orders:
        if n < 1:
            raise ValueError("cyclic orders must be >= 1")
        for p, e in factorize(n).items():
            per_prime.setdefault(p, []).append(e)
    t = max((len(v) for v in per_prime.values()), default=0)
    out = []
    for i in range(t):
        d = 1
        for p, es in per_prime.items():
            es_sorted = sorted(es, reverse=True)
            if i < len(es_sorted):
                d *= p ** es_sorted[i]
        out.append(d)
    return tuple(sorted(out))


def descriptor_product(
    a: AbelianGroupDescriptor, b: AbelianGroupDescriptor
) -> AbelianGroupDescriptor:
    return AbelianGroupDescriptor(invariant_factors(list(a.divisors) + list(b.divisors)))


def power(g, e: int, op: Callable, identity):
    """g composed with itself e times, by square and multiply."""
    if e < 0:
        raise ValueError("negative exponents not supported here")
    acc = identity
    base = g
    while e:
        if e & 1:
            acc = op(acc, base)
        base = op(base, base)
        e >>= 1
    return acc


def element_order(g, op: Callable, identity, group_order: int) -> int:
    """Order of g given a multiple of it (the group order)."""
    n = group_order
    for p in factorize(group_order):
        while n % p == 0 and power(g, n // p, op, identity) == identity:
            n //= p
    return n


def _p_group_basis(elements: list, op, identity, q: int) -> list[tuple[Hashable, int]]:
    """Basis (generator, order) pairs of an abelian q-group, orders descending."""
    size = len(elements)
    orders = {g: element_order(g, op, identity, size) for g in elements}
    gens: list[tuple[Hashable, int]] = []
    subgroup = {identity}
    while len(subgroup) < size:
        # order of the image in the quotient by the current subgroup
        best, best_m = None, 1
        for g in elements:
            if orders[g] <= best_m or g in subgroup:
                continue
            m, y = 1, g
            while y not in subgroup:
                m *= q
                y = power(g, m, op, identity)
            if m > best_m:
                best, best_m = g, m
        assert best is not None
        # adjust by a subgroup element so the order drops to the quotient order
        lifted = None
        for z in subgroup:
            cand = op(best, z)
            if element_order(cand, op, identity, size) == best_m:
                lifted = cand
                break
        assert lifted is not None, "greedy subgroup failed to be a direct summand"
        gens.append((lifted, best_m))
        new = set()
        for s in subgroup:
            y = s
            for _ in range(best_m):
                new.add(y)
                y = op(y, lifted)
        subgroup = new
    return gens


def group_structure(
    elements: Sequence, op: Callable, identity
) -> AbelianGroupDescriptor:
    """Invariant factors with realizing generators, by Sylow decomposition."""
    h = len(elements)
    if h == 1:
        return AbelianGroupDescriptor(())
    bases: dict[int, list[tuple[Hashable, int]]] = {}
    for q, e in factorize(h).items():
        cofactor = h // q**e
        sylow = {power(g, cofactor, op, identity) for g in elements}
        assert len(sylow) == q**e, "Sylow projection has wrong size"
        bases[q] = _p_group_basis(sorted(sylow), op, identity, q)
    t = max(len(v) for v in bases.values())
    divisors, generators = [], []
    for i in range(t):
        d, g = 1, identity
        for q, gens in bases.items():
            if i < len(gens):
                d *= gens[i][1]
                g = op(g, gens[i][0])
        divisors.append(d)
        generators.append(g)
    order_check = prod(divisors)
    assert order_check == h
    return AbelianGroupDescriptor(
        tuple(reversed(divisors)), tuple(reversed(generators))
    )


def torsion_rank(elements: Sequence, op: Callable, identity, ell: int) -> int:
    """Rank of the ell-Sylow subgroup, via the size of the ell-torsion."""
    count = sum(1 for g in elements if power(g, ell, op, identity) == identity)
    rank = 0
    while ell**rank < count:
        rank += 1
    assert ell**rank == count, "ell-torsion size is not a power of ell"
    return rank


def subgroup_structure(
    elements: Sequence, op: Callable, identity
) -> AbelianGroupDescriptor:
    """Alias kept for call sites that operate on kernels and images."""
    return group_structure(elements, op, identity)


def quotient_table(
    elements: Sequence, subgroup: Sequence, op: Callable, identity
) -> tuple[list, Callable, Hashable]:
    """Quotient group as coset representatives with an induced operation."""
    sub = set(subgroup)
    rep_of: dict = {}
    reps: list = []
    for g in sorted(elements):
        if g in rep_of:
            continue
        reps.append(g)
        coset = set()
        for s in sub:
            coset.add(op(g, s))
        for x in coset:
            rep_of[x] = g
    def qop(x, y):
        return rep_of[op(x, y)]
    return reps, qop, rep_of[identity]


def cyclic_powers(g, op: Callable, identity) -> list:
    """All powers of g in order: identity, g, g^2, ..."""
    out = [identity]
    y = g
    while y != identity:
        out.append(y)
        y = op(y, g)
    return out


def generated_subgroup(gens: Sequence, op: Callable, identity) -> set:
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = op(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def exponent_of(elements: Sequence, op: Callable, identity, group_order: int) -> int:
    e = 1
    for g in elements:
        o = element_order(g, op, identity, group_order)
        e = e * o // gcd(e, o)
    return e


def is_power_of(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def sylow_elements(
    elements: Sequence, op: Callable, identity, ell: int, group_order: int
) -> list:
    """The ell-Sylow subgroup as the image of the prime-to-ell power map."""
    e = 0
    n = group_order
    while n % ell == 0:
        e += 1
        n //= ell
    cofactor = group_order // ell**e
    return sorted({power(g, cofactor, op, identity) for g in elements})


def all_products(gens_with_orders: Sequence[tuple], op, identity) -> set:
    out = {identity}
    for g, n in gens_with_orders:
        out = {op(x, power(g, i, op, identity)) for x in out for i in range(n)}
    return out


def element_orders(elements: Sequence, op, identity, group_order: int) -> dict:
    return {g: element_order(g, op, identity, group_order) for g in elements}


def iter_exponent_vectors(orders: Sequence[int]):
    return itertools.product(*(range(n) for n in orders))
