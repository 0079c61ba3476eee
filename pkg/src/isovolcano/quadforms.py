"""Primitive positive definite binary quadratic forms and their class groups.

Forms (a, b, c) of discriminant D = b^2 - 4ac < 0 are the computational
substrate for ideal classes of imaginary quadratic orders. Class groups are
realized by full enumeration of reduced forms, with Gauss reduction and
Dirichlet composition supplying the group law.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .arith import factorize, kronecker, sqrts_mod, xgcd
from .errors import (
    CapExceeded,
    ConductorNotCoprime,
    DiscriminantMismatch,
    NotADiscriminant,
    NotPrimitive,
    NotSplit,
)
from .groups import (
    AbelianGroupDescriptor,
    element_order,
    group_structure,
    power,
    sylow_elements,
    torsion_rank,
)

CLASS_GROUP_CAP = 10**7


def validate_discriminant(D: int) -> int:
    if D >= 0 or D % 4 not in (0, 1):
        raise NotADiscriminant(f"{D} is not a negative discriminant")
    return D


def is_fundamental(D: int) -> bool:
    validate_discriminant(D)
    c, _ = discriminant_factor(D)
    return c == 1


def discriminant_factor(D: int) -> tuple[int, int]:
    """Write D = c^2 * D_K with D_K fundamental; return (c, D_K)."""
    validate_discriminant(D)
    c = 1
    for p, e in factorize(-D).items():
        c *= p ** (e // 2)
    m0 = D // (c * c)  # squarefree kernel, negative
    if m0 % 4 == 1:
        return c, m0
    # m0 = 2 or 3 mod 4: the fundamental discriminant is 4*m0, and c is even
    # because D = c^2 * m0 = 0 or 1 mod 4 forces 4 | c^2
    return c // 2, 4 * m0


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise NotADiscriminant("forms must be positive definite (a > 0)")
        if self.disc >= 0:
            raise NotADiscriminant("forms must have negative discriminant")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise NotPrimitive(f"({self.a}, {self.b}, {self.c}) is not primitive")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (-a < b <= a <= c):
            return False
        return b >= 0 if a == c else True

    def transform(self, m11: int, m21: int, m12: int, m22: int) -> "QuadForm":
        """Action of the unimodular matrix with columns (m11,m21), (m12,m22)."""
        if m11 * m22 - m12 * m21 != 1:
            raise ValueError("matrix must have determinant 1")
        a, b, c = self.a, self.b, self.c
        a2 = self(m11, m21)
        c2 = self(m12, m22)
        b2 = 2 * (a * m11 * m12 + c * m21 * m22) + b * (m11 * m22 + m12 * m21)
        return QuadForm(a2, b2, c2)


def reduce_form(f: QuadForm) -> QuadForm:
    """Gauss reduction: |b| <= a <= c with b >= 0 on the boundary."""
    a, b, c = f.a, f.b, f.c
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            # normalize b into (-a, a]
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            c = c + (r * r - b * b) // (4 * a)
            b = r
            continue
        break
    if a == c and b < 0:
        b = -b
    return QuadForm(a, b, c)


def principal_form(D: int) -> QuadForm:
    validate_discriminant(D)
    b = D & 1
    return QuadForm(1, b, (b * b - D) // 4)


def inverse(f: QuadForm) -> QuadForm:
    return reduce_form(QuadForm(f.a, -f.b, f.c))


def _merge_congruence(r: int, M: int, coef: int, rhs: int, mod: int) -> tuple[int, int]:
    """Refine B = r (mod M) by the extra congruence coef*B = rhs (mod mod)."""
    # coef*(r + M*x) = rhs (mod mod)  =>  coef*M*x = rhs - coef*r (mod mod)
    t = (rhs - coef * r) % mod
    A = (coef * M) % mod
    g, s, _ = xgcd(A, mod)
    if t % g:
        raise ArithmeticError("inconsistent composition congruences")
    mod_g = mod // g
    x0 = (t // g) * s % mod_g
    return r + M * x0, M * mod_g


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Dirichlet composition of classes; result is reduced."""
    if f.disc != g.disc:
        raise DiscriminantMismatch(f"{f.disc} != {g.disc}")
    D = f.disc
    a1, b1 = f.a, f.b
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    e = gcd(gcd(a1, a2), s)
    A = a1 * a2 // (e * e)
    # B is determined mod 2A by three congruences
    r, M = _merge_congruence(0, 1, 1, b1, 2 * a1 // e)
    r, M = _merge_congruence(r, M, 1, b2, 2 * a2 // e)
    r, M = _merge_congruence(r, M, s, (D + b1 * b2) // 2, 2 * a1 * a2 // e)
    B = r % (2 * A)
    C = (B * B - D) // (4 * A)
    return reduce_form(QuadForm(A, B, C))


def form_pow(f: QuadForm, e: int) -> QuadForm:
    D = f.disc
    if e < 0:
        return form_pow(inverse(f), -e)
    return power(f, e, compose, principal_form(D))


def reduced_forms(D: int) -> list[QuadForm]:
    """All reduced primitive forms of discriminant D, sorted."""
    validate_discriminant(D)
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(D & 1, a + 1, 2):
            t = b * b - D
            if t % (4 * a):
                continue
            c = t // (4 * a)
            if c < a:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
            if 0 < b < a and a < c:
                out.append(QuadForm(a, -b, c))
    return sorted(out)


def class_number(D: int) -> int:
    """h(D) by direct count of reduced forms."""
    validate_discriminant(D)
    count = 0
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        a4 = 4 * a
        for b in range(D & 1, a + 1, 2):
            t = b * b - D
            if t % a4:
                continue
            c = t // a4
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            count += 2 if (0 < b < a and a < c) else 1
    return count


class ClassGroup:
    """Form class group of a negative discriminant, fully enumerated."""

    def __init__(self, D: int, cap: int = CLASS_GROUP_CAP):
        validate_discriminant(D)
        if -D > cap:
            raise CapExceeded(f"|D| = {-D} exceeds the enumeration cap {cap}")
        self.D = D
        self.forms = tuple(reduced_forms(D))
        self.h = len(self.forms)
        self.identity = principal_form(D)
        self._orders: dict[QuadForm, int] = {}
        self._structure: AbelianGroupDescriptor | None = None

    op = staticmethod(compose)

    def pow(self, f: QuadForm, e: int) -> QuadForm:
        return form_pow(f, e)

    def order(self, f: QuadForm) -> int:
        f = reduce_form(f)
        if f.disc != self.D:
            raise DiscriminantMismatch(f"{f.disc} != {self.D}")
        if f not in self._orders:
            self._orders[f] = element_order(f, compose, self.identity, self.h)
        return self._orders[f]

    def structure(self) -> AbelianGroupDescriptor:
        if self._structure is None:
            self._structure = group_structure(self.forms, compose, self.identity)
        return self._structure

    def sylow(self, ell: int) -> list[QuadForm]:
        return sylow_elements(self.forms, compose, self.identity, ell, self.h)

    def sylow_structure(self, ell: int) -> AbelianGroupDescriptor:
        return group_structure(self.sylow(ell), compose, self.identity)

    def rank(self, ell: int) -> int:
        return torsion_rank(self.forms, compose, self.identity, ell)

    def __iter__(self):
        return iter(self.forms)

    def __len__(self):
        return self.h


@lru_cache(maxsize=4096)
def _class_group_cached(D: int, cap: int) -> ClassGroup:
    return ClassGroup(D, cap)


def class_group(D: int, cap: int = CLASS_GROUP_CAP) -> ClassGroup:
    return _class_group_cached(D, cap)


def prime_form(D: int, q: int) -> QuadForm:
    """The reduced form above the prime q, for q not inert.

    Convention: b is the smallest nonnegative solution of b^2 = D (mod 4q)
    with b = D (mod 2); for ramified q the root is pinned explicitly.
    """
    validate_discriminant(D)
    chi = kronecker(D, q)
    if chi == -1:
        raise NotSplit(f"{q} is inert in discriminant {D}")
    if chi == 0:
        cond, _ = discriminant_factor(D)
        if cond % q == 0:
            raise ConductorNotCoprime(f"{q} divides the conductor of {D}")
        if q == 2:
            b = 0 if D % 8 == 0 else 2
        else:
            b = q
    else:
        roots = [r for r in sqrts_mod(D % (4 * q), 4 * q) if (r - D) % 2 == 0]
        if not roots:
            raise NotSplit(f"no square root of {D} mod {4 * q}")
        b = roots[0]
    c = (b * b - D) // (4 * q)
    return reduce_form(QuadForm(q, b, c))


def form_order(D: int, f: QuadForm, cap: int = CLASS_GROUP_CAP) -> int:
    """Order of the class of f in Cl(D)."""
    G = class_group(D, cap)
    return G.order(f)


def _unit_index(D_K: int, m: int) -> int:
    if m == 1:
        return 1
    if D_K == -3:
        return 3
    if D_K == -4:
        return 2
    return 1


def class_number_formula(D: int, cap: int = CLASS_GROUP_CAP) -> int:
    """h(D) from h(D_K) by the conductor formula.

    h(O_m) = h(D_K) * m / [O_K^* : O_m^*] * prod_{p | m} (1 - (D_K/p)/p)
    """
    validate_discriminant(D)
    m, D_K = discriminant_factor(D)
    h_K = class_number(D_K) if -D_K <= cap else None
    if h_K is None:
        raise CapExceeded(f"|D_K| = {-D_K} exceeds the cap {cap}")
    num = h_K * m
    den = _unit_index(D_K, m)
    for p in factorize(m):
        num *= p - kronecker(D_K, p)
        den *= p
    assert num % den == 0
    return num // den
