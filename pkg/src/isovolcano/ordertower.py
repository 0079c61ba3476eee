"""Towers of imaginary quadratic orders O_0 > O_1 > ... of conductor c*ell^d.

Provides the closed-form classification of the kernels kappa_d (class-group
side) and lambda_d (unit-group side) together with brute-force oracles for
both, the class-group surjections between levels, genus-theory 2-torsion,
splitting tests for the kernel sequence, rank laws, and an explicit upper
bound for class numbers of fundamental discriminants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

from .arith import kronecker, valuation, xgcd
from .errors import (
    CapExceeded,
    ConductorNotCoprime,
    DiscriminantMismatch,
    HypothesisViolation,
    NoCoprimeRepresentation,
    NotADiscriminant,
)
from .groups import (
    AbelianGroupDescriptor,
    group_structure,
    invariant_factors,
    power,
)
from .quadforms import (
    ClassGroup,
    QuadForm,
    class_group,
    compose,
    discriminant_factor,
    is_fundamental,
    principal_form,
    reduce_form,
    validate_discriminant,
)

UNIT_RING_CAP = 2 * 10**7

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"


def ramification(D_K: int, ell: int) -> str:
    if not is_fundamental(D_K):
        raise NotADiscriminant(f"{D_K} is not fundamental")
    chi = kronecker(D_K, ell)
    return {1: SPLIT, -1: INERT, 0: RAMIFIED}[chi]


@dataclass(frozen=True)
class OrderTower:
    """Tower over the order of conductor c in the field of discriminant D_K."""

    D_K: int
    c: int
    ell: int

    def __post_init__(self):
        if not is_fundamental(self.D_K):
            raise NotADiscriminant(f"{self.D_K} is not fundamental")
        if self.c < 1:
            raise NotADiscriminant("conductor must be positive")
        if gcd(self.c, self.ell) != 1:
            raise ConductorNotCoprime(f"gcd({self.c}, {self.ell}) != 1")

    def disc(self, d: int) -> int:
        return self.ell ** (2 * d) * self.c * self.c * self.D_K

    @property
    def ramification(self) -> str:
        return ramification(self.D_K, self.ell)


@dataclass(frozen=True)
class SurjectionDescriptor:
    source: AbelianGroupDescriptor
    target: AbelianGroupDescriptor
    kernel: AbelianGroupDescriptor
    map_kind: str  # "canonical-quotient" | "canonical x identity" | "explicit"


def _descriptor(*cyclic_orders: int) -> AbelianGroupDescriptor:
    return AbelianGroupDescriptor(invariant_factors([n for n in cyclic_orders if n > 1]))


def _unit_adjusted(tower: OrderTower) -> bool:
    """Towers where the extra roots of unity of Z[i] / Z[zeta_3] absorb a
    factor of ell from the kernel (conductor-1 towers over -4 and -3)."""
    return tower.c == 1 and (tower.D_K, tower.ell) in {(-3, 3), (-4, 2)}


def kappa_divisors(tower: OrderTower, d: int) -> AbelianGroupDescriptor:
    """Closed-form structure of kappa_d = ker(S_d -> S_0)."""
    if d < 0:
        raise HypothesisViolation("depth must be >= 0")
    ell, D_K = tower.ell, tower.D_K
    if d == 0:
        return _descriptor()
    if _unit_adjusted(tower):
        return _descriptor(ell ** (d - 1))
    ram = tower.ramification
    if ram in (SPLIT, INERT):
        if ell >= 3:
            return _descriptor(ell ** (d - 1))
        # ell = 2: trivial at depth 1, Z/2^{d-2} x Z/2 beyond
        if d == 1:
            return _descriptor()
        return _descriptor(2 ** (d - 2), 2)
    # ramified
    if ell == 2 and D_K % 16 == 8:
        return _descriptor(2**d)
    if ell == 2 and D_K % 16 == 12:
        return _descriptor(2 ** (d - 1), 2)
    if ell == 3 and D_K % 9 == 3:
        return _descriptor(3**d)
    if ell == 3 and D_K % 9 == 6:
        return _descriptor(3 ** (d - 1), 3)
    if ell >= 5:
        return _descriptor(ell**d)
    raise HypothesisViolation(f"no classification case for {tower}, d={d}")


def kappa_structure(tower: OrderTower, d: int) -> tuple[AbelianGroupDescriptor, SurjectionDescriptor]:
    """Closed-form kappa_d plus the descriptor of pi'_d: kappa_{d+1} -> kappa_d."""
    kd = kappa_divisors(tower, d)
    kd1 = kappa_divisors(tower, d + 1)
    ram = tower.ramification
    if ram in (SPLIT, INERT) and tower.ell == 2 and not _unit_adjusted(tower):
        kind = "canonical x identity"
    elif ram == RAMIFIED and not _unit_adjusted(tower) and (
        (tower.ell == 2 and tower.D_K % 16 == 12)
        or (tower.ell == 3 and tower.D_K % 9 == 6)
    ):
        kind = "canonical x identity"
    else:
        kind = "canonical-quotient"
    kernel_order = kd1.order // kd.order
    kernel = _descriptor(kernel_order)
    return kd, SurjectionDescriptor(kd1, kd, kernel, kind)


def _coprime_representation(f: QuadForm, m: int) -> QuadForm:
    """Equivalent form whose leading coefficient is coprime to m."""
    if gcd(f.a, m) == 1:
        return f
    bound = 20
    while bound <= 2**10:
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if gcd(x, y) != 1:
                    continue
                if gcd(f(x, y), m) != 1:
                    continue
                # extend (x, y) to a unimodular matrix
                g, u, v = xgcd(x, y)
                assert g == 1
                return f.transform(x, y, -v, u)
        bound *= 2
    raise NoCoprimeRepresentation(f"no value of {f} coprime to {m} found")


def surject_class(f: QuadForm, m: int, D: int) -> QuadForm:
    """Image of the class of f (disc m^2 D) under Cl(O_{m^2 D}) -> Cl(O_D)."""
    validate_discriminant(D)
    if f.disc != m * m * D:
        raise DiscriminantMismatch(f"{f.disc} != {m}^2 * {D}")
    if m == 1:
        return reduce_form(f)
    f = _coprime_representation(f, m)
    g, s, t = xgcd(m, f.a)
    assert g == 1
    B = s * f.b - t * f.a * D
    assert (B * B - D) % (4 * f.a) == 0
    return reduce_form(QuadForm(f.a, B, (B * B - D) // (4 * f.a)))


def _sylow_part(n: int, ell: int) -> int:
    return ell ** valuation(n, ell) if n > 1 else 1


def tower_kernel_elements(tower: OrderTower, d: int, cap: int | None = None) -> list[QuadForm]:
    """Full kernel of Cl(O_d) -> Cl(O_0) as reduced forms of disc D_d."""
    kwargs = {} if cap is None else {"cap": cap}
    G_d = class_group(tower.disc(d), **kwargs)
    identity0 = principal_form(tower.disc(0))
    m = tower.ell**d
    return [f for f in G_d.forms if surject_class(f, m, tower.disc(0)) == identity0]


def kappa_bruteforce(tower: OrderTower, d: int, cap: int | None = None) -> AbelianGroupDescriptor:
    """Structure of ker(S_d -> S_0), computed from element tables."""
    if d == 0:
        return _descriptor()
    kernel = tower_kernel_elements(tower, d, cap)
    G_d = class_group(tower.disc(d), **({} if cap is None else {"cap": cap}))
    # restrict to the ell-Sylow part of the kernel
    ell_part = _sylow_part(len(kernel), tower.ell)
    cofactor = len(kernel) // ell_part
    identity = principal_form(tower.disc(d))
    sylow = sorted({power(f, cofactor, compose, identity) for f in kernel})
    assert len(sylow) == ell_part
    return group_structure(sylow, compose, identity)


# ---------------------------------------------------------------------------
# lambda_d: unit groups of O_K / ell^d O_K


def lambda_structure(D_K: int, ell: int, d: int) -> AbelianGroupDescriptor:
    """Closed-form cokernel of (Z/ell^d)^x -> (O_K/ell^d O_K)^x.

    For ell = 2 inert the prime-to-2 part Z/3 is carried along so the result
    is the full cokernel of the scalar units, matching the brute-force oracle.
    """
    if d < 1:
        raise HypothesisViolation("lambda_d is defined for d >= 1")
    if not is_fundamental(D_K):
        raise NotADiscriminant(f"{D_K} is not fundamental")
    ram = ramification(D_K, ell)
    if ram == SPLIT:
        if ell == 2:
            if d == 1:
                return _descriptor()
            return _descriptor(2 ** (d - 2), 2)
        return _descriptor(ell ** (d - 1), ell - 1)
    if ram == INERT:
        if ell == 2:
            if d == 1:
                return _descriptor(3)
            return _descriptor(2 ** (d - 2), 2, 3)
        return _descriptor(ell ** (d - 1), ell + 1)
    # ramified
    if ell == 2 and D_K % 16 == 8:
        return _descriptor(2**d)
    if ell == 2 and D_K % 16 == 12:
        return _descriptor(2 ** (d - 1), 2)
    if ell == 3 and D_K % 9 == 3:
        return _descriptor(3**d)
    if ell == 3 and D_K % 9 == 6:
        return _descriptor(3 ** (d - 1), 3)
    return _descriptor(ell**d)


def unit_group_bruteforce(
    D_K: int, ell: int, d: int, cap: int = UNIT_RING_CAP
) -> tuple[AbelianGroupDescriptor, AbelianGroupDescriptor]:
    """Unit group of O_K/ell^d O_K and the cokernel of its scalar subgroup.

    Elements are modelled as x + y*omega with omega = (D_K + sqrt(D_K))/2,
    so omega^2 = D_K*omega - (D_K^2 - D_K)/4, with x, y mod ell^d.
    """
    if not is_fundamental(D_K):
        raise NotADiscriminant(f"{D_K} is not fundamental")
    if d < 1:
        raise HypothesisViolation("need d >= 1")
    n = ell**d
    if n * n > cap:
        raise CapExceeded(f"ring size {n * n} exceeds cap {cap}")
    tr = D_K % n  # omega + conjugate = D_K
    nm = ((D_K * D_K - D_K) // 4) % n  # omega * conjugate

    def mul(u, v):
        x1, y1 = u
        x2, y2 = v
        # (x1 + y1 w)(x2 + y2 w) with w^2 = tr*w - nm
        return ((x1 * x2 - y1 * y2 * nm) % n, (x1 * y2 + y1 * x2 + y1 * y2 * tr) % n)

    units = [
        (x, y)
        for x in range(n)
        for y in range(n)
        if gcd((x * x + x * y * tr + y * y * nm) % n, n) == 1
    ]
    one = (1 % n, 0)
    full = group_structure(units, mul, one)
    scalars = [(x, 0) for x in range(n) if gcd(x, n) == 1]
    # cokernel: quotient by the scalar subgroup via coset representatives
    scalar_set = set(scalars)
    rep_of: dict = {}
    reps = []
    for u in units:
        if u in rep_of:
            continue
        reps.append(u)
        for s in scalar_set:
            rep_of[mul(u, s)] = u

    def qmul(u, v):
        return rep_of[mul(u, v)]

    coker = group_structure(reps, qmul, rep_of[one])
    return full, coker


# ---------------------------------------------------------------------------
# genus theory, splitting, bounds, ranks


def two_torsion_card(D: int) -> int:
    """|Cl(D)[2]| = 2^tau from the prime factorization of D."""
    validate_discriminant(D)
    from .arith import factorize

    eta = sum(1 for p in factorize(-D) if p != 2)
    if D % 4 == 1:
        tau = eta - 1
    else:
        y = D // 4
        if y % 4 == 1:
            tau = eta - 1
        elif y % 4 in (2, 3):
            tau = eta
        elif y % 8 == 4:
            tau = eta
        else:  # y = 0 mod 8
            tau = eta + 1
    return 2**tau


def splitting_check(tower: OrderTower, d: int, cap: int | None = None) -> bool:
    """True iff S_d is isomorphic to kappa_d x S_0 as abstract groups."""
    if d == 0:
        return True
    kwargs = {} if cap is None else {"cap": cap}
    S_d = class_group(tower.disc(d), **kwargs).sylow_structure(tower.ell)
    S_0 = class_group(tower.disc(0), **kwargs).sylow_structure(tower.ell)
    kappa = kappa_bruteforce(tower, d, cap)
    combined = invariant_factors(list(kappa.divisors) + list(S_0.divisors))
    return combined == S_d.divisors


def class_number_bound(D_K: int) -> float:
    """Upper bound for h(D_K), valid for fundamental D_K < -4."""
    if not is_fundamental(D_K):
        raise NotADiscriminant(f"{D_K} is not fundamental")
    if D_K >= -4:
        raise HypothesisViolation("bound requires D_K < -4")
    if D_K % 8 == 1:
        C = 2
    elif D_K % 4 == 0:
        C = 4
    else:  # D_K = 5 mod 8
        C = 6
    aD = -D_K
    return math.sqrt(aD) * (math.log(aD) + 4.2) / (C * math.pi)


@dataclass(frozen=True)
class RankLaw:
    """Constraints on rk(S_d) - rk(S_0) along a tower.

    exact maps depths to a forced offset; steps lists (d, allowed increments
    over the previous constrained depth); stable_from gives the depth beyond
    which the rank equals the rank at that depth.
    """

    exact: dict[int, int]
    steps: tuple[tuple[int, tuple[int, ...]], ...]
    stable_from: int

    def check(self, ranks: list[int]) -> bool:
        """ranks[d] = rk(S_d); list must reach at least stable_from."""
        if len(ranks) <= self.stable_from:
            raise HypothesisViolation("not enough depths to check the law")
        for d, off in self.exact.items():
            if d < len(ranks) and ranks[d] != ranks[0] + off:
                return False
        for d, allowed in self.steps:
            if d < len(ranks) and ranks[d] - ranks[d - 1] not in allowed:
                return False
        base = self.stable_from
        for d in range(base + 1, len(ranks)):
            if ranks[d] != ranks[base]:
                return False
        return True


def rank_prediction(D_K: int, ell: int) -> RankLaw:
    """Rank law for the tower over D_K at ell (any conductor coprime to ell)."""
    ram = ramification(D_K, ell)
    if ell == 2:
        if ram in (SPLIT, INERT):
            return RankLaw(exact={1: 0, 2: 1, 3: 2}, steps=(), stable_from=3)
        if D_K % 16 == 8:
            return RankLaw(exact={1: 1}, steps=(), stable_from=1)
        return RankLaw(exact={1: 0, 2: 1}, steps=(), stable_from=2)
    if ram in (SPLIT, INERT):
        return RankLaw(exact={1: 0}, steps=((2, (0, 1)),), stable_from=2)
    if ell == 3 and D_K % 9 == 6:
        return RankLaw(exact={}, steps=((1, (0, 1)), (2, (0, 1))), stable_from=2)
    # ell >= 5 ramified, or ell = 3 with D_K = 3 mod 9
    return RankLaw(exact={}, steps=((1, (0, 1)),), stable_from=1)


def tower_ranks(tower: OrderTower, dmax: int, cap: int | None = None) -> list[int]:
    kwargs = {} if cap is None else {"cap": cap}
    return [
        class_group(tower.disc(d), **kwargs).rank(tower.ell) for d in range(dmax + 1)
    ]
