"""Existence of k-explosive primes for a requested volcano shape.

A volcano is specified by its crater type, cycle length n, isogeny degree
ell, and depth d. Whether primes p exist whose ell-isogeny graph over
F_{p^k} contains that volcano is controlled by the X-set of the class-group
tower: elements of Cl(O_{d+1}) of order not dividing k whose image in
Cl(O_d) has order dividing k. This module enumerates X by brute force,
evaluates the structural nonemptiness criteria, and dispatches the complete
verdict table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import kronecker, valuation
from .errors import CapExceeded, HypothesisViolation
from .groups import AbelianGroupDescriptor
from .quadforms import class_group, discriminant_factor, prime_form
from .ordertower import surject_class

CRATERS = ("I1", "R1", "S1", "R2", "S2", "Sn")

INFINITELY_MANY = "InfinitelyMany"
NONE_EXIST = "None"
CONDITIONAL_CL = "ConditionalCL"
UNKNOWN = "Unknown"

COMPATIBLE_SEARCH_CAP = 5000


@dataclass(frozen=True)
class VolcanoSpec:
    crater: str
    n: int
    ell: int
    d: int

    def __post_init__(self):
        if self.crater not in CRATERS:
            raise HypothesisViolation(f"unknown crater type {self.crater}")
        fixed_n = {"I1": 1, "R1": 1, "S1": 1, "R2": 2, "S2": 2}
        if self.crater in fixed_n and self.n != fixed_n[self.crater]:
            raise HypothesisViolation(f"{self.crater} forces n = {fixed_n[self.crater]}")
        if self.crater == "Sn" and self.n < 3:
            raise HypothesisViolation("Sn craters need n >= 3")
        if self.ell < 2:
            raise HypothesisViolation("ell must be a prime >= 2")
        if self.d < 0:
            raise HypothesisViolation("depth must be >= 0")

    @property
    def is_split_type(self) -> bool:
        return self.crater in ("S1", "S2", "Sn")


@dataclass(frozen=True)
class Verdict:
    verdict: str
    provenance: str
    witness_discriminant: int | None = None
    predicted_density: Fraction | float | None = None
    conditional_exponent: int | None = None


@dataclass(frozen=True)
class XReport:
    size: int
    h_next: int
    density: Fraction

    def __post_init__(self):
        assert 0 <= self.size <= self.h_next
        assert 0 <= self.density <= Fraction(1, 2)


def tower_disc(D_0: int, ell: int, d: int) -> int:
    return ell ** (2 * d) * D_0


def x_bruteforce(D_0: int, ell: int, d: int, k: int, cap: int | None = None) -> XReport:
    """Enumerate X = {s in Cl(O_{d+1}) : ord(s) does not divide k, ord(pi(s)) | k}."""
    kwargs = {} if cap is None else {"cap": cap}
    G_next = class_group(tower_disc(D_0, ell, d + 1), **kwargs)
    G_here = class_group(tower_disc(D_0, ell, d), **kwargs)
    count = 0
    for f in G_next.forms:
        if k % G_next.order(f) == 0:
            continue
        image = surject_class(f, ell, G_here.D)
        if k % G_here.order(image) == 0:
            count += 1
    return XReport(count, G_next.h, Fraction(count, 2 * G_next.h))


def x_nonempty_elementwise(elements, op, identity, pi, target_identity, k) -> bool:
    """ker(pi) meets the image of the k-th power map nontrivially."""
    from .groups import power

    k_image = {power(g, k, op, identity) for g in elements}
    return any(
        g != identity and pi(g) == target_identity and g in k_image for g in elements
    )


def _quotient_card(desc: AbelianGroupDescriptor, ell: int, r: int) -> int:
    """|G / ell^r G| from the invariant factors of G."""
    out = 1
    for dv in desc.divisors:
        out *= ell ** min(r, valuation(dv, ell) if dv % ell == 0 else 0)
    return out


def x_nonempty_structural(
    source: AbelianGroupDescriptor,
    target: AbelianGroupDescriptor,
    ell: int,
    k: int,
) -> bool:
    """Nonemptiness of X from invariant factors alone.

    Requires the kernel of source -> target to be cyclic of order ell; then
    X is nonempty iff |G/ell^r G| = |H/ell^r H| with r the ell-valuation of k.
    """
    if source.order != ell * target.order:
        raise HypothesisViolation(
            f"kernel must be cyclic of order {ell}; orders {source.order}, {target.order}"
        )
    r = valuation(k, ell) if k % ell == 0 else 0
    return _quotient_card(source, ell, r) == _quotient_card(target, ell, r)


def x_nonempty_structural_tower(
    D_0: int, ell: int, d: int, k: int, cap: int | None = None
) -> bool:
    """Structural criterion applied to the Sylow tower over D_0."""
    kwargs = {} if cap is None else {"cap": cap}
    S_next = class_group(tower_disc(D_0, ell, d + 1), **kwargs).sylow_structure(ell)
    S_here = class_group(tower_disc(D_0, ell, d), **kwargs).sylow_structure(ell)
    return x_nonempty_structural(S_next, S_here, ell, k)


# ---------------------------------------------------------------------------
# compatible orders


def _is_discriminant(D: int) -> bool:
    return D < 0 and D % 4 in (0, 1)


def compatible_orders(V: VolcanoSpec, search_cap: int = COMPATIBLE_SEARCH_CAP) -> list[int]:
    """Discriminants of orders whose prime above ell matches the crater."""
    ell = V.ell
    if V.crater == "R1":
        if ell == 2:
            return [-8, -4]
        if ell % 4 == 1:
            return [-4 * ell]
        return [-ell, -4 * ell]
    out = []
    if V.is_split_type:
        # complete finite list: |D_0| <= 4*ell^n - 1 with split ell and
        # a prime above ell of order exactly n
        bound = 4 * ell**V.n - 1
        for aD in range(3, bound + 1):
            D = -aD
            if not _is_discriminant(D) or kronecker(D, ell) != 1:
                continue
            G = class_group(D)
            if G.order(prime_form(D, ell)) == V.n:
                out.append(D)
        return out
    for aD in range(3, search_cap + 1):
        D = -aD
        if not _is_discriminant(D):
            continue
        chi = kronecker(D, ell)
        if V.crater == "I1":
            if chi == -1:
                out.append(D)
        elif V.crater == "R2":
            if chi != 0:
                continue
            cond, _ = discriminant_factor(D)
            if cond % ell == 0:
                continue
            G = class_group(D)
            if prime_form(D, ell) != G.identity:
                out.append(D)
    return out


def order4_free_check(n: int, cap: int | None = None) -> bool:
    """For ell = 2: no order compatible with an S_n crater has a class of order 4."""
    V = VolcanoSpec("Sn" if n >= 3 else ("S1", "S2")[n - 1], n, 2, 0)
    kwargs = {} if cap is None else {"cap": cap}
    for D in compatible_orders(V):
        G = class_group(D, **kwargs)
        two = sum(1 for f in G.forms if G.pow(f, 2) == G.identity)
        four = sum(1 for f in G.forms if G.pow(f, 4) == G.identity)
        if four > two:
            return False
    return True


def converse_bound_Nd(ell: int, n: int, d: int, cap: int | None = None) -> int:
    """Max over compatible split orders of v_ell(exponent of S_{d+1}).

    No k with v_ell(k) >= this bound admits k-explosive primes for the
    (S_n, ell, d) volcano.
    """
    V = VolcanoSpec("Sn" if n >= 3 else ("S1", "S2")[n - 1], n, ell, 0)
    best = 0
    kwargs = {} if cap is None else {"cap": cap}
    for D in compatible_orders(V):
        S = class_group(tower_disc(D, ell, d + 1), **kwargs).sylow_structure(ell)
        best = max(best, valuation(S.exponent, ell) if S.exponent > 1 else 0)
    return best


# ---------------------------------------------------------------------------
# verdict table


def _depth_zero_verdict(V: VolcanoSpec, k: int) -> Verdict:
    ell = V.ell
    tag = "Thm exist_primes_depth_zero"
    if V.crater == "I1" and k % (ell + 1) != 0:
        return Verdict(INFINITELY_MANY, tag)
    if V.crater == "R1" and (3 * k) % ell != 0:
        return Verdict(INFINITELY_MANY, tag)
    if V.crater == "R2" and k % ell != 0:
        return Verdict(INFINITELY_MANY, tag)
    if V.is_split_type and k % (ell - 1) != 0:
        return Verdict(INFINITELY_MANY, tag)
    return Verdict(UNKNOWN, "open (depth-zero sufficient conditions not met)")


def _deep_verdict(V: VolcanoSpec, k: int, r: int) -> Verdict:
    ell, d = V.ell, V.d
    pos = "Thm exist_primes_positive_depth"
    if V.crater == "R1":
        if ell != 3:
            if r < d + 1:
                return Verdict(INFINITELY_MANY, pos)
            return Verdict(NONE_EXIST, "Thm ramified_principal_converse")
        if r < d:
            return Verdict(INFINITELY_MANY, pos)
        return Verdict(NONE_EXIST, "Thm ramified_principal_converse")
    if V.crater == "R2":
        if r < d + 1:
            return Verdict(INFINITELY_MANY, pos)
        if ell >= 5:
            return Verdict(
                CONDITIONAL_CL,
                "Thm conditional_cohen_lenstra",
                conditional_exponent=r - d,
            )
        return Verdict(UNKNOWN, "open (ramified non-principal, small ell)")
    # split or inert craters
    if ell >= 3:
        if r < d:
            return Verdict(INFINITELY_MANY, pos)
        if V.crater == "I1":
            return Verdict(
                CONDITIONAL_CL,
                "Thm conditional_cohen_lenstra",
                conditional_exponent=r + 1 - d,
            )
        return Verdict(UNKNOWN, "open (split crater, r >= d)")
    # ell = 2
    if d == 1:
        if r == 0:
            return Verdict(INFINITELY_MANY, pos)
        return Verdict(NONE_EXIST, "Thm split_two_converse_low_depth")
    if d in (2, 3):
        if r < d - 1:
            return Verdict(INFINITELY_MANY, pos)
        return Verdict(NONE_EXIST, "Thm split_two_converse_low_depth")
    # d >= 4
    if r < d - 1:
        return Verdict(INFINITELY_MANY, pos)
    if V.is_split_type and V.n in (1, 2, 3, 5, 6, 7):
        return Verdict(NONE_EXIST, "Thm split_two_converse_deep_no_order4")
    return Verdict(UNKNOWN, "open (deep two-adic case)")


def decide_existence(
    V: VolcanoSpec,
    k: int,
    constructive: bool = False,
    search_cap: int = COMPATIBLE_SEARCH_CAP,
    class_cap: int | None = None,
) -> Verdict:
    """Complete verdict dispatch; constructive mode may upgrade Unknown."""
    if k < 1:
        raise HypothesisViolation("k must be >= 1")
    r = valuation(k, V.ell) if k % V.ell == 0 else 0
    if V.d == 0:
        verdict = _depth_zero_verdict(V, k)
    else:
        verdict = _deep_verdict(V, k, r)
    if verdict.verdict == CONDITIONAL_CL:
        from .heuristics import decide_conditional

        e, pred = decide_conditional(V.crater, V.ell, V.d, k)
        assert e == verdict.conditional_exponent
        return Verdict(
            verdict.verdict,
            verdict.provenance,
            predicted_density=pred.value,
            conditional_exponent=e,
        )
    if verdict.verdict == UNKNOWN and constructive:
        for D_0 in compatible_orders(V, search_cap):
            try:
                report = x_bruteforce(D_0, V.ell, V.d, k, class_cap)
            except CapExceeded:
                continue
            if report.size > 0:
                return Verdict(
                    INFINITELY_MANY,
                    "constructive witness (nonempty X over a compatible order)",
                    witness_discriminant=D_0,
                    predicted_density=report.density,
                )
    return verdict
