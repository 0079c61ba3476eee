"""Cohen-Lenstra style predictions for conditional existence results.

The conditional verdicts rest on a structural condition on the class-group
tower over a maximal order: the ell-Sylow S_0 must be cyclic of exponent at
least ell^e and must keep its rank when passing to the deeper order. This
module provides the predicted probability of that condition, a brute-force
checker, and discriminant scans comparing the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import kronecker, primes_up_to, valuation
from .errors import HypothesisViolation, WrongRamification
from .quadforms import (
    class_group,
    form_pow,
    is_fundamental,
    prime_form,
    principal_form,
)
from .ordertower import INERT, RAMIFIED, ramification
from . import tables

DEFAULT_ETA_TERMS = 64
SAMPLE_SPLIT_PRIMES = 40


def eta_infinity(ell: int, terms: int = DEFAULT_ETA_TERMS) -> float:
    """Truncated prod_{k=1..terms} (1 - ell^-k); error at most 2*ell^-(terms+1)."""
    if terms < 1:
        raise HypothesisViolation("terms must be >= 1")
    out = 1.0
    for k in range(1, terms + 1):
        out *= 1.0 - ell ** -float(k)
    return out


@dataclass(frozen=True)
class CLPrediction:
    ell: int
    e: int
    rational: Fraction
    eta_terms: int = DEFAULT_ETA_TERMS

    @property
    def value(self) -> float:
        return float(self.rational) * eta_infinity(self.ell, self.eta_terms)


def predicted_prob_cyclic(ell: int, e: int) -> CLPrediction:
    """Probability that the ell-Sylow is cyclic of order exactly ell^N, N >= e."""
    if e < 1:
        raise HypothesisViolation("e must be >= 1")
    return CLPrediction(ell, e, Fraction(ell**2, (ell - 1) ** 2 * ell**e))


def predicted_prob_ext(ell: int, e: int) -> CLPrediction:
    """Probability of the full condition (cyclic exponent >= ell^e, rank kept)."""
    if e < 1:
        raise HypothesisViolation("e must be >= 1")
    return CLPrediction(ell, e, Fraction(ell, (ell - 1) * ell**e))


def condition_check(D_K: int, ell: int, e: int, kind: str) -> bool:
    """Brute-force check of the structural condition over the maximal order."""
    if kind not in ("I1", "R2"):
        raise HypothesisViolation(f"kind must be I1 or R2, got {kind}")
    if not is_fundamental(D_K):
        raise HypothesisViolation(f"{D_K} is not a fundamental discriminant")
    if e < 1:
        raise HypothesisViolation("e must be >= 1")
    ram = ramification(D_K, ell)
    if kind == "I1" and ram != INERT:
        raise WrongRamification(f"{ell} is not inert in discriminant {D_K}")
    if kind == "R2" and ram != RAMIFIED:
        raise WrongRamification(f"{ell} is not ramified in discriminant {D_K}")
    S0 = class_group(D_K).sylow_structure(ell)
    if len(S0.divisors) != 1:
        return False
    if valuation(S0.divisors[0], ell) < e:
        return False
    depth = 2 if kind == "I1" else 1
    deeper = class_group(ell ** (2 * depth) * D_K).sylow_structure(ell)
    return len(deeper.divisors) == 1


def decide_conditional(crater: str, ell: int, d: int, k: int):
    """Exponent e and predicted density for the conditional verdict cells."""
    r = valuation(k, ell) if k % ell == 0 else 0
    if crater == "I1":
        if ell < 3 or d < 1 or r < d:
            raise HypothesisViolation("conditional inert cell needs ell >= 3, r >= d >= 1")
        e = r + 1 - d
    elif crater == "R2":
        if ell < 5 or d < 1 or r < d + 1:
            raise HypothesisViolation("conditional ramified cell needs ell >= 5, r >= d+1")
        e = r - d
    else:
        raise HypothesisViolation(f"no conditional result for crater {crater}")
    return e, predicted_prob_ext(ell, e)


@dataclass(frozen=True)
class ScanRow:
    x: int
    eligible: int
    hits: int
    ratio: float

    def __post_init__(self):
        assert self.hits <= self.eligible

    def csv(self) -> str:
        r = "NaN" if math.isnan(self.ratio) else f"{self.ratio:.6g}"
        return f"{self.x},{self.eligible},{self.hits},{r}"


def _split_sample_primes(D: int):
    for q in primes_up_to(2000):
        q = int(q)
        if kronecker(D, q) == 1:
            yield q


def _sylow_cyclic_sampled(D: int, h: int, ell: int) -> bool:
    """True if some sampled prime form has full ell-valuation of its order.

    Sampling forms instead of enumerating Cl(D): f^(h/ell) != identity forces
    the ell-Sylow cyclic (and witnesses a generator). A miss after many split
    primes is treated as non-cyclic; the sample is deterministic.
    """
    target = h // ell
    one = principal_form(D)
    seen = 0
    for q in _split_sample_primes(D):
        f = prime_form(D, q)
        if form_pow(f, target) != one:
            return True
        seen += 1
        if seen >= SAMPLE_SPLIT_PRIMES:
            break
    return False


def _condition_check_fast(D_K: int, ell: int, e: int, kind: str, h: int) -> bool:
    """Same condition as condition_check but using a precomputed h(D_K)."""
    if h % ell != 0 or valuation(h, ell) < e:
        return False
    if not _sylow_cyclic_sampled(D_K, h, ell):
        return False
    if kind == "I1":
        deeper = ell**4 * D_K
        h_deep = h * ell * (ell + 1)
    else:
        deeper = ell**2 * D_K
        h_deep = h * ell
    return _sylow_cyclic_sampled(deeper, h_deep, ell)


def _r2_exclusions(ell: int) -> set[int]:
    if ell == 2:
        return {-4, -8}
    return {-ell} if ell % 4 == 3 else {-4 * ell}


def scan(
    ell: int,
    e: int,
    kind: str,
    x_max: int,
    stride: int,
    resume: ScanRow | None = None,
) -> list[ScanRow]:
    """Cumulative hit ratios over fundamental discriminants |D_K| <= x_max.

    Rows are emitted at multiples of stride. Passing a previously returned
    row as resume continues from that point and reproduces identical output.
    """
    if kind not in ("I1", "R2"):
        raise HypothesisViolation(f"kind must be I1 or R2, got {kind}")
    predicted = predicted_prob_ext(ell, e).value
    fund = tables.fundamental_mask(x_max)
    h_table = tables.class_number_table(x_max)
    exclude = _r2_exclusions(ell) if kind == "R2" else set()
    rows: list[ScanRow] = []
    start = 1
    eligible = hits = 0
    if resume is not None:
        start = resume.x + 1
        eligible, hits = resume.eligible, resume.hits
    for aD in range(start, x_max + 1):
        if fund[aD]:
            D = -aD
            chi = kronecker(D, ell)
            ok = (chi == -1) if kind == "I1" else (chi == 0 and D not in exclude)
            if ok:
                eligible += 1
                if D in (-3, -4):
                    # tiny unit-exceptional fields: use the slow checker
                    hit = condition_check(D, ell, e, kind)
                else:
                    hit = _condition_check_fast(D, ell, e, kind, int(h_table[aD]))
                if hit:
                    hits += 1
        if aD % stride == 0 or aD == x_max:
            ratio = (hits / eligible) / predicted if eligible else math.nan
            rows.append(ScanRow(aD, eligible, hits, ratio))
    return rows
