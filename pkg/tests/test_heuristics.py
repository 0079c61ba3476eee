"""Cohen-Lenstra style predictions, condition checks, and scans."""

import math
from fractions import Fraction

import pytest

from isovolcano.arith import kronecker
from isovolcano.errors import HypothesisViolation, WrongRamification
from isovolcano.heuristics import (
    ScanRow,
    condition_check,
    decide_conditional,
    eta_infinity,
    predicted_prob_cyclic,
    predicted_prob_ext,
    scan,
)
from isovolcano.quadforms import class_group, is_fundamental


class TestEta:
    def test_reference_values(self):
        assert abs(eta_infinity(2) - 0.2887880951) < 1e-9
        assert abs(eta_infinity(3) - 0.5601) < 1e-4

    @pytest.mark.parametrize("ell", [2, 3, 5, 7, 11])
    def test_first_factor_bounds(self, ell):
        v = eta_infinity(ell)
        assert 1 - 1 / ell - 1 / ell**2 < v < 1 - 1 / ell

    def test_truncation_error(self):
        # adding terms moves the value by at most 2*ell^-(terms+1)
        for ell in (2, 3):
            assert abs(eta_infinity(ell, 20) - eta_infinity(ell, 40)) <= 2 * ell ** -21


class TestPredictions:
    @pytest.mark.parametrize("ell", [3, 5, 7])
    @pytest.mark.parametrize("e", [1, 2, 3])
    def test_exact_identities(self, ell, e):
        ext = predicted_prob_ext(ell, e)
        cyc = predicted_prob_cyclic(ell, e)
        assert ext.rational == cyc.rational * Fraction(ell - 1, ell)
        assert predicted_prob_ext(ell, e + 1).rational * ell == ext.rational

    def test_substituted_values(self):
        assert predicted_prob_ext(3, 1).rational == Fraction(1, 2)
        assert predicted_prob_ext(5, 2).rational == Fraction(1, 20)
        assert predicted_prob_cyclic(3, 1).rational == Fraction(3, 4)

    def test_value_in_unit_interval(self):
        for ell in (3, 5, 7):
            for e in (1, 2, 3):
                assert 0 < predicted_prob_ext(ell, e).value < 1

    def test_e_positive(self):
        with pytest.raises(HypothesisViolation):
            predicted_prob_ext(3, 0)


class TestConditionCheck:
    def test_wrong_ramification(self):
        with pytest.raises(WrongRamification):
            condition_check(-23, 2, 1, "I1")  # 2 splits in -23
        with pytest.raises(WrongRamification):
            condition_check(-19, 2, 1, "R2")

    def test_trivial_sylow_false(self):
        # h(-19) = 1: exponent clause fails
        assert not condition_check(-19, 3, 1, "I1")

    def test_positive_example(self):
        # first inert-3 field with 3 | h and the deeper rank kept
        hit = None
        for absD in range(3, 600):
            D = -absD
            if D % 4 not in (0, 1) or not is_fundamental(D):
                continue
            if kronecker(D, 3) != -1:
                continue
            if condition_check(D, 3, 1, "I1"):
                hit = D
                break
        assert hit is not None
        S0 = class_group(hit).sylow_structure(3)
        assert len(S0.divisors) == 1 and S0.divisors[0] % 3 == 0

    def test_monotone_in_e(self):
        for absD in range(3, 800):
            D = -absD
            if D % 4 not in (0, 1) or not is_fundamental(D):
                continue
            if kronecker(D, 3) != -1:
                continue
            if condition_check(D, 3, 2, "I1"):
                assert condition_check(D, 3, 1, "I1"), D

    def test_definition_dual_route(self):
        # recompute the condition from class-group structures directly
        for absD in range(5, 700):
            D = -absD
            if D % 4 not in (0, 1) or not is_fundamental(D):
                continue
            if kronecker(D, 3) != -1:
                continue
            S0 = class_group(D).sylow_structure(3)
            S2 = class_group(81 * D).sylow_structure(3)
            expected = (
                len(S0.divisors) == 1
                and S0.divisors[0] % 3 == 0
                and len(S2.divisors) == 1
            )
            assert condition_check(D, 3, 1, "I1") == expected, D


class TestDecideConditional:
    def test_inert_example(self):
        e, pred = decide_conditional("I1", 3, 1, 3)
        assert e == 1
        assert pred.rational == Fraction(1, 2)

    def test_ramified_example(self):
        e, pred = decide_conditional("R2", 5, 1, 25)
        assert e == 1
        assert pred.rational == Fraction(1, 4)

    def test_small_ell_ramified_rejected(self):
        with pytest.raises(HypothesisViolation):
            decide_conditional("R2", 3, 1, 9)

    def test_r_too_small(self):
        with pytest.raises(HypothesisViolation):
            decide_conditional("I1", 3, 2, 3)


class TestScan:
    def test_row_csv(self):
        row = ScanRow(1000, 40, 21, 1.05)
        assert row.csv() == "1000,40,21,1.05"
        nan_row = ScanRow(10, 0, 0, math.nan)
        assert nan_row.csv() == "10,0,0,NaN"

    def test_empty_prefix_nan(self):
        rows = scan(3, 1, "I1", 4, 2)
        assert rows[0].eligible == 0
        assert math.isnan(rows[0].ratio)

    def test_matches_slow_checker(self):
        rows = scan(3, 1, "I1", 2000, 2000)
        final = rows[-1]
        eligible = hits = 0
        for absD in range(3, 2001):
            D = -absD
            if D % 4 not in (0, 1) or not is_fundamental(D):
                continue
            if kronecker(D, 3) != -1:
                continue
            eligible += 1
            if condition_check(D, 3, 1, "I1"):
                hits += 1
        assert (final.eligible, final.hits) == (eligible, hits)

    def test_deterministic_and_resumable(self):
        rows = scan(3, 1, "I1", 3000, 500)
        assert rows == scan(3, 1, "I1", 3000, 500)
        resumed = scan(3, 1, "I1", 3000, 500, resume=rows[2])
        assert resumed == rows[3:]

    def test_r2_excludes_principal_field(self):
        rows = scan(5, 1, "R2", 100, 100)
        # -20 = -4*5 is the principally ramified field and must not count
        eligible = rows[-1].eligible
        count = 0
        for absD in range(3, 101):
            D = -absD
            if D % 4 not in (0, 1) or not is_fundamental(D):
                continue
            if kronecker(D, 5) == 0 and D != -20:
                count += 1
        assert eligible == count

    def test_hits_feed_solvability(self):
        # a scan hit satisfies the tower condition, so X is nonempty at
        # d = 1, k = ell (exponent e = r + 1 - d = 1)
        from isovolcano.solvability import x_bruteforce

        rows = scan(3, 1, "I1", 800, 800)
        hits = []
        for absD in range(3, 801):
            D = -absD
            if D % 4 not in (0, 1) or not is_fundamental(D):
                continue
            if kronecker(D, 3) == -1 and condition_check(D, 3, 1, "I1"):
                hits.append(D)
        assert len(hits) >= 1
        assert rows[-1].hits == len(hits)
        for D in hits[:3]:
            assert x_bruteforce(D, 3, 1, 3).size > 0, D
