"""k-explosive prime search and density statistics."""

import math

import pytest

from isovolcano.errors import NotSplit, PrimeEqualsEll
from isovolcano.primesearch import frobenius_order, is_k_explosive, search
from isovolcano.quadforms import QuadForm, class_group, form_order, reduce_form


class TestFrobeniusOrder:
    def test_examples(self):
        assert frobenius_order(2, -23) == 3
        assert frobenius_order(3, -23) == 3
        assert frobenius_order(5, -19) == 1

    def test_inert_raises(self):
        with pytest.raises(NotSplit):
            frobenius_order(2, -19)

    def test_b_sign_invariant(self):
        # the order of a class equals the order of its inverse
        from isovolcano.arith import kronecker
        from isovolcano.quadforms import prime_form

        for D in (-23, -47, -71, -84):
            for p in (3, 5, 7, 11, 13):
                if kronecker(D, p) != 1:
                    continue
                f = prime_form(D, p)
                inv = reduce_form(QuadForm(f.a, -f.b, f.c))
                assert form_order(D, f) == form_order(D, inv)


class TestIsKExplosive:
    def test_p_equals_ell(self):
        with pytest.raises(PrimeEqualsEll):
            is_k_explosive(2, -19, 2, 0, 1)

    def test_bad_prime(self):
        with pytest.raises(NotSplit):
            is_k_explosive(19, -19, 2, 0, 1)

    def test_inert_prime(self):
        with pytest.raises(NotSplit):
            is_k_explosive(11, -20, 5, 0, 1)  # kronecker(-20, 11) = -1

    def test_example(self):
        # 5 splits in -19 with principal Frobenius; 1-explosive iff its
        # order in Cl(-76) does not divide 1
        expected = frobenius_order(5, -76) > 1
        assert is_k_explosive(5, -19, 2, 0, 1) == expected


class TestSearch:
    def test_density_inert_two(self):
        res = search(-19, 2, 0, 1, p_max=20000)
        assert res.predicted_density.numerator == 1
        assert res.predicted_density.denominator == 3
        pred = float(res.predicted_density)
        sigma = math.sqrt(pred / res.checked)
        assert abs(float(res.empirical_density) - pred) <= 3 * sigma

    def test_empty_when_predicted_zero(self):
        res = search(-23, 2, 0, 1, p_max=10**4)
        assert res.primes == ()
        assert res.predicted_density == 0

        res = search(-39, 2, 1, 2, p_max=10**4)
        assert res.primes == ()
        assert res.predicted_density == 0

    def test_nonempty_implies_witness(self):
        for args in [(-19, 2, 0, 1), (-15, 3, 1, 3), (-20, 5, 1, 5)]:
            res = search(*args, p_max=5000)
            if res.primes:
                assert res.report.size > 0
            if res.report.size > 0:
                # positive prediction must show hits well before 10^4
                assert res.primes, args

    def test_hits_are_k_explosive(self):
        res = search(-19, 2, 0, 1, p_max=2000)
        assert res.primes
        for p in res.primes[:20]:
            assert is_k_explosive(p, -19, 2, 0, 1)

    def test_three_sigma_fixtures(self):
        fixtures = [(-19, 2, 0, 1), (-15, 3, 1, 3), (-35, 3, 1, 1)]
        for D_0, ell, d, k in fixtures:
            res = search(D_0, ell, d, k, p_max=3 * 10**4)
            pred = float(res.predicted_density)
            sigma = math.sqrt(max(pred, 1e-12) / res.checked)
            assert abs(float(res.empirical_density) - pred) <= 3 * sigma, (D_0, ell, d, k)
