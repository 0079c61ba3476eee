"""Finite field contexts: moduli, axioms, Frobenius."""

import random

import pytest

from isovolcano.errors import CapExceeded
from isovolcano.fields import FieldCtx


class TestConstruction:
    def test_modulus_lex_smallest(self):
        # x^2 + 1 is irreducible mod 7 and lexicographically first
        F = FieldCtx(7, 2)
        assert F.modulus == [1, 0, 1]

    def test_modulus_irreducible_examples(self):
        assert FieldCtx(3, 2).modulus == [1, 0, 1]  # x^2 + 1 mod 3
        assert FieldCtx(2, 2).modulus == [1, 1, 1]  # x^2 + x + 1

    def test_cap(self):
        with pytest.raises(CapExceeded):
            FieldCtx(2, 30)

    def test_prime_required(self):
        with pytest.raises(Exception):
            FieldCtx(6, 1)

    def test_prime_field(self):
        F = FieldCtx(11)
        assert F.modulus is None
        assert F.q == 11
        assert list(F.elements()) == list(range(11))


def sample_pairs(F, rng, n=40):
    els = list(F.elements())
    return [(rng.choice(els), rng.choice(els)) for _ in range(n)]


class TestAxioms:
    @pytest.mark.parametrize("p,k", [(13, 1), (3, 3), (2, 5), (7, 2), (5, 3)])
    def test_field_laws(self, p, k):
        F = FieldCtx(p, k)
        rng = random.Random(p * 100 + k)
        for a, b in sample_pairs(F, rng):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.add(a, F.neg(a)) == F.zero
            assert F.sub(a, b) == F.add(a, F.neg(b))
            assert F.mul(a, F.one) == a
            if a != F.zero:
                assert F.mul(a, F.inv(a)) == F.one
        for _ in range(20):
            a, b = sample_pairs(F, rng, 1)[0]
            c = sample_pairs(F, rng, 1)[0][0]
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))

    @pytest.mark.parametrize("p,k", [(13, 1), (3, 3), (2, 5), (7, 2)])
    def test_frobenius_identity(self, p, k):
        F = FieldCtx(p, k)
        for a in F.elements():
            assert F.pow(a, F.q) == a

    def test_multiplicative_group_order(self):
        F = FieldCtx(5, 2)
        for a in F.elements():
            if a != F.zero:
                assert F.pow(a, F.q - 1) == F.one

    def test_inv_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            FieldCtx(5, 2).inv((0, 0))


class TestEvalPoly:
    def test_prime_field(self):
        F = FieldCtx(7)
        # 2 + 3x + x^2 at x = 4: 2 + 12 + 16 = 30 = 2 mod 7
        assert F.eval_poly([2, 3, 1], 4) == 2

    def test_extension(self):
        F = FieldCtx(7, 2)
        x = (0, 1)  # a root of the modulus x^2 + 1
        assert F.eval_poly([F.one, F.zero, F.one], x) == F.zero

    def test_constant(self):
        F = FieldCtx(5, 2)
        assert F.eval_poly([F.from_int(3)], (4, 2)) == F.from_int(3)
