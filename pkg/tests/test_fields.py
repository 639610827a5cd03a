import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchcurve.errors import DomainError
from branchcurve.fields import QQ, ExtensionField, PrimeField, extension, is_prime, sample_primes
from branchcurve import upoly


def test_prime_field_arithmetic():
    F = PrimeField(7)
    assert F.mul(5, 3) == 1
    assert F.inv(3) == 5
    assert F.convert(Fraction(1, 2)) == 4
    assert F.neg(0) == 0


def test_prime_field_rejects_composite():
    with pytest.raises(DomainError):
        PrimeField(15)


def test_is_prime_small_table():
    expected = [n for n in range(2, 200) if all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == expected


def test_sample_primes_seeded():
    a = sample_primes(3, 11)
    assert a == sample_primes(3, 11)
    assert all(2**30 <= p < 2**31 and is_prime(p) for p in a)
    assert len(set(a)) == 3


def test_extension_rejects_reducible_modulus():
    with pytest.raises(DomainError):
        ExtensionField(7, (6, 0, 1))  # x^2 - 1


def test_gf49_multiplicative_group():
    K = ExtensionField(7, (1, 0, 1))  # x^2 + 1 is irreducible mod 7
    elems = [a for a in K.elements() if not K.is_zero(a)]
    assert len(elems) == 48
    for a in elems:
        assert K.pow(a, 48) == K.one
        assert K.mul(a, K.inv(a)) == K.one
    # the generator squares to -1
    assert K.mul(K.gen, K.gen) == K.convert(-1)


def test_frobenius_is_pth_power():
    K = extension(11, 3)
    rng = random.Random(0)
    for _ in range(20):
        a = K.random(rng)
        assert K.frobenius(a) == K.pow(a, 11)


def test_norm_and_squares_gf25():
    K = extension(5, 2)
    squares = {K.mul(a, a) for a in K.elements()}
    for a in K.elements():
        assert K.is_square(a) == (a in squares)
        # norm lands in the base field: a^(1+p)
        assert K.embed(K.norm(a)) == K.pow(a, 6)


def test_rationals_describe():
    assert QQ.describe()["kind"] == "QQ"
    assert QQ.div(Fraction(1), Fraction(3)) == Fraction(1, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_extension_field_axioms(a, b, c):
    K = extension(13, 3)
    rng = random.Random(a * 7 + b * 13 + c)
    x, y, z = (K.random(rng) for _ in range(3))
    assert K.mul(x, K.add(y, z)) == K.add(K.mul(x, y), K.mul(x, z))
    assert K.mul(K.mul(x, y), z) == K.mul(x, K.mul(y, z))
    if not K.is_zero(x):
        assert K.mul(x, K.inv(x)) == K.one


def test_residue_degrees_quadratics():
    F = PrimeField(7)
    assert upoly.residue_degrees(F, [6, 0, 1]) == [1, 1]  # x^2 - 1
    assert upoly.residue_degrees(F, [1, 0, 1]) == [2]  # x^2 + 1
    assert upoly.residue_degrees(F, [3, 1]) == [1]
