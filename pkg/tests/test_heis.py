import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nildom.heis import (
    HeisElement,
    PadicRational,
    PrimeMismatch,
    certificate,
    certified_elements,
    from_matrix,
    heis_comm,
    heis_inv,
    heis_mul,
    heis_pow,
    identity,
    in_claimed_dominion,
    legendre,
    matmul,
    ord_p,
)


def H(a, b, c, p):
    return HeisElement.of(a, b, c, p)


def test_padic_canonical():
    r = PadicRational(12, 3, 2)
    assert (r.numerator, r.p_exponent) == (3, 1)
    assert PadicRational(5, 0, 5).p_exponent == 0
    assert PadicRational.of(Fraction(3, 8), 2) == PadicRational(3, 3, 2)
    with pytest.raises(ValueError):
        PadicRational.of(Fraction(1, 3), 2)
    with pytest.raises(PrimeMismatch):
        PadicRational(1, 1, 2) + PadicRational(1, 1, 3)


def test_mul_examples():
    assert heis_mul(H(1, 0, 0, 2), H(0, 1, 0, 2)) == H(1, 1, 0, 2)
    assert heis_mul(H(0, 1, 0, 2), H(1, 0, 0, 2)) == H(1, 1, 1, 2)
    assert heis_inv(identity(3)) == identity(3)
    with pytest.raises(PrimeMismatch):
        heis_mul(identity(2), identity(3))


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_commutator_formula(p, N):
    x = H(Fraction(1, p ** N), 0, 0, p)
    y = H(0, Fraction(-1, p ** N), 0, p)
    assert heis_comm(x, y) == H(0, 0, Fraction(1, p ** (2 * N)), p)


def rand_elem(rng, p):
    def q():
        return Fraction(rng.randint(-50, 50), p ** rng.randint(0, 6))
    return H(q(), q(), q(), p)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10 ** 6))
def test_group_axioms(p, seed):
    rng = random.Random(seed)
    a, b, c = (rand_elem(rng, p) for _ in range(3))
    assert heis_mul(heis_mul(a, b), c) == heis_mul(a, heis_mul(b, c))
    assert heis_mul(a, heis_inv(a)) == identity(p) == heis_mul(heis_inv(a), a)
    assert heis_mul(a, identity(p)) == a


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10 ** 6))
def test_matrix_homomorphism(p, seed):
    rng = random.Random(seed)
    a, b = rand_elem(rng, p), rand_elem(rng, p)
    assert matmul(a.matrix(), b.matrix()) == heis_mul(a, b).matrix()
    assert from_matrix(a.matrix(), p) == a


@given(st.integers(-40, 40), st.integers(0, 10 ** 6))
def test_power_by_squaring(n, seed):
    rng = random.Random(seed)
    g = rand_elem(rng, 3)
    acc = identity(3)
    step = g if n >= 0 else heis_inv(g)
    for _ in range(abs(n)):
        acc = heis_mul(acc, step)
    assert heis_pow(g, n) == acc


def test_legendre_vs_factorization():
    for p in (2, 3, 5, 7):
        for n in range(0, 40):
            assert legendre(p, n) == ord_p(p, math.factorial(n))


def test_certificate_examples():
    c = certificate(2, 1, 3)
    assert c.N == 2 and c.x == H(Fraction(1, 4), 0, 0, 2) and c.passed
    assert heis_pow(heis_comm(c.x, c.y), 2 ** 3) == H(0, 0, Fraction(1, 2), 2)
    c = certificate(3, 1, 2)
    assert c.N == 1 and c.passed
    assert heis_pow(heis_comm(c.x, c.y), 3) == H(0, 0, Fraction(1, 3), 3)
    assert str(c).splitlines()[-1] == "PASS"


def test_claimed_dominion_membership():
    for i in range(1, 5):
        assert in_claimed_dominion(H(0, 0, Fraction(1, 2 ** i), 2))
    assert not in_claimed_dominion(H(Fraction(1, 2), 0, 0, 2))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_all_certificates_pass(p):
    for i in range(1, 5):
        for c in range(2, 6):
            cert = certificate(p, i, c)
            assert cert.passed
            assert cert.ord_legendre == cert.ord_factorial


def test_certified_sets_shrink_as_class_grows():
    for p in (2, 3):
        for i in range(1, 4):
            for c in range(3, 6):
                assert certified_elements(p, i, c) <= certified_elements(p, i, c - 1)


def test_certificate_rejects_bad_input():
    with pytest.raises(ValueError):
        certificate(4, 1, 3)
    with pytest.raises(ValueError):
        certificate(2, 0, 3)
    with pytest.raises(ValueError):
        certificate(2, 1, 1)
