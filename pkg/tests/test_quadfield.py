"""Imaginary quadratic fields, elements, and ideal arithmetic."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from grossen.quadfield import (FieldE, QIdeal, QuadElem, fd, is_fundamental,
                               kronecker)


def test_kronecker_euler_criterion():
    # against Euler's criterion at odd primes not dividing a
    for p in sympy.primerange(3, 60):
        for a in range(-30, 31):
            if a % p == 0:
                continue
            want = 1 if pow(a % p, (p - 1) // 2, p) == 1 else -1
            assert kronecker(a, p) == want


def test_kronecker_multiplicative():
    rng = random.Random(3)
    for _ in range(200):
        a = rng.randint(-50, 50)
        m = rng.randint(1, 40)
        n = rng.randint(1, 40)
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_at_two():
    # (a/2) is 0 for even a, 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
    assert kronecker(2, 2) == 0
    assert kronecker(7, 2) == 1
    assert kronecker(3, 2) == -1
    assert kronecker(-1, 2) == 1


def test_is_fundamental():
    negatives = [d for d in range(-1, -30, -1) if is_fundamental(d)]
    assert negatives == [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24]
    positives = [d for d in range(2, 30) if is_fundamental(d)]
    assert positives == [5, 8, 12, 13, 17, 21, 24, 28, 29]
    assert not is_fundamental(-9)
    assert not is_fundamental(-12)


def test_fd():
    assert fd(-1) == -4
    assert fd(-2) == -8
    assert fd(-3) == -3
    assert fd(-12) == -3
    assert fd(18) == 8
    assert fd(5) == 5


def test_omega_satisfies_its_minimal_polynomial():
    for d in (-3, -4, -7, -8, -15, -20, -23, -24):
        f = FieldE(d)
        w = f.omega
        assert w * w - f.omega_trace * w + f.omega_norm == f.zero
        s = f.sqrt_disc
        assert s * s == f.element(d)


def test_element_arithmetic():
    f = FieldE(-15)
    rng = random.Random(4)
    for _ in range(50):
        a = f.element(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                      Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        b = f.element(rng.randint(-9, 9), rng.randint(-9, 9))
        assert (a + b) - b == a
        assert a * b == b * a
        if b != f.zero:
            assert (a / b) * b == a
        assert a * a.conj() == f.element(a.norm())
        assert a + a.conj() == f.element(a.trace())
    assert f.one ** 0 == f.one
    assert (f.omega ** 3) == f.omega * f.omega * f.omega


def test_norm_trace_integrality():
    f = FieldE(-20)
    v = f.omega + 10     # sqrt(-5)
    assert v.norm() == 5
    assert v.trace() == 0
    assert v.is_integral
    assert not (v / 2).is_integral
    assert f.element(Fraction(1, 2)).is_rational


def test_roots_of_unity():
    assert len(FieldE(-3).roots_of_unity()) == 6
    assert len(FieldE(-4).roots_of_unity()) == 4
    assert len(FieldE(-7).roots_of_unity()) == 2
    for u in FieldE(-3).roots_of_unity():
        assert u ** 6 == FieldE(-3).one
        assert u.norm() == 1


def test_principal_ideal_norm():
    f = FieldE(-23)
    rng = random.Random(5)
    for _ in range(30):
        a = f.element(rng.randint(-9, 9), rng.randint(-9, 9))
        if a == f.zero:
            continue
        assert QIdeal.from_element(a).norm() == abs(a.norm())


def test_ideal_product_norm_multiplicative():
    f = FieldE(-15)
    p3 = QIdeal.primes_over(f, 3)[0]
    p5 = QIdeal.primes_over(f, 5)[0]
    p2 = QIdeal.primes_over(f, 2)[0]
    assert (p3 * p5).norm() == 15
    assert (p2 * p2 * p3).norm() == 12
    assert (p2 * p2.conj()).norm() == 4
    # a * conj(a) = (N(a))
    assert p2 * p2.conj() == QIdeal.from_element(f.element(2))


def test_primes_over_splitting():
    f = FieldE(-15)         # chi(2) = 1 split, chi(7) = -1 inert, 3 ramified
    assert len(QIdeal.primes_over(f, 2)) == 2
    assert len(QIdeal.primes_over(f, 7)) == 1
    assert QIdeal.primes_over(f, 7)[0].norm() == 49
    ram = QIdeal.primes_over(f, 3)
    assert len(ram) == 1 and ram[0].norm() == 3
    assert ram[0] * ram[0] == QIdeal.from_element(f.element(3))


def test_factor_roundtrip():
    f = FieldE(-24)
    rng = random.Random(6)
    for _ in range(20):
        a = f.element(rng.randint(-20, 20), rng.randint(-20, 20))
        if a == f.zero:
            continue
        ideal = QIdeal.from_element(a)
        fac = ideal.factor()
        prod = QIdeal.unit_ideal(f)
        for p, e in fac.items():
            prod = prod * p ** e
        assert prod == ideal


def test_is_principal():
    f = FieldE(-15)         # class group C2
    p2 = QIdeal.primes_over(f, 2)[0]
    assert p2.is_principal() is None
    gen = (p2 * p2).is_principal()
    assert gen is not None
    assert QIdeal.from_element(gen) == p2 * p2
    # principal by construction
    a = f.element(3, 2)
    gen2 = QIdeal.from_element(a).is_principal()
    assert gen2 is not None
    assert abs(gen2.norm()) == abs(a.norm())


def test_valuation_and_divides():
    f = FieldE(-4)
    p2 = QIdeal.primes_over(f, 2)[0]
    two = QIdeal.from_element(f.element(2))
    assert two.valuation(p2) == 2
    assert p2.divides(two)
    assert not two.divides(p2)
    assert (p2 ** 3).valuation(p2) == 3


def test_contains():
    f = FieldE(-7)
    p2 = QIdeal.primes_over(f, 2)[0]
    assert p2.contains(f.element(2))
    assert not p2.contains(f.one)


def test_fractional_inverse():
    f = FieldE(-20)
    p2 = QIdeal.primes_over(f, 2)[0]
    assert p2 * p2.inverse() == QIdeal.unit_ideal(f)
    assert (p2 / p2) == QIdeal.unit_ideal(f)
    assert p2 ** -2 == (p2 ** 2).inverse()


def test_from_generators():
    f = FieldE(-23)
    p2 = QIdeal.primes_over(f, 2)[0]
    a, b = p2.basis()
    assert QIdeal.from_generators(f, [a, b]) == p2
    assert QIdeal.from_generators(f, [a, b, a + b]) == p2


def test_from_hnf_rejects_non_ideal():
    f = FieldE(-7)
    with pytest.raises((AssertionError, ValueError)):
        QIdeal.from_hnf(f, 3, 1)    # 3 does not divide N(1 + w) here
