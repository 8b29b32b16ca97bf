"""Unit groups of residue rings and the dyadic tower structure."""

from __future__ import annotations

import random
from math import gcd

from grossen.quadfield import FieldE, QIdeal
from grossen.resunits import (IntUnitGroup, ResidueRing, dyadic_case,
                              dyadic_structure, ideal_coset_reps,
                              invariant_factors, torsion_meet, two_rank,
                              unit_count, units_structure)


def _moduli_sample(field):
    out = [QIdeal.from_element(field.element(n)) for n in (2, 3, 4, 5, 6)]
    for p in (2, 3, 5, 7):
        out.append(QIdeal.primes_over(field, p)[0])
    out.append(QIdeal.primes_over(field, 2)[0]
               * QIdeal.primes_over(field, 3)[0])
    return out


def test_unit_count_matches_enumeration():
    for d in (-3, -4, -7, -15, -20, -24):
        field = FieldE(d)
        for m in _moduli_sample(field):
            if m.norm() > 600:
                continue
            ring = ResidueRing(field, m)
            assert unit_count(m) == ring.count_units()


def test_units_structure_orders_and_dlog():
    rng = random.Random(9)
    for d in (-7, -15, -20, -24):
        field = FieldE(d)
        for m in _moduli_sample(field):
            if m.norm() > 400:
                continue
            S = units_structure(field, m)
            total = 1
            for o in S.orders:
                total *= o
            assert total == unit_count(m)
            ring = ResidueRing(field, m)
            units = list(ring.unit_reps())
            for _ in range(10):
                z = ring.elem(rng.choice(units))
                vec = S.dlog(z)
                assert all(0 <= e < o for e, o in zip(vec, S.orders))
                back = S.rebuild(vec)
                assert ring.reduce(back) == ring.reduce(z)
            assert all(e == 0 for e in S.dlog(field.one))


def test_units_structure_is_a_homomorphism():
    field = FieldE(-15)
    m = QIdeal.from_element(field.element(6))
    S = units_structure(field, m)
    ring = ResidueRing(field, m)
    rng = random.Random(10)
    units = list(ring.unit_reps())
    for _ in range(20):
        z1, z2 = ring.elem(rng.choice(units)), ring.elem(rng.choice(units))
        v1, v2 = S.dlog(z1), S.dlog(z2)
        v12 = S.dlog(z1 * z2)
        assert v12 == tuple((a + b) % o
                            for a, b, o in zip(v1, v2, S.orders))


def test_torsion_meet():
    f4 = FieldE(-4)
    p2 = QIdeal.primes_over(f4, 2)[0]
    # mod p2 every root of unity is congruent to 1
    assert len(torsion_meet(f4, p2)) == 4
    # mod (2) = p2**2 only +-1 survive
    two = QIdeal.from_element(f4.element(2))
    assert sorted(u.x for u in torsion_meet(f4, two)) == [-1, 1]
    # mod p2**3 only 1 survives
    assert [u for u in torsion_meet(f4, p2 ** 3)] == [f4.one]


def test_int_unit_group():
    for m in (1, 2, 8, 15, 16, 36, 240):
        G = IntUnitGroup(m)
        total = 1
        for _, o in G.factors:
            total *= o
        phi = sum(1 for a in range(1, m + 1) if gcd(a, m) == 1)
        assert total == phi
        for a in (x for x in range(1, m) if gcd(x, m) == 1):
            vec = G.dlog(a)
            acc = 1
            for (g, _), e in zip(G.factors, vec):
                acc = acc * pow(g, e, m) % m
            assert acc == a % m


def test_two_rank_and_invariant_factors():
    assert two_rank((4, 2, 3)) == 2
    assert two_rank((5, 3)) == 0
    assert invariant_factors((2, 3)) == (6,)
    assert invariant_factors((4, 6, 5)) == (2, 60)
    assert invariant_factors(()) == ()


def test_dyadic_case():
    assert dyadic_case(FieldE(-7)) == "split"
    assert dyadic_case(FieldE(-23)) == "split"
    assert dyadic_case(FieldE(-11)) == "inert"
    assert dyadic_case(FieldE(-4)) == "ram4"
    assert dyadic_case(FieldE(-20)) == "ram4"
    assert dyadic_case(FieldE(-8)) == "ram8"
    assert dyadic_case(FieldE(-24)) == "ram8"


def test_dyadic_structure_small_levels():
    for d in (-7, -11, -4, -8):
        field = FieldE(d)
        for n in range(1, 7):
            rep = dyadic_structure(field, n)
            assert rep.certified
            assert rep.two_rank == rep.two_rank_formula
            if rep.enumerated is not None:
                assert rep.matches_enumeration


def test_dyadic_five_square_truth():
    # by exhaustive squaring: 5 is a square mod p2**n exactly for n <= 4
    for d in (-8, -24):
        field = FieldE(d)
        got = [dyadic_structure(field, n).five_square for n in range(1, 13)]
        assert got == [True] * 4 + [False] * 8


def test_dyadic_minus_one_and_three():
    # -1 and 3 are squares mod p2**3 but not from level 4 on (8 || disc)
    for d in (-8, -24):
        field = FieldE(d)
        rep3 = dyadic_structure(field, 3)
        assert rep3.minus_one_square and rep3.three_square
        for n in range(4, 9):
            rep = dyadic_structure(field, n)
            assert not rep.minus_one_square
            assert not rep.three_square


def test_ideal_coset_reps():
    field = FieldE(-15)
    p3 = QIdeal.primes_over(field, 3)[0]
    reps = ideal_coset_reps(p3, p3 * p3)
    assert len(reps) == 3
    ring = ResidueRing(field, p3 * p3)
    seen = set()
    for r in reps:
        assert p3.contains(r)
        seen.add(ring.reduce(r))
    assert len(seen) == 3
