"""Construction, evaluation, and serialization of unitary characters."""

from __future__ import annotations

import mpmath
import pytest

from grossen.chargroup import dirichlet_from_kronecker, enumerate_eta
from grossen.grossenchar import (GrossencharError, IncompatibleCharacterError,
                                 NoSuchCharacterError, build, conductor,
                                 evaluate, extend_to_conductor, from_record,
                                 minimal_conductor, record, twist)
from grossen.quadfield import FieldE, QIdeal


def _witness(disc, ell=1, order=None):
    field = FieldE(disc)
    m = minimal_conductor(field)
    for eta in enumerate_eta(field, m, order_equals=order):
        try:
            return build(field, m, ell, eta)
        except (IncompatibleCharacterError, NoSuchCharacterError):
            continue
    raise RuntimeError("no witness character")


@pytest.fixture(scope="module")
def psi15():
    return _witness(-15, order=2)


def test_minimal_conductor_norms():
    assert minimal_conductor(FieldE(-15)).norm() == 15
    assert minimal_conductor(FieldE(-7)).norm() == 7
    assert minimal_conductor(FieldE(-4)).norm() == 8
    assert minimal_conductor(FieldE(-20)).norm() == 40
    assert minimal_conductor(FieldE(-8)).norm() == 32
    assert minimal_conductor(FieldE(-24)).norm() == 96


def test_level_and_weight(psi15):
    assert psi15.weight == 2
    assert psi15.level == 15 * 15
    assert psi15.ell == 1


def test_value_on_shifted_principal(psi15):
    # alpha = 1 mod m forces psi((alpha)) = alpha**ell
    field = psi15.field
    alpha = field.one + field.sqrt_disc
    val = evaluate(psi15, QIdeal.from_element(alpha))
    assert val == psi15.algebra.from_quad(alpha)


def test_value_on_rational_prime(psi15):
    # 7 is inert in the rational sense chi(7) = -1: psi((7)) = -7
    field = psi15.field
    val = evaluate(psi15, QIdeal.from_element(field.element(7)))
    assert val == psi15.algebra.scalar(-7)


def test_multiplicativity(psi15):
    field = psi15.field
    p2 = QIdeal.primes_over(field, 2)[0]
    p7 = QIdeal.primes_over(field, 7)[0]
    lhs = evaluate(psi15, p2 * p7)
    rhs = evaluate(psi15, p2) * evaluate(psi15, p7)
    assert lhs == rhs


def test_unitary_size(psi15):
    # |psi(P)|**2 = N(P) at the distinguished embedding
    field = psi15.field
    p2 = QIdeal.primes_over(field, 2)[0]
    with mpmath.workprec(120):
        emb = psi15.algebra.distinguished_embedding()
        v = psi15.algebra.embed(evaluate(psi15, p2), emb)
        assert abs(abs(v) ** 2 - 2) < 1e-25


def test_non_coprime_ideal_vanishes(psi15):
    field = psi15.field
    p3 = QIdeal.primes_over(field, 3)[0]
    assert evaluate(psi15, p3).is_zero


def test_call_matches_evaluate(psi15):
    field = psi15.field
    p2 = QIdeal.primes_over(field, 2)[0]
    assert psi15(p2) == evaluate(psi15, p2)


def test_record_roundtrip(psi15):
    rec = record(psi15)
    psi2 = from_record(rec)
    field = psi2.field
    assert psi2.level == psi15.level
    for p in (2, 7, 11, 13):
        for P in QIdeal.primes_over(field, p):
            assert evaluate(psi2, P) == evaluate(psi15, P)


def test_record_is_json_friendly(psi15):
    import json
    rec = record(psi15)
    json.dumps(rec)    # no exotic types anywhere


def test_conductor_primitive(psi15):
    assert conductor(psi15) == psi15.modulus


def test_extend_to_conductor(psi15):
    # view psi mod p2 * m, then push back down to the conductor
    field = psi15.field
    p2 = QIdeal.primes_over(field, 2)[0]
    big = p2 * psi15.modulus
    inflated = None
    for eta in enumerate_eta(field, big):
        try:
            cand = build(field, big, 1, eta)
        except (IncompatibleCharacterError, NoSuchCharacterError):
            continue
        if conductor(cand) == psi15.modulus:
            inflated = cand
            break
    assert inflated is not None
    back = extend_to_conductor(inflated, psi15.modulus)
    p7 = QIdeal.primes_over(field, 7)[0]
    assert evaluate(back, p7) == evaluate(inflated, p7)


def test_no_character_when_torsion_obstructs():
    # mod sqrt(-3) the cube roots of unity are congruent to 1, so ell = 1
    # admits no character at all
    field = FieldE(-3)
    m = QIdeal.from_element(field.sqrt_disc)
    etas = enumerate_eta(field, m)
    assert etas
    with pytest.raises(NoSuchCharacterError):
        build(field, m, 1, etas[0])


def test_incompatible_eta_rejected():
    # mod p2**3 at disc -4 half the restricting characters clash with the
    # global unit i; build must reject exactly those
    field = FieldE(-4)
    m = minimal_conductor(field)
    outcomes = {"ok": 0, "reject": 0}
    for eta in enumerate_eta(field, m):
        try:
            build(field, m, 1, eta)
            outcomes["ok"] += 1
        except IncompatibleCharacterError:
            outcomes["reject"] += 1
    assert outcomes["ok"] >= 1
    assert outcomes["reject"] >= 1


def test_twist_by_quadratic_character(psi15):
    chi = dirichlet_from_kronecker(5)
    tw = twist(psi15, chi)
    assert tw.weight == psi15.weight
    field = psi15.field
    with mpmath.workprec(120):
        for p in (2, 7, 13):
            P = QIdeal.primes_over(field, p)[0]
            n = int(P.norm())
            a = tw.algebra.embed(evaluate(tw, P),
                                 tw.algebra.distinguished_embedding())
            b = psi15.algebra.embed(evaluate(psi15, P),
                                    psi15.algebra.distinguished_embedding())
            assert abs(a - chi.sign(n % 5) * b) < 1e-20


def test_build_rejects_bad_ell(psi15):
    field = psi15.field
    m = psi15.modulus
    with pytest.raises(ValueError):
        build(field, m, 0, psi15.eta)
