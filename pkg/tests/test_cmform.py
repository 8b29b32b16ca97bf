"""q-expansions of the attached newforms and the eigenform identity suite."""

from __future__ import annotations

import dataclasses

import pytest

from grossen.chargroup import enumerate_eta
from grossen.cmform import (coefficient_field_probe, hecke_verify,
                            ideals_of_norm_up_to, q_expansion)
from grossen.grossenchar import (IncompatibleCharacterError,
                                 NoSuchCharacterError, build,
                                 minimal_conductor)
from grossen.quadfield import FieldE, kronecker


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
def form4():
    return q_expansion(_witness(-4), 400)


@pytest.fixture(scope="module")
def form15():
    return q_expansion(_witness(-15, order=2), 400)


def test_ideal_counts_match_character_sum():
    # the number of integral ideals of norm n is sum_{d | n} chi(d)
    for disc in (-4, -15, -23):
        field = FieldE(disc)
        counts = {}
        for norm, _ in ideals_of_norm_up_to(field, 150):
            counts[norm] = counts.get(norm, 0) + 1
        for n in range(1, 151):
            want = sum(kronecker(disc, d) for d in range(1, n + 1) if n % d == 0)
            assert counts.get(n, 0) == want


def test_known_rational_form(form4):
    # weight-2 level-32 rational eigenform values
    alg = form4.psi.algebra
    assert form4.level == 32
    assert form4.weight == 2
    assert form4.coeffs[1] == alg.one
    assert form4.coeffs[2].is_zero and form4.coeffs[3].is_zero
    assert form4.coeffs[5] == alg.scalar(-2)
    assert form4.coeffs[9] == alg.scalar(-3)
    assert form4.coeffs[13] == alg.scalar(6)
    assert form4.coeffs[25] == alg.scalar(-1)
    assert form4.coeffs[45] == alg.scalar(6)     # a5 * a9
    assert form4.coeffs[49] == alg.scalar(-7)


def test_inert_primes_vanish(form15):
    field = form15.psi.field
    import sympy
    for p in sympy.primerange(2, 400):
        if field.chi(p) == -1:
            assert form15.coeffs[p].is_zero


def test_hecke_verify_passes(form4, form15):
    for f in (form4, form15):
        res = hecke_verify(f)
        assert res["ok"], res["failures"][:5]
        assert res["reality"] and res["ramanujan"]
        assert res["max_imag"] < 1e-9
        assert res["checks"] > 100


def test_hecke_verify_detects_corruption(form4):
    alg = form4.psi.algebra
    coeffs = list(form4.coeffs)
    coeffs[5] = coeffs[5] + alg.one          # break a5
    broken = dataclasses.replace(form4, coeffs=tuple(coeffs))
    res = hecke_verify(broken)
    assert not res["ok"]
    kinds = {f[0] for f in res["failures"]}
    assert "mult" in kinds or "recursion" in kinds


def test_coefficient_field_probe(form4, form15):
    deg, real = coefficient_field_probe(form4)
    assert (deg, real) == (1, True)
    deg15, real15 = coefficient_field_probe(form15)
    assert (deg15, real15) == (2, True)
