"""Theta series of Hecke characters: exact q-expansions and eigenform checks.

The form attached to psi is f = sum_a psi(a) q^{N(a)} over integral ideals.
Coefficients are kept exactly in the value algebra; a parallel complex
mirror at the distinguished embedding supports the numeric checks
(reality, Ramanujan bound, coefficient-field degree probing).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import mpmath
import sympy

from .grossenchar import Grossenchar, evaluate
from .quadfield import FieldE, QIdeal
from .valuefield import AlgebraElement, _precision_bits


def _prime_pool(field: FieldE, B: int) -> list[tuple[int, QIdeal]]:
    pool = []
    for p in sympy.primerange(2, B + 1):
        for P in QIdeal.primes_over(field, p):
            q = int(P.norm())
            if q <= B:
                pool.append((q, P))
    return pool


def _factored_ideals(field: FieldE, B: int):
    """All integral ideals of norm <= B as (norm, ideal, factorization),
    factorization = tuple of (pool index, exponent)."""
    pool = _prime_pool(field, B)
    items: list[tuple[int, QIdeal, tuple[tuple[int, int], ...]]] = []

    def rec(start: int, norm: int, ideal: QIdeal, fac: tuple) -> None:
        items.append((norm, ideal, fac))
        for j in range(start, len(pool)):
            q, P = pool[j]
            if norm * q > B:
                continue
            e, nn, cur = 1, norm * q, ideal * P
            while nn <= B:
                rec(j + 1, nn, cur, fac + ((j, e),))
                e += 1
                nn *= q
                if nn <= B:
                    cur = cur * P

    rec(0, 1, QIdeal.unit_ideal(field), ())
    items.sort(key=lambda t: t[0])
    return pool, items


def ideals_of_norm_up_to(field: FieldE, B: int):
    """Yield (norm, ideal) for every integral ideal of norm <= B, by norm."""
    assert B >= 1
    _, items = _factored_ideals(field, B)
    for norm, ideal, _ in items:
        yield norm, ideal


@dataclass(frozen=True)
class CMForm:
    """q-expansion record of the newform attached to psi.

    coeffs[n] is a_n in the value algebra (index 0 unused, a_1 = 1);
    complex_coeffs mirrors it at the distinguished embedding.
    """

    psi: Grossenchar
    level: int
    weight: int
    bound: int
    coeffs: tuple[AlgebraElement, ...]
    complex_coeffs: tuple

    def a(self, n: int) -> AlgebraElement:
        return self.coeffs[n]


def q_expansion(psi: Grossenchar, B: int = 2000) -> CMForm:
    """Assemble a_n = sum_{N(a) = n} psi(a) exactly for n <= B."""
    alg = psi.algebra
    pool, items = _factored_ideals(psi.field, B)
    prime_values = [evaluate(psi, P) for _, P in pool]
    power_cache: dict[tuple[int, int], AlgebraElement] = {}

    def value_at(j: int, e: int) -> AlgebraElement:
        key = (j, e)
        if key not in power_cache:
            if e == 1:
                power_cache[key] = prime_values[j]
            else:
                power_cache[key] = value_at(j, e - 1) * prime_values[j]
        return power_cache[key]

    coeffs = [alg.zero for _ in range(B + 1)]
    for norm, _, fac in items:
        val = alg.one
        for j, e in fac:
            if prime_values[j].is_zero:
                val = alg.zero
                break
            val = val * value_at(j, e)
        if not val.is_zero:
            coeffs[norm] = coeffs[norm] + val

    with mpmath.workprec(_precision_bits()):
        emb = alg.distinguished_embedding()
        complex_coeffs = tuple(alg.embed(c, emb) for c in coeffs)
    return CMForm(psi, psi.level, psi.weight, B, tuple(coeffs),
                  complex_coeffs)


def hecke_verify(f: CMForm) -> dict:
    """Exact eigenform identity checks on the stored coefficients.

    Verifies a_1 = 1, coprime multiplicativity, the prime-power recursion
    (with the p | N degeneration), vanishing at inert primes, plus the
    numeric reality and Ramanujan bounds at the distinguished embedding.
    Returns a report dict; failures carry their witness (m, n) or (p, j).
    """
    alg = f.psi.algebra
    field = f.psi.field
    B = f.bound
    k = f.weight
    failures: list[tuple] = []
    checks = 0

    if f.coeffs[1] != alg.one:
        failures.append(("a1",))
    checks += 1

    # coprime multiplicativity: a_m a_n = a_{mn} for all coprime pairs
    for m in range(2, isqrt(B) + 1):
        am = f.coeffs[m]
        for n in range(m + 1, B // m + 1):
            if gcd(m, n) != 1:
                continue
            checks += 1
            prod = f.coeffs[m * n]
            if am.is_zero or f.coeffs[n].is_zero:
                ok = prod.is_zero
            else:
                ok = am * f.coeffs[n] == prod
            if not ok:
                failures.append(("mult", m, n))

    # prime powers: a_{p^{j+1}} = a_p a_{p^j} - p^{k-1} a_{p^{j-1}} off the
    # level (the nebentypus is trivial here), a_p a_{p^j} on it
    for p in sympy.primerange(2, isqrt(B) + 1):
        scale = alg.scalar(p ** (k - 1))
        j = 1
        while p ** (j + 1) <= B:
            checks += 1
            lhs = f.coeffs[p ** (j + 1)]
            rhs = f.coeffs[p] * f.coeffs[p ** j]
            if f.level % p != 0:
                rhs = rhs - scale * f.coeffs[p ** (j - 1)]
            if lhs != rhs:
                failures.append(("recursion", p, j))
            j += 1

    # CM vanishing at inert primes
    for p in sympy.primerange(2, B + 1):
        if field.chi(p) == -1:
            checks += 1
            if not f.coeffs[p].is_zero:
                failures.append(("inert", p))

    max_imag = 0.0
    ramanujan_ok = True
    with mpmath.workprec(_precision_bits()):
        for n in range(1, B + 1):
            im = abs(mpmath.im(f.complex_coeffs[n]))
            if im > max_imag:
                max_imag = float(im)
        for p in sympy.primerange(2, B + 1):
            if f.level % p == 0:
                continue
            checks += 1
            bound = 2 * mpmath.mpf(p) ** (mpmath.mpf(k - 1) / 2) + 1e-6
            if abs(f.complex_coeffs[p]) > bound:
                ramanujan_ok = False
                failures.append(("ramanujan", p))

    reality = max_imag < 1e-9
    if not reality:
        failures.append(("reality", max_imag))
    return {
        "ok": not failures,
        "checks": checks,
        "failures": failures,
        "max_imag": max_imag,
        "reality": reality,
        "ramanujan": ramanujan_ok,
    }


def coefficient_field_probe(f: CMForm, primes: int = 5) -> tuple[int, bool]:
    """(degree estimate for Q({a_n}), reality flag).

    The degree of Q(a_p) is read off as the number of distinct images of
    a_p under all complex embeddings of the value algebra (the rank of the
    span of its powers); the estimate is the maximum over several split
    primes off the level.
    """
    assert f.bound >= 100
    alg = f.psi.algebra
    field = f.psi.field
    best = 1
    used = 0
    with mpmath.workprec(_precision_bits()):
        tol = mpmath.mpf(2) ** (-_precision_bits() // 2)
        embs = alg.embeddings()
        for p in sympy.primerange(2, f.bound + 1):
            if used >= primes:
                break
            if f.level % p == 0 or field.chi(p) != 1:
                continue
            ap = f.coeffs[p]
            if ap.is_zero:
                continue
            used += 1
            values: list = []
            for emb in embs:
                v = alg.embed(ap, emb)
                if not any(abs(v - w) < tol for w in values):
                    values.append(v)
            best = max(best, len(values))
        max_imag = max(
            (abs(mpmath.im(c)) for c in f.complex_coeffs[1:]),
            default=mpmath.mpf(0))
    return best, float(max_imag) < 1e-9
