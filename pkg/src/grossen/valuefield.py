"""Exact value algebra for character values, and rationality-field logic.

Values of the ideal characters built here live in a presented commutative
algebra over Q with generators w (the quadratic integer), z (a root of
unity of order r) and radicals b_i with b_i^{n_i} equal to a prescribed
element.  Identities (Hecke relations, multiplicativity) hold by
construction in the algebra even when it has zero divisors; questions
about field degrees are always answered by exact Kummer-style power
tests, never by the algebra dimension.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt, lcm, prod

import mpmath
import sympy

from .classgroup import class_group
from .quadfield import FieldE, QuadElem, fd, kronecker


def _precision_bits() -> int:
    return int(os.environ.get("GROSSEN_PRECISION_BITS", "256"))


def _split_exponents(field: FieldE, r: int, sign: int) -> tuple[int, ...]:
    """Exponents k mod r with chi_E(k) = sign: the Galois orbit of
    exp(2 pi i / r) over E (sign +1) and its complement (sign -1)."""
    return tuple(k for k in range(1, r + 1)
                 if gcd(k, r) == 1 and kronecker(field.disc, k) == sign)


def _field_zeta_rule(field: FieldE, r: int) -> list[tuple[Fraction, Fraction]]:
    """For E inside Q(zeta_r): coefficients (low to high, in w-coords) of
    z**(phi(r)/2) in the factor of the cyclotomic polynomial over E whose
    roots are exp(2 pi i k / r) for chi_E(k) = 1.  Recognized numerically
    and certified exactly: the factor times its conjugate must equal the
    cyclotomic polynomial."""
    assert r % abs(field.disc) == 0
    ks = _split_exponents(field, r, 1)
    with mpmath.workprec(4 * _precision_bits()):
        poly = [mpmath.mpc(1)]
        for k in ks:
            root = mpmath.exp(2j * mpmath.pi * k / r)
            new = [mpmath.mpc(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] += c
                new[i] -= root * c
            poly = new
        sq = mpmath.sqrt(abs(field.disc))
        coeffs: list[QuadElem] = []
        for c in poly[:-1]:
            q = _to_fraction(mpmath.im(c) / sq, 4)
            p = _to_fraction(mpmath.re(c), 4)
            coeffs.append(_from_sqrt_basis(field, p, q))
    # certify: f * conj(f) == Phi_r exactly
    conj = [QuadElem(field, c.x + c.y * field.disc, -c.y) for c in coeffs]
    f = coeffs + [field.one]
    g = conj + [field.one]
    prod_poly = [field.zero] * (len(f) + len(g) - 1)
    for i, ci in enumerate(f):
        for j, cj in enumerate(g):
            prod_poly[i + j] = prod_poly[i + j] + ci * cj
    x = sympy.Symbol("x")
    phi_coeffs = [int(c) for c in
                  sympy.Poly(sympy.cyclotomic_poly(r, x)).all_coeffs()][::-1]
    assert len(prod_poly) == len(phi_coeffs)
    for got, want in zip(prod_poly, phi_coeffs):
        assert got == field.element(want), "cyclotomic factor mismatch"
    return [(-c.x, -c.y) for c in coeffs]


# ---------------------------------------------------------------------------
# presented value algebra

Monomial = tuple[int, int, tuple[int, ...]]


@dataclass(frozen=True)
class AlgebraElement:
    """Exact element: rational coordinates on the monomial basis."""

    algebra: ValueAlgebra
    coords: tuple[tuple[Monomial, Fraction], ...]

    def _dict(self) -> dict[Monomial, Fraction]:
        return dict(self.coords)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        acc = self._dict()
        for key, c in other.coords:
            acc[key] = acc.get(key, Fraction(0)) + c
        return self.algebra._wrap(acc)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        acc = self._dict()
        for key, c in other.coords:
            acc[key] = acc.get(key, Fraction(0)) - c
        return self.algebra._wrap(acc)

    def __neg__(self) -> AlgebraElement:
        return self.algebra._wrap({k: -c for k, c in self.coords})

    def __mul__(self, other) -> AlgebraElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.algebra.zero
            return self.algebra._wrap({k: c * other for k, c in self.coords})
        assert self.algebra is other.algebra
        acc: dict[Monomial, Fraction] = {}
        for k1, c1 in self.coords:
            for k2, c2 in other.coords:
                key = (k1[0] + k2[0], k1[1] + k2[1],
                       tuple(a + b for a, b in zip(k1[2], k2[2])))
                self.algebra._reduce_into(acc, key, c1 * c2)
        return self.algebra._wrap(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> AlgebraElement:
        assert e >= 0
        out = self.algebra.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return dict(self.coords) == dict(other.coords)

    def __hash__(self) -> int:
        return hash(frozenset(self.coords))

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def embed(self, embedding=None) -> mpmath.mpc:
        return self.algebra.embed(self, embedding)


class ValueAlgebra:
    """Q-algebra Q[w, z, b_1..b_g] with w quadratic, z an r-th root of
    unity, and b_i^{n_i} = gamma_i for prescribed gamma_i free of b's.

    When E sits inside Q(zeta_r), z is presented by the factor of the
    cyclotomic polynomial over E whose roots contain exp(2 pi i / r) at
    the distinguished embedding: the ring is then the honest field
    E(zeta_r) = Q(zeta_r), and in particular z**(r/w) equals the
    canonical root of unity of E, so values do not depend on the choice
    of ideal generators."""

    def __init__(self, field: FieldE, r: int,
                 radicals: list[tuple[int, AlgebraElement | dict]] = ()):  # noqa: B006
        self.field = field
        self.r = max(int(r), 1)
        self.over_field = self.r % abs(field.disc) == 0
        if self.over_field:
            self.phi = int(sympy.totient(self.r)) // 2
            # rule[j] = E-coefficient of z**j in z**phi, as (x, y) w-coords
            self._zeta_rule = _field_zeta_rule(field, self.r)
            self._zeta_root_exponents = (
                _split_exponents(field, self.r, 1),
                _split_exponents(field, self.r, -1))
        else:
            self.phi = int(sympy.totient(self.r))
            poly = sympy.Poly(sympy.cyclotomic_poly(self.r, sympy.Symbol("x")))
            coeffs = [int(c) for c in poly.all_coeffs()]
            # z**phi = -(c_phi + ... + c_1 z**(phi-1))
            rev = [-c for c in coeffs[1:]][::-1]
            self._zeta_rule = [(Fraction(c), Fraction(0)) for c in rev]
            self._zeta_root_exponents = None
        self.ns: tuple[int, ...] = tuple(n for n, _ in radicals)
        self.radicands: list[dict[Monomial, Fraction]] = []
        for n, gamma in radicals:
            assert n >= 1
            if isinstance(gamma, AlgebraElement):
                gamma = dict(gamma.coords)
            fixed: dict[Monomial, Fraction] = {}
            for (a, b, cs), c in gamma.items():
                assert not any(cs), "radicand must be free of radicals"
                key = (a, b, (0,) * len(radicals))
                fixed[key] = fixed.get(key, Fraction(0)) + Fraction(c)
            self.radicands.append(fixed)
        self.dim = 2 * self.phi * prod(self.ns) if self.ns else 2 * self.phi
        self._embed_cache: dict = {}
        self._zeta_memo: list[dict[tuple[int, int], Fraction]] = []

    # -- construction helpers

    def _wrap(self, acc: dict[Monomial, Fraction]) -> AlgebraElement:
        items = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
        return AlgebraElement(self, items)

    @property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, ())

    @property
    def one(self) -> AlgebraElement:
        return self.scalar(1)

    def scalar(self, c) -> AlgebraElement:
        c = Fraction(c)
        if c == 0:
            return self.zero
        key = (0, 0, (0,) * len(self.ns))
        return AlgebraElement(self, ((key, c),))

    def monomial(self, a: int, b: int, cs: tuple[int, ...] = None) -> AlgebraElement:
        if cs is None:
            cs = (0,) * len(self.ns)
        acc: dict[Monomial, Fraction] = {}
        self._reduce_into(acc, (a, b, tuple(cs)), Fraction(1))
        return self._wrap(acc)

    def omega(self) -> AlgebraElement:
        return self.monomial(1, 0)

    def zeta_pow(self, k: int) -> AlgebraElement:
        return self.monomial(0, k % self.r)

    def beta(self, i: int) -> AlgebraElement:
        cs = [0] * len(self.ns)
        cs[i] = 1
        return self.monomial(0, 0, tuple(cs))

    def from_quad(self, x: QuadElem) -> AlgebraElement:
        return self.scalar(x.x) + self.scalar(x.y) * self.omega()

    # -- normal form

    def _zeta_reduced(self, b: int) -> dict[tuple[int, int], Fraction]:
        """z**b in the basis w**a z**j with j < phi, memoized per power."""
        if b < self.phi:
            return {(0, b): Fraction(1)}
        cache = self._zeta_memo
        d = self.field.disc
        while len(cache) <= b - self.phi:
            k = self.phi + len(cache)
            cur: dict[tuple[int, int], Fraction] = {}
            if k == self.phi:
                for j, (cx, cy) in enumerate(self._zeta_rule):
                    if cx:
                        cur[(0, j)] = cx
                    if cy:
                        cur[(1, j)] = cy
            else:
                base = cache[0]
                for (a1, j1), c in cache[-1].items():
                    if j1 + 1 < self.phi:
                        key = (a1, j1 + 1)
                        cur[key] = cur.get(key, Fraction(0)) + c
                        continue
                    for (a2, j2), c2 in base.items():
                        cc = c * c2
                        if a1 + a2 < 2:
                            key = (a1 + a2, j2)
                            cur[key] = cur.get(key, Fraction(0)) + cc
                        else:
                            # w**2 = d w - (d*d - d)/4
                            cur[(1, j2)] = cur.get((1, j2),
                                                   Fraction(0)) + cc * d
                            low = cc * Fraction(-(d * d - d), 4)
                            cur[(0, j2)] = cur.get((0, j2),
                                                   Fraction(0)) + low
            cache.append({key: v for key, v in cur.items() if v})
        return cache[b - self.phi]

    def _reduce_into(self, acc: dict[Monomial, Fraction], key: Monomial,
                     coeff: Fraction) -> None:
        if coeff == 0:
            return
        a, b, cs = key
        d = self.field.disc
        if a >= 2:
            # w**2 = Tr(w) w - N(w) = d*w - (d*d - d)/4
            rest = (a - 2, b, cs)
            self._reduce_into(acc, (rest[0] + 1, b, cs), coeff * d)
            self._reduce_into(acc, rest, coeff * Fraction(-(d * d - d), 4))
            return
        if b >= self.phi:
            for (za, zj), zc in self._zeta_reduced(b).items():
                self._reduce_into(acc, (a + za, zj, cs), coeff * zc)
            return
        for i, n in enumerate(self.ns):
            if cs[i] >= n:
                lowered = list(cs)
                lowered[i] -= n
                for gkey, gc in self.radicands[i].items():
                    merged = (a + gkey[0], b + gkey[1],
                              tuple(x + y for x, y in zip(lowered, gkey[2])))
                    self._reduce_into(acc, merged, coeff * gc)
                return
        acc[key] = acc.get(key, Fraction(0)) + coeff

    # -- complex embeddings

    def distinguished_embedding(self):
        return self.embeddings()[0]

    def embeddings(self):
        """All ring embeddings into C: 2 choices of w, phi(r) of z, and
        n_i roots for each radical, principal-first.  The first entry is
        the distinguished embedding."""
        key = ("emb", _precision_bits())
        if key in self._embed_cache:
            return self._embed_cache[key]
        with mpmath.workprec(_precision_bits()):
            d = self.field.disc
            sq = mpmath.sqrt(abs(d))
            omegas = [(d + mpmath.mpc(0, 1) * sq) / 2,
                      (d - mpmath.mpc(0, 1) * sq) / 2]
            out = []
            for which, w in enumerate(omegas):
                if self._zeta_root_exponents is None:
                    ks = [k for k in range(1, self.r + 1)
                          if gcd(k, self.r) == 1]
                else:
                    # roots of the chosen cyclotomic factor over E depend
                    # on the embedding of E
                    ks = self._zeta_root_exponents[which]
                for k in ks:
                    z = mpmath.exp(2j * mpmath.pi * k / self.r)
                    out.extend(self._extend_embedding({"w": w, "z": z}, 0))
            # distinguished first: w = principal, z = exp(2 pi i / r)
            self._embed_cache[key] = out
            return out

    def _extend_embedding(self, emb: dict, i: int):
        if i == len(self.ns):
            return [dict(emb)]
        n = self.ns[i]
        val = self._embed_raw(self.radicands[i], emb)
        base = mpmath.power(val, mpmath.mpf(1) / n) if val != 0 else mpmath.mpc(0)
        out = []
        for s in range(n):
            emb[f"b{i}"] = base * mpmath.exp(2j * mpmath.pi * s / n)
            out.extend(self._extend_embedding(emb, i + 1))
        return out

    def _embed_raw(self, coords: dict[Monomial, Fraction], emb: dict):
        total = mpmath.mpc(0)
        for (a, b, cs), c in (coords.items() if isinstance(coords, dict)
                              else coords):
            term = mpmath.mpf(c.numerator) / c.denominator
            term = term * emb["w"] ** a * emb["z"] ** b
            for i, e in enumerate(cs):
                if e:
                    term = term * emb[f"b{i}"] ** e
            total += term
        return total

    def embed(self, x: AlgebraElement, embedding=None):
        with mpmath.workprec(_precision_bits()):
            emb = embedding if embedding is not None else self.embeddings()[0]
            return self._embed_raw(x.coords, emb)


# ---------------------------------------------------------------------------
# exact power tests

def _to_fraction(x, bound: int) -> Fraction:
    """Exact binary value of an mpmath real, snapped to denominator <= bound."""
    scaled = mpmath.floor(x * (1 << 200) + mpmath.mpf("0.5"))
    return Fraction(int(scaled), 1 << 200).limit_denominator(bound)


def _rat_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def is_square(field: FieldE, gamma: QuadElem) -> bool:
    """Exact test for gamma in (E^x)^2 (or gamma = 0)."""
    d = field.disc
    x = gamma.x + gamma.y * Fraction(d, 2)
    y = gamma.y / 2
    if y == 0:
        return _rat_sqrt(x) is not None or _rat_sqrt(x / d) is not None
    s = _rat_sqrt(x * x - d * y * y)
    if s is None:
        return False
    for t in ((x + s) / 2, (x - s) / 2):
        u = _rat_sqrt(t)
        if u is not None and u != 0:
            v = y / (2 * u)
            cand = _from_sqrt_basis(field, u, v)
            if cand * cand == gamma:
                return True
    return False


def _from_sqrt_basis(field: FieldE, u: Fraction, v: Fraction) -> QuadElem:
    # u + v*sqrt(d) as x + y*w with w = (d + sqrt d)/2
    return QuadElem(field, u - v * field.disc, 2 * v)


def is_cube(field: FieldE, gamma: QuadElem) -> bool:
    """Exact test for gamma in (E^x)^3, by numeric root lift, rational
    reconstruction and exact verification."""
    if gamma == field.zero:
        return True
    bound = max(10 ** 6, 4 * abs(field.disc))
    for bits in (_precision_bits(), 2 * _precision_bits()):
        with mpmath.workprec(bits):
            d = field.disc
            w = (d + mpmath.mpc(0, 1) * mpmath.sqrt(abs(d))) / 2
            g = mpmath.mpf(gamma.x.numerator) / gamma.x.denominator \
                + (mpmath.mpf(gamma.y.numerator) / gamma.y.denominator) * w
            for t in range(3):
                c = mpmath.power(g, mpmath.mpf(1) / 3) \
                    * mpmath.exp(2j * mpmath.pi * t / 3)
                v = mpmath.im(c) / mpmath.im(w)
                u = mpmath.re(c) - v * mpmath.re(w)
                cand = QuadElem(field, _to_fraction(u, bound),
                                _to_fraction(v, bound))
                if cand * cand * cand == gamma:
                    return True
    return False


def quartic_nth_power_root(field: FieldE, r: int,
                           gamma: AlgebraElement, n: int) -> AlgebraElement | None:
    """A root delta in E(zeta_r) with delta^n = gamma, or None.

    Numeric root lift at two independent complex embeddings, rational
    reconstruction with a denominator bound, exact re-verification by
    algebra multiplication.  Sound in both directions: a returned root is
    verified exactly, and an existing root is found because the finite
    phase search covers all embeddings of it.
    """
    alg = gamma.algebra
    assert alg.phi == 2 and not alg.ns and not alg.over_field
    bound = 4 * abs(field.disc) * r * r
    basis = [(0, 0, ()), (1, 0, ()), (0, 1, ()), (1, 1, ())]
    for bits in (_precision_bits(), 2 * _precision_bits()):
        with mpmath.workprec(bits):
            embs = alg.embeddings()
            # independent pair: same w, the two primitive-root choices of z
            e1, e2 = embs[0], embs[1]
            m = mpmath.matrix(4, 4)
            for j, (a, b, _) in enumerate(basis):
                v1 = e1["w"] ** a * e1["z"] ** b
                v2 = e2["w"] ** a * e2["z"] ** b
                m[0, j], m[1, j] = mpmath.re(v1), mpmath.im(v1)
                m[2, j], m[3, j] = mpmath.re(v2), mpmath.im(v2)
            g1 = alg._embed_raw(gamma.coords, e1)
            g2 = alg._embed_raw(gamma.coords, e2)
            if g1 == 0 or g2 == 0:
                return None
            r1 = mpmath.power(g1, mpmath.mpf(1) / n)
            r2 = mpmath.power(g2, mpmath.mpf(1) / n)
            for s1 in range(n):
                t1 = r1 * mpmath.exp(2j * mpmath.pi * s1 / n)
                for s2 in range(n):
                    t2 = r2 * mpmath.exp(2j * mpmath.pi * s2 / n)
                    rhs = mpmath.matrix(
                        [mpmath.re(t1), mpmath.im(t1),
                         mpmath.re(t2), mpmath.im(t2)])
                    try:
                        sol = mpmath.lu_solve(m, rhs)
                    except ZeroDivisionError:
                        continue
                    coords = {
                        (key[0], key[1], ()): _to_fraction(sol[j], bound)
                        for j, key in enumerate(basis)}
                    cand = alg._wrap(coords)
                    if cand ** n == gamma:
                        return cand
    return None


# ---------------------------------------------------------------------------
# conditions (Q1) and (R1)

@dataclass(frozen=True)
class Q1Result:
    holds: bool
    signs: tuple[int, ...] | None


def check_Q1_data(field: FieldE, thetas: list[QuadElem],
                  orders: list[int], ell: int) -> Q1Result:
    g = len(thetas)
    assert g >= 2, "Q1 not applicable"
    gammas = [t ** ell for t in thetas]
    if all(n == 2 for n in orders):
        for signs in product([1, -1], repeat=g - 1):
            eps = (1,) + signs
            if all(is_square(field, gammas[i] * gammas[j] * (eps[i] * eps[j]))
                   for i in range(g) for j in range(i + 1, g)):
                return Q1Result(True, eps)
        return Q1Result(False, None)
    if all(n == 3 for n in orders):
        # -1 is a cube, so signs are irrelevant; field equality of cubic
        # radical extensions tests gamma_i gamma_j or gamma_i gamma_j^2
        ok = all(
            is_cube(field, gammas[i] * gammas[j])
            or is_cube(field, gammas[i] * gammas[j] * gammas[j])
            for i in range(g) for j in range(i + 1, g))
        return Q1Result(ok, (1,) * g if ok else None)
    raise ValueError("unsupported generator orders for Q1")


def check_Q1(field: FieldE, ell: int) -> Q1Result:
    cg = class_group(field, coprime_to=abs(field.disc))
    if len(cg.orders) < 2:
        raise ValueError("Q1 not applicable")
    return check_Q1_data(field, list(cg.thetas), list(cg.orders), ell)


@dataclass(frozen=True)
class R1Result:
    holds: bool
    witnesses: tuple[int | None, ...]


def check_R1(field: FieldE, ell: int, r: int) -> R1Result:
    """For each class-group generator, search zeta in mu_{E(zeta_r)} with
    (zeta theta^ell)^{1/n} in E(zeta_r)."""
    assert r in (4, 6)
    # the test needs E(zeta_r) to be an honest quartic field
    assert r % abs(field.disc) != 0
    cg = class_group(field, coprime_to=abs(field.disc))
    assert cg.orders, "R1 needs a nontrivial class group"
    alg = ValueAlgebra(field, r, [])
    witnesses: list[int | None] = []
    for theta, n in zip(cg.thetas, cg.orders):
        gamma0 = alg.from_quad(theta ** ell)
        found = None
        for k in range(r):
            if quartic_nth_power_root(field, r, alg.zeta_pow(k) * gamma0, n) is not None:
                found = k
                break
        witnesses.append(found)
    return R1Result(all(w is not None for w in witnesses), tuple(witnesses))


# ---------------------------------------------------------------------------
# value-field degree and the rationality field

def _cyclotomic_degree_over_E(field: FieldE, r: int) -> int:
    phi = int(sympy.totient(r))
    if r % abs(field.disc) == 0:
        return phi // 2
    return phi


def _radical_rank_two(field: FieldE, gammas: list[QuadElem]) -> int:
    # F_2-rank of the classes of gammas in E^x/(E^x)^2
    count_trivial = 0
    g = len(gammas)
    for mask in range(1, 1 << g):
        p = field.one
        for i in range(g):
            if mask >> i & 1:
                p = p * gammas[i]
        if is_square(field, p):
            count_trivial += 1
    size = (1 << g) // (count_trivial + 1)
    assert (count_trivial + 1) * size == 1 << g
    rank = size.bit_length() - 1
    return rank


def _radical_rank_three(field: FieldE, gammas: list[QuadElem]) -> int:
    g = len(gammas)
    count_trivial = 0
    total = 3 ** g
    for exps in product(range(3), repeat=g):
        if all(e == 0 for e in exps):
            continue
        p = field.one
        for i, e in enumerate(exps):
            p = p * gammas[i] ** e
        if is_cube(field, p):
            count_trivial += 1
    size = total // (count_trivial + 1)
    assert (count_trivial + 1) * size == total
    rank = 0
    while 3 ** rank < size:
        rank += 1
    assert 3 ** rank == size
    return rank


def value_field_degree(psi) -> int:
    """[L : E] for the value field L of psi, by exact Kummer tests."""
    field = psi.field
    r = max(psi.eta.order, 1)
    d0 = _cyclotomic_degree_over_E(field, r)
    ns = list(psi.cg.orders)
    if not ns:
        return d0
    thetas = list(psi.cg.thetas)
    ell = psi.ell
    if all(n == 2 for n in ns):
        if r <= 2:
            gammas = [psi.eta.sign(t) * t ** ell for t in thetas]
            return d0 * (1 << _radical_rank_two(field, gammas))
        if r in (4, 6) and len(ns) == 1:
            assert r % abs(field.disc) != 0
            alg = ValueAlgebra(field, r, [])
            ang = psi.eta.angle(thetas[0])
            k = ang * r
            assert k.denominator == 1
            gamma = alg.zeta_pow(int(k)) * alg.from_quad(thetas[0] ** ell)
            root = quartic_nth_power_root(field, r, gamma, 2)
            return d0 * (1 if root is not None else 2)
        raise ValueError("unsupported degree configuration")
    if all(n == 3 for n in ns) and r <= 2:
        gammas = [psi.eta.sign(t) * t ** ell for t in thetas]
        return d0 * 3 ** _radical_rank_three(field, gammas)
    raise ValueError("unsupported degree configuration")


@dataclass(frozen=True)
class RationalityField:
    """The totally real field K with L = EK, by degree, a monic integer
    defining polynomial, and the exact field discriminant."""

    degree: int
    poly: tuple[int, ...]
    disc: int


def _quad_field(D: int) -> RationalityField:
    assert D > 1 and fd(D) == D
    if D % 4 == 0:
        return RationalityField(2, (1, 0, -D // 4), D)
    return RationalityField(2, (1, -1, -(D - 1) // 4), D)


def _poly_disc(coeffs: tuple[int, ...]) -> int:
    x = sympy.Symbol("x")
    f = sum(c * x ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs))
    return int(sympy.discriminant(sympy.Poly(f, x)))


def dedekind_maximal(coeffs: tuple[int, ...], p: int) -> bool:
    """Whether Z[x]/(f) is maximal at p (Dedekind's criterion)."""
    x = sympy.Symbol("x")
    f = sympy.Poly(sum(c * x ** (len(coeffs) - 1 - i)
                       for i, c in enumerate(coeffs)), x)
    fbar = sympy.Poly(f, x, modulus=p)
    factors = sympy.factor_list(fbar)[1]
    gstar = sympy.Poly(1, x, modulus=p)
    hstar = sympy.Poly(1, x, modulus=p)
    for fac, e in factors:
        gstar = gstar * sympy.Poly(fac, x, modulus=p)
        hstar = hstar * sympy.Poly(fac, x, modulus=p) ** (e - 1)
    glift = sympy.Poly([int(c) % p for c in gstar.all_coeffs()], x)
    hlift = sympy.Poly([int(c) % p for c in hstar.all_coeffs()], x)
    diff = glift * hlift - f
    fcap = sympy.Poly([c // p for c in diff.all_coeffs()], x, modulus=p)
    g = sympy.gcd(sympy.gcd(fcap, gstar), hstar)
    return g.degree() == 0


def cubic_field_disc(coeffs: tuple[int, ...]) -> int:
    """Field discriminant of the cubic defined by a monic integer cubic,
    stripping p^2 where Dedekind's criterion detects a nonmaximal order."""
    d = _poly_disc(coeffs)
    assert d > 0, "cubic is not totally real"
    out = d
    for p in sorted(sympy.factorint(d)):
        if d % (p * p) == 0 and not dedekind_maximal(coeffs, p):
            out //= p * p
    assert out % 4 in (0, 1)
    return out


def _real_cyclotomic_cubic(r: int) -> RationalityField:
    x = sympy.Symbol("x")
    mp = sympy.minimal_polynomial(2 * sympy.cos(2 * sympy.pi / r), x)
    coeffs = tuple(int(c) for c in sympy.Poly(mp, x).all_coeffs())
    assert len(coeffs) == 4 and coeffs[0] == 1
    return RationalityField(3, coeffs, cubic_field_disc(coeffs))


def rationality_field(psi) -> RationalityField:
    """The rationality field K of the associated newform: the unique
    totally real index-2 subfield of the value field."""
    field = psi.field
    d = value_field_degree(psi)
    r = max(psi.eta.order, 1)
    ns = list(psi.cg.orders)
    if d == 1:
        return RationalityField(1, (1, 0), 1)
    if d == 2:
        if ns and all(n == 2 for n in ns) and r <= 2:
            # L = E(sqrt(gamma)); K = Q(sqrt(Tr gamma + 2 N(t)^ell))
            assert len(ns) == 1
            theta = psi.cg.thetas[0]
            nt = psi.cg.basis[0].norm()
            gamma = psi.eta.sign(theta) * theta ** psi.ell
            radicand = gamma.trace() + 2 * Fraction(nt) ** psi.ell
            assert radicand > 0 and radicand.denominator == 1
            return _quad_field(fd(int(radicand)))
        if r % abs(field.disc) == 0:
            # L = Q(zeta_r): K is its real quadratic subfield
            assert int(sympy.totient(r)) == 4
            rad = {8: 2, 12: 3}[r]
            return _quad_field(fd(rad))
        if r == 4:
            return _quad_field(fd(abs(field.disc)))
        if r == 6:
            return _quad_field(fd(3 * abs(field.disc)))
        raise ValueError("unsupported degree configuration")
    if d == 3:
        if ns and all(n == 3 for n in ns):
            theta = psi.cg.thetas[0]
            nt = int(psi.cg.basis[0].norm())
            sign = psi.eta.sign(theta)
            tr = sign * (theta ** psi.ell).trace()
            assert tr.denominator == 1
            q = abs(int(tr))
            coeffs = (1, 0, -3 * nt ** psi.ell, -q)
            return RationalityField(3, coeffs, cubic_field_disc(coeffs))
        if r % abs(field.disc) == 0 and int(sympy.totient(r)) == 6:
            return _real_cyclotomic_cubic(r)
        raise ValueError("unsupported degree configuration")
    raise ValueError("unsupported degree")
