"""Algebraic Hecke characters on the ideals of an imaginary quadratic field.

A character psi here is determined by a modulus m, a weight parameter ell,
and a character eta of the residue units (o/m)^x: on principal ideals
coprime to m,

    psi((alpha)) = eta(alpha) * alpha**ell,

and the extension to all coprime ideals is pinned down by choosing, for
each class-group generator t_i of order n_i, a root beta_i of the exact
radicand eta(theta_i) theta_i**ell where (theta_i) = t_i**n_i.  Values
live in an exact presented algebra (see valuefield.ValueAlgebra), so all
identities between values are verified with rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .chargroup import (GroupChar, conductor_of, dirichlet_from_kronecker,
                        factors_through, restrict_to_Z)
from .classgroup import ClassGroup, class_group
from .quadfield import FieldE, QIdeal
from .resunits import ideal_coset_reps, units_structure
from .valuefield import (AlgebraElement, ValueAlgebra,
                         quartic_nth_power_root)


class GrossencharError(Exception):
    """Base error for character construction."""


class NoSuchCharacterError(GrossencharError):
    """The existence condition fails: some root of unity is congruent to
    1 mod m but its ell-th power is not 1."""


class IncompatibleCharacterError(GrossencharError):
    """eta cannot be the unit-character of any character with this ell."""


@dataclass
class Grossenchar:
    field: FieldE
    modulus: QIdeal
    ell: int
    eta: GroupChar
    cg: ClassGroup
    roots: tuple[int, ...]
    algebra: ValueAlgebra
    _gen_values: tuple[AlgebraElement, ...] = dc_field(repr=False, default=())

    @property
    def level(self) -> int:
        return abs(self.field.disc) * int(self.modulus.norm())

    @property
    def weight(self) -> int:
        return self.ell + 1

    @property
    def r(self) -> int:
        return self.algebra.r

    def __call__(self, a: QIdeal) -> AlgebraElement:
        return evaluate(self, a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grossenchar):
            return NotImplemented
        return (self.field == other.field
                and self.modulus == other.modulus
                and self.ell == other.ell
                and self.eta.exps == other.eta.exps
                and self.cg.basis == other.cg.basis
                and self.roots == other.roots)


def minimal_conductor(field: FieldE) -> QIdeal:
    """The smallest modulus admitting a unit-character restricting to the
    field character: (sqrt d) for odd d, with an extra dyadic factor when
    2 ramifies."""
    base = QIdeal.from_element(field.sqrt_disc)
    d = field.disc
    if d % 2 != 0:
        return base
    if d % 8 == 4:
        p2 = QIdeal.primes_over(field, 2)[0]
        return p2 * base
    return QIdeal.from_element(field.element(2)) * base


def build(field: FieldE, modulus: QIdeal, ell: int, eta: GroupChar,
          roots: tuple[int, ...] | None = None, cg: ClassGroup | None = None,
          check: bool = True, match_field_character: bool = True) -> Grossenchar:
    """Construct the character, verifying existence and compatibility.

    Raises NoSuchCharacterError when no character of weight parameter ell
    exists mod m at all, and IncompatibleCharacterError when eta fails
    eta(u) u**ell = 1 on the unit group or does not restrict to the field
    character (when requested).
    """
    if ell <= 0:
        raise ValueError("ell must be a positive integer")
    S = eta.structure
    if S.modulus != modulus:
        raise ValueError("eta is not a character mod the given modulus")

    for u in S.torsion_meet:
        if u ** ell != field.one:
            raise NoSuchCharacterError(
                f"no Grössencharacter for (m, ell) = "
                f"({modulus!r}, {ell})")

    units = field.roots_of_unity()
    w = len(units)
    gen = units[1]
    if (eta.angle(gen) + Fraction(ell, w)) % 1 != 0:
        raise IncompatibleCharacterError(
            "eta(u) u**ell != 1 on the unit group")

    if match_field_character:
        res = restrict_to_Z(eta)
        chiE = dirichlet_from_kronecker(field.disc, res.modulus)
        if any(res.angle(g) != chiE.angle(g) for g, _ in res.group.factors):
            raise IncompatibleCharacterError(
                "eta does not restrict to the field character")

    if cg is None:
        cg = class_group(field, coprime_to=int(modulus.norm()))
    r = max(eta.order, 1)
    if roots is None:
        roots = (0,) * len(cg.orders)
    roots = tuple(int(s) for s in roots)
    if len(roots) != len(cg.orders):
        raise ValueError("one root choice per class-group generator")
    for s, n in zip(roots, cg.orders):
        if s and (r % n != 0 or not 0 <= s < n):
            raise ValueError("root choices require n | r and 0 <= s < n")

    tmp = ValueAlgebra(field, r, [])
    radicals = []
    inline: dict[int, dict] = {}
    for i, (theta, n) in enumerate(zip(cg.thetas, cg.orders)):
        k = eta.angle(theta) * r
        assert k.denominator == 1
        gamma = tmp.zeta_pow(int(k)) * tmp.from_quad(theta ** ell)
        root = None
        if n == 2 and tmp.phi == 2 and not tmp.over_field:
            # the radical may collapse into E(zeta_r); adjoining it then
            # would create zero divisors, so use the root directly
            root = quartic_nth_power_root(field, r, gamma, 2)
        if root is not None:
            inline[i] = dict(root.coords)
        else:
            radicals.append((n, dict(gamma.coords)))
    algebra = ValueAlgebra(field, r, radicals)

    gen_values = []
    pad = (0,) * len(algebra.ns)
    bidx = 0
    for i, (n, s) in enumerate(zip(cg.orders, roots)):
        if i in inline:
            v = algebra._wrap({(a, b, pad): c
                               for (a, b, _), c in inline[i].items()})
        else:
            v = algebra.beta(bidx)
            bidx += 1
        if s:
            v = algebra.zeta_pow((r // n) * s) * v
        gen_values.append(v)

    psi = Grossenchar(field, modulus, ell, eta, cg, roots, algebra,
                      tuple(gen_values))
    if check:
        _self_check(psi)
    return psi


def _self_check(psi: Grossenchar, instances: int = 50) -> None:
    """Exact well-definedness spot check: principal round trips and
    multiplicativity on random instances."""
    rng = random.Random(987654321)
    field, S = psi.field, psi.eta.structure
    done = 0
    while done < instances // 2:
        x, y = rng.randrange(-30, 31), rng.randrange(-30, 31)
        alpha = field.element(x, y)
        if alpha.norm() == 0 or not S.ring.is_unit(S.ring.reduce(alpha)):
            continue
        lhs = evaluate(psi, QIdeal.from_element(alpha))
        rhs = psi.algebra.zeta_pow(int(psi.eta.angle(alpha) * psi.r)) \
            * psi.algebra.from_quad(alpha ** psi.ell)
        assert lhs == rhs, "principal round trip failed"
        done += 1
    primes = []
    p = 2
    while len(primes) < 12:
        if psi.level % p != 0:
            primes.extend(QIdeal.primes_over(field, p))
        p = _next_prime(p)
    for _ in range(instances - instances // 2):
        p1, p2 = rng.choice(primes), rng.choice(primes)
        assert evaluate(psi, p1 * p2) == \
            evaluate(psi, p1) * evaluate(psi, p2), "multiplicativity failed"


def _next_prime(p: int) -> int:
    q = p + 1
    while any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        q += 1
    return q


def _rational_value(psi: Grossenchar, q: int, power: int = 1) -> AlgebraElement:
    """psi((q))**power for a positive rational integer q coprime to m;
    power may be negative."""
    ang = psi.eta.angle(q)
    k = int(ang * psi.r) * power % psi.r
    return psi.algebra.zeta_pow(k) * psi.algebra.scalar(
        Fraction(q) ** (psi.ell * power))


def _shares_prime(a: QIdeal, m: QIdeal) -> bool:
    """Whether two integral ideals have a common prime factor.  The norm
    gcd alone cannot decide this when a rational prime splits and only one
    of the conjugate primes divides m."""
    s = QIdeal.from_generators(a.field, [*a.basis(), *m.basis()])
    return s.norm() != 1


def evaluate(psi: Grossenchar, a: QIdeal) -> AlgebraElement:
    """The value psi(a), zero for integral ideals sharing a factor with m."""
    field = psi.field
    if not a.is_integral:
        den = a.scale.denominator
        num = a * QIdeal.from_element(field.element(den))
        assert num.is_integral
        if gcd(den, int(psi.modulus.norm())) != 1:
            raise ValueError("fractional ideal is not coprime to the modulus")
        return evaluate(psi, num) * _rational_value(psi, den, -1)
    if (gcd(int(a.norm()), int(psi.modulus.norm())) != 1
            and _shares_prime(a, psi.modulus)):
        return psi.algebra.zero
    j = psi.cg.dlog(a)
    c = a
    for t, ji in zip(psi.cg.basis, j):
        for _ in range(ji):
            c = c * t.conj()
    alpha = c.is_principal()
    assert alpha is not None, "class decomposition failed"
    k = int(psi.eta.angle(alpha) * psi.r)
    val = psi.algebra.zeta_pow(k) * psi.algebra.from_quad(alpha ** psi.ell)
    for i, ji in enumerate(j):
        if ji:
            val = val * psi._gen_values[i] ** ji
            val = val * _rational_value(psi, int(psi.cg.basis[i].norm()), -ji)
    return val


# ---------------------------------------------------------------------------
# conductor manipulation

def _ideal_lcm(m1: QIdeal, m2: QIdeal) -> QIdeal:
    f1, f2 = m1.factor(), m2.factor()
    out = QIdeal.unit_ideal(m1.field)
    seen = dict(f1)
    for p, e in f2.items():
        seen[p] = max(seen.get(p, 0), e)
    for p, e in seen.items():
        out = out * p ** e
    return out


def _deflate(eta: GroupChar, smaller: QIdeal) -> GroupChar:
    """The character mod `smaller` through which eta factors."""
    S_big = eta.structure
    S_new = units_structure(eta.structure.field, smaller)
    reps = ideal_coset_reps(smaller, S_big.modulus)
    exps = []
    for g, o in S_new.factors:
        lift = None
        for t in reps:
            cand = g + t
            if S_big.ring.is_unit(S_big.ring.reduce(cand)):
                lift = cand
                break
        assert lift is not None
        ang = eta.angle(lift) * o
        assert ang.denominator == 1, "eta does not factor through the modulus"
        exps.append(int(ang) % o)
    return GroupChar(S_new, tuple(exps))


def conductor(psi: Grossenchar) -> QIdeal:
    return conductor_of(psi.eta)


def extend_to_conductor(psi: Grossenchar, new_modulus: QIdeal) -> Grossenchar:
    """The character mod `new_modulus` (a divisor of the modulus) agreeing
    with psi on all ideals coprime to the old modulus."""
    if not new_modulus.divides(psi.modulus):
        raise GrossencharError("target modulus must divide the modulus")
    if not factors_through(psi.eta, new_modulus):
        raise GrossencharError("not extendable")
    eta_new = _deflate(psi.eta, new_modulus)
    return build(psi.field, new_modulus, psi.ell, eta_new, roots=psi.roots,
                 cg=psi.cg, check=False)


def twist(psi: Grossenchar, chi) -> Grossenchar:
    """The primitive character inducing a |-> chi(N(a)) psi(a), for a
    quadratic Dirichlet character chi."""
    field = psi.field
    q = chi.modulus
    mq = _ideal_lcm(psi.modulus, QIdeal.from_element(field.element(q)))
    S_big = units_structure(field, mq)
    exps = []
    for g, o in S_big.factors:
        ang = (psi.eta.angle(g) + chi.angle(int(g.norm()) % q)) % 1
        c = ang * o
        assert c.denominator == 1
        exps.append(int(c) % o)
    eta_big = GroupChar(S_big, tuple(exps))
    m_new = conductor_of(eta_big)
    eta_new = _deflate(eta_big, m_new)
    if any(gcd(int(t.norm()), q) != 1 for t in psi.cg.basis):
        raise GrossencharError(
            "twist requires class generators coprime to the twisting modulus")
    roots = []
    for t, n, s in zip(psi.cg.basis, psi.cg.orders, psi.roots):
        if chi.sign(int(t.norm()) % q) == -1:
            if n % 2:
                raise GrossencharError(
                    "twist root matching needs even generator orders")
            s = (s + n // 2) % n
        roots.append(s)
    return build(field, m_new, psi.ell, eta_new, roots=tuple(roots),
                 cg=psi.cg, check=False)


# ---------------------------------------------------------------------------
# serialization

def _hnf_record(ideal: QIdeal) -> dict:
    return {"a": str(ideal.a), "b": str(ideal.b), "scale": str(ideal.scale)}


def _hnf_load(field: FieldE, rec: dict) -> QIdeal:
    return QIdeal.from_hnf(field, int(rec["a"]), int(rec["b"]),
                           Fraction(rec["scale"]))


def record(psi: Grossenchar) -> dict:
    """A JSON-ready description sufficient to rebuild psi exactly."""
    return {
        "disc": str(psi.field.disc),
        "modulus": _hnf_record(psi.modulus),
        "ell": str(psi.ell),
        "eta_exps": [str(e) for e in psi.eta.exps],
        "eta_orders": [str(o) for o in psi.eta.structure.orders],
        "generators": [_hnf_record(t) for t in psi.cg.basis],
        "gen_orders": [str(n) for n in psi.cg.orders],
        "roots": [str(s) for s in psi.roots],
        "level": str(psi.level),
        "weight": str(psi.weight),
    }


def from_record(rec: dict, check: bool = True) -> Grossenchar:
    field = FieldE(int(rec["disc"]))
    modulus = _hnf_load(field, rec["modulus"])
    S = units_structure(field, modulus)
    orders = tuple(int(o) for o in rec["eta_orders"])
    if S.orders != orders:
        raise ValueError("record does not match the computed unit structure")
    eta = GroupChar(S, tuple(int(e) for e in rec["eta_exps"]))
    psi = build(field, modulus, int(rec["ell"]), eta,
                roots=tuple(int(s) for s in rec["roots"]), check=check)
    stored = [(int(g["a"]), int(g["b"])) for g in rec["generators"]]
    if [(t.a, t.b) for t in psi.cg.basis] != stored:
        raise ValueError("record does not match the computed class basis")
    return psi
