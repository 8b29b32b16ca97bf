"""Characters of residue-ring unit groups with exact root-of-unity values.

A character is an exponent vector against a fixed cyclic decomposition; its
values are angle fractions t in [0, 1) standing for exp(2*pi*i*t).  All
character arithmetic is Fraction arithmetic on angles, so comparisons used
by the classification sweeps are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .abelian import enumerate_solutions
from .quadfield import FieldE, QIdeal, QuadElem, kronecker
from .resunits import (
    IntUnitGroup,
    UnitsStructure,
    ideal_coset_reps,
    units_structure,
)


def _angle(orders, exps, vec) -> Fraction:
    t = Fraction(0)
    for o, c, e in zip(orders, exps, vec):
        t += Fraction(c * e, o)
    return t % 1


def _char_order(orders, exps) -> int:
    n = 1
    for o, c in zip(orders, exps):
        n = lcm(n, o // gcd(o, c))
    return n


@dataclass(frozen=True)
class GroupChar:
    """Character of (o_E/m)^x given by exponents against the unit structure."""

    structure: UnitsStructure
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        assert len(self.exps) == len(self.structure.orders)
        assert all(0 <= c < o for c, o in zip(self.exps, self.structure.orders))

    @property
    def order(self) -> int:
        return _char_order(self.structure.orders, self.exps)

    def angle(self, z: QuadElem | int) -> Fraction:
        """The value at z as an exact angle in [0, 1)."""
        return _angle(self.structure.orders, self.exps,
                      self.structure.dlog(z))

    def sign(self, z: QuadElem | int) -> int:
        t = self.angle(z)
        if t == 0:
            return 1
        if t == Fraction(1, 2):
            return -1
        raise ValueError("value is not +-1")

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.exps)

    def __mul__(self, other: GroupChar) -> GroupChar:
        assert self.structure is other.structure
        return GroupChar(
            self.structure,
            tuple((a + b) % o for a, b, o in
                  zip(self.exps, other.exps, self.structure.orders)),
        )

    def __pow__(self, k: int) -> GroupChar:
        return GroupChar(
            self.structure,
            tuple((c * k) % o for c, o in
                  zip(self.exps, self.structure.orders)),
        )


@dataclass(frozen=True)
class DirichletChar:
    """Character of (Z/QZ)^x; values are exact angles."""

    group: IntUnitGroup
    exps: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def order(self) -> int:
        return _char_order(self.group.orders, self.exps)

    def angle(self, a: int) -> Fraction:
        return _angle(self.group.orders, self.exps, self.group.dlog(a))

    def sign(self, a: int) -> int:
        t = self.angle(a)
        if t == 0:
            return 1
        if t == Fraction(1, 2):
            return -1
        raise ValueError("value is not +-1")

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.exps)

    def conductor(self) -> int:
        """Smallest Q' | Q through which the character factors."""
        cur = self.modulus
        import sympy

        for p in sorted(sympy.factorint(self.modulus)):
            while cur % p == 0:
                cand = cur // p
                if not self._factors_through(cand):
                    break
                cur = cand
        return cur

    def _factors_through(self, cand: int) -> bool:
        m = self.modulus
        for k in range(m // cand):
            a = 1 + k * cand
            if gcd(a, m) == 1 and self.angle(a) != 0:
                return False
        return True


def dirichlet_from_kronecker(disc: int, modulus: int | None = None) -> DirichletChar:
    """The quadratic character a -> (disc/a) as a character mod |disc|."""
    if modulus is None:
        modulus = abs(disc)
    G = IntUnitGroup(modulus)
    exps = []
    for (g, o) in G.factors:
        v = kronecker(disc, g)
        if v == 1:
            exps.append(0)
        else:
            assert o % 2 == 0, "character does not live on this group"
            exps.append(o // 2)
    return DirichletChar(G, tuple(exps))


def restrict_to_Z(eta: GroupChar, modulus: int | None = None) -> DirichletChar:
    """The Dirichlet character a -> eta(a mod m), mod M = N(m) by default."""
    S = eta.structure
    if modulus is None:
        modulus = int(S.modulus.norm())
    G = IntUnitGroup(modulus)
    exps = []
    for (g, o) in G.factors:
        t = eta.angle(g)
        c = t * o
        assert c.denominator == 1, "restriction not well-defined"
        exps.append(int(c) % o)
    return DirichletChar(G, tuple(exps))


def solve_character_conditions(
    S: UnitsStructure,
    conditions: list[tuple[QuadElem | int, Fraction]],
    order_divides: int | None = None,
) -> list[GroupChar]:
    """All characters with prescribed values: angle(z) = t for each (z, t).

    Conditions are linear in the exponent vector; solutions are enumerated
    exactly over the component moduli and returned in sorted order.
    """
    orders = S.orders
    k = len(orders)
    if k == 0:
        ok = all(t % 1 == 0 for _, t in conditions)
        return [GroupChar(S, ())] if ok else []
    R = lcm(*orders) if orders else 1
    coeffs: list[list[int]] = []
    rhs: list[int] = []
    for z, t in conditions:
        vec = S.dlog(z)
        coeffs.append([(R // o) * e % R for o, e in zip(orders, vec)])
        val = t * R
        if val.denominator != 1:
            return []
        rhs.append(int(val) % R)
    if order_divides is not None:
        for i, o in enumerate(orders):
            row = [0] * k
            row[i] = (order_divides * (R // o)) % R
            coeffs.append(row)
            rhs.append(0)
    sols = enumerate_solutions(coeffs, rhs, R, list(orders))
    return [GroupChar(S, tuple(sol)) for sol in sols]


def enumerate_eta(
    field: FieldE,
    modulus: QIdeal,
    order_divides: int | None = None,
    order_equals: int | None = None,
    structure: UnitsStructure | None = None,
) -> list[GroupChar]:
    """Characters of (o_E/m)^x whose rational restriction is chi_E.

    The restriction condition is tested on generators of (Z/LZ)^x with
    L = lcm(|disc|, N(m)), which pins both characters on their common
    domain.  Triviality on the roots of unity congruent to 1 mod m holds
    automatically (those reduce to the identity residue) but is kept as a
    stated condition of the search.
    """
    S = structure if structure is not None else units_structure(field, modulus)
    M = int(modulus.norm())
    L = lcm(abs(field.disc), M)
    conditions: list[tuple[QuadElem | int, Fraction]] = []
    for g, _ in IntUnitGroup(L).factors:
        chi = field.chi(g)
        assert chi != 0
        conditions.append((g, Fraction(0) if chi == 1 else Fraction(1, 2)))
    for u in S.torsion_meet:
        conditions.append((u, Fraction(0)))
    div = order_divides
    if order_equals is not None:
        div = order_equals if div is None else gcd(div, order_equals)
    out = solve_character_conditions(S, conditions, div)
    if order_equals is not None:
        out = [eta for eta in out if eta.order == order_equals]
    return out


def factors_through(eta: GroupChar, smaller: QIdeal) -> bool:
    """Whether eta is trivial on the kernel of (o/m)^x -> (o/m')^x."""
    S = eta.structure
    m = S.modulus
    for t in ideal_coset_reps(smaller, m):
        z = S.field.one + t
        rep = S.ring.reduce(z)
        if S.ring.is_unit(rep) and eta.angle(z) != 0:
            return False
    return True


def conductor_of(eta: GroupChar) -> QIdeal:
    """The smallest divisor of m through which eta factors."""
    S = eta.structure
    cur = S.modulus
    primes = sorted(
        S.modulus.factor(),
        key=lambda pr: (int(pr.norm()), pr.b, int(pr.scale)),
    )
    for prime in primes:
        while cur.valuation(prime) > 0:
            cand = cur / prime
            if not factors_through(eta, cand):
                break
            cur = cand
    return cur


def quad_dirichlet_chars(support: list[int]) -> list[DirichletChar]:
    """All quadratic Dirichlet characters with conductor supported on the
    given primes (conductor 1 included); each is a Kronecker symbol."""
    choices: list[list[int]] = []
    for p in sorted(set(support)):
        if p == 2:
            choices.append([1, -4, 8, -8])
        else:
            star = p if p % 4 == 1 else -p
            choices.append([1, star])
    discs = [1]
    for ch in choices:
        discs = [d * c for d in discs for c in ch]
    out = []
    for d in sorted(discs, key=abs):
        out.append(dirichlet_from_kronecker(d, abs(d) if d != 1 else 1))
    return out
