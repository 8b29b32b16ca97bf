"""Imaginary quadratic fields, their elements, and fractional ideals.

A field is fixed by a negative fundamental discriminant D.  Elements are
written over the integral basis (1, w) with w = (D + sqrt(D)) / 2, so
Tr(w) = D and N(w) = (D^2 - D) / 4, with exact Fraction coordinates.

A fractional ideal is stored as scale * (Z*a + Z*(b + w)) with a > 0,
0 <= b < a, a | N(b + w), and a positive rational scale.  That shape is
closed under multiplication, conjugation, and inversion, and makes norms,
membership, and divisibility one-line checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import sympy

from .abelian import hnf_2x2


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a / n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5) and twos % 2 == 1:
            sign = -sign
    if n == 1:
        return sign
    return sign * int(sympy.jacobi_symbol(a % n, n))


def is_fundamental(d: int) -> bool:
    """True if d is a fundamental discriminant (1 counts, 0 does not)."""
    if d == 0:
        return False
    if d == 1:
        return True
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    return all(e == 1 for e in sympy.factorint(n).values())


def fd(d: int) -> int:
    """The fundamental discriminant with d = f^2 * fd(d); sign is preserved."""
    if d == 0:
        raise ValueError("0 has no fundamental discriminant")
    core = 1
    for p, e in sympy.factorint(abs(d)).items():
        if e % 2:
            core *= p
    if d < 0:
        core = -core
    return core if core % 4 == 1 else 4 * core


@dataclass(frozen=True)
class FieldE:
    """The imaginary quadratic field of fundamental discriminant `disc` < 0."""

    disc: int

    def __post_init__(self) -> None:
        if self.disc >= 0 or not is_fundamental(self.disc):
            raise ValueError(f"{self.disc} is not a negative fundamental discriminant")

    @property
    def omega_trace(self) -> int:
        return self.disc

    @property
    def omega_norm(self) -> int:
        return (self.disc * self.disc - self.disc) // 4

    def element(self, x, y=0) -> QuadElem:
        return QuadElem(self, Fraction(x), Fraction(y))

    @property
    def zero(self) -> QuadElem:
        return self.element(0)

    @property
    def one(self) -> QuadElem:
        return self.element(1)

    @property
    def omega(self) -> QuadElem:
        return self.element(0, 1)

    @property
    def sqrt_disc(self) -> QuadElem:
        # sqrt(D) = 2w - D.
        return self.element(-self.disc, 2)

    def roots_of_unity(self) -> list[QuadElem]:
        """The unit group: +-1, plus the extra roots for disc -4 and -3."""
        if self.disc == -4:
            i = self.element(2, 1)
            return [self.one, i, -self.one, -i]
        if self.disc == -3:
            z = self.element(2, 1)  # primitive 6th root (1 + sqrt(-3)) / 2
            out = [self.one]
            for _ in range(5):
                out.append(out[-1] * z)
            return out
        return [self.one, -self.one]

    def chi(self, n: int) -> int:
        """The quadratic character attached to the field, (disc / n)."""
        return kronecker(self.disc, n)


@dataclass(frozen=True)
class QuadElem:
    """x + y*w with exact rational coordinates."""

    field: FieldE
    x: Fraction
    y: Fraction

    def _coerce(self, other) -> QuadElem | None:
        if isinstance(other, QuadElem):
            return other if other.field == self.field else None
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.field, Fraction(other), Fraction(0))
        return None

    def __add__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.field, self.x - o.x, self.y - o.y)

    def __rsub__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> QuadElem:
        return QuadElem(self.field, -self.x, -self.y)

    def __mul__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.disc
        nw = self.field.omega_norm
        x = self.x * o.x - self.y * o.y * nw
        y = self.x * o.y + self.y * o.x + self.y * o.y * d
        return QuadElem(self.field, x, y)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        num = self * o.conj()
        return QuadElem(self.field, num.x / n, num.y / n)

    def __rtruediv__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int) -> QuadElem:
        if e < 0:
            return (self.field.one / self) ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> QuadElem:
        # w + wbar = D, so conj(x + y*w) = (x + y*D) - y*w.
        return QuadElem(self.field, self.x + self.y * self.field.disc, -self.y)

    def norm(self) -> Fraction:
        d = self.field.disc
        return self.x * self.x + self.x * self.y * d + self.y * self.y * self.field.omega_norm

    def trace(self) -> Fraction:
        return 2 * self.x + self.y * self.field.disc

    @property
    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def to_complex(self) -> complex:
        """Float embedding with Im(sqrt(D)) > 0; fine for sanity checks."""
        d = self.field.disc
        w = complex(d / 2, (abs(d) ** 0.5) / 2)
        return complex(self.x) + complex(self.y) * w

    def __repr__(self) -> str:
        return f"({self.x} + {self.y}*w | D={self.field.disc})"


@dataclass(frozen=True)
class QIdeal:
    """Fractional ideal scale * (Z*a + Z*(b + w))."""

    field: FieldE
    a: int
    b: int
    scale: Fraction

    def __post_init__(self) -> None:
        if self.a <= 0 or not (0 <= self.b < self.a) or self.scale <= 0:
            raise ValueError("ideal basis not in reduced form")
        e = self.field.element(self.b, 1)
        if e.norm() % self.a != 0:
            raise ValueError("lattice is not an ideal: a must divide N(b + w)")

    @classmethod
    def unit_ideal(cls, field: FieldE) -> QIdeal:
        return cls(field, 1, 0, Fraction(1))

    @classmethod
    def from_hnf(cls, field: FieldE, a: int, b: int, scale=1) -> QIdeal:
        return cls(field, a, b % a, Fraction(scale))

    @classmethod
    def from_element(cls, elem: QuadElem) -> QIdeal:
        """The principal fractional ideal (elem)."""
        if elem.norm() == 0:
            raise ValueError("zero element generates no fractional ideal")
        den = elem.x.denominator * elem.y.denominator // gcd(
            elem.x.denominator, elem.y.denominator
        )
        scaled = elem * den
        ide = cls.from_generators(elem.field, [scaled])
        return QIdeal(elem.field, ide.a, ide.b, ide.scale / den)

    @classmethod
    def from_generators(cls, field: FieldE, elems: list[QuadElem]) -> QIdeal:
        """The integral ideal generated by integral elements."""
        rows: list[tuple[int, int]] = []
        w = field.omega
        for e in elems:
            for g in (e, e * w):
                assert g.is_integral
                rows.append((int(g.x), int(g.y)))
        a, c, d = hnf_2x2(rows)
        if d == 0:
            raise ValueError("generators span no full lattice")
        assert a % d == 0 and c % d == 0
        return cls(field, a // d, (c // d) % (a // d), Fraction(d))

    # Arithmetic ---------------------------------------------------------

    def norm(self) -> Fraction:
        return self.scale * self.scale * self.a

    def conj(self) -> QIdeal:
        bb = (-(self.b + self.field.disc)) % self.a
        return QIdeal(self.field, self.a, bb, self.scale)

    def __mul__(self, other) -> QIdeal:
        if isinstance(other, QIdeal):
            if other.field != self.field:
                raise ValueError("ideals of different fields")
            e1 = self.field.element(self.b, 1)
            e2 = self.field.element(other.b, 1)
            prods = [
                self.field.element(self.a * other.a),
                self.field.element(other.a) * e1,
                self.field.element(self.a) * e2,
                e1 * e2,
            ]
            rows = [(int(p.x), int(p.y)) for p in prods]
            a, c, d = hnf_2x2(rows)
            return QIdeal(
                self.field, a // d, (c // d) % (a // d), self.scale * other.scale * d
            )
        if isinstance(other, QuadElem):
            return self * QIdeal.from_element(other)
        if isinstance(other, (int, Fraction)) and other > 0:
            return QIdeal(self.field, self.a, self.b, self.scale * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> QIdeal:
        c = self.conj()
        return QIdeal(c.field, c.a, c.b, c.scale / self.norm())

    def __truediv__(self, other: QIdeal) -> QIdeal:
        return self * other.inverse()

    def __pow__(self, e: int) -> QIdeal:
        if e < 0:
            return self.inverse() ** (-e)
        out = QIdeal.unit_ideal(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # Membership and divisibility ---------------------------------------

    def contains(self, elem: QuadElem) -> bool:
        beta = elem.y / self.scale
        if beta.denominator != 1:
            return False
        alpha = (elem.x / self.scale - beta * self.b) / self.a
        return alpha.denominator == 1

    @property
    def is_integral(self) -> bool:
        return self.scale.denominator == 1

    def divides(self, other: QIdeal) -> bool:
        return (other / self).is_integral

    def basis(self) -> tuple[QuadElem, QuadElem]:
        return (
            self.field.element(self.scale * self.a),
            self.field.element(self.scale * self.b, self.scale),
        )

    # Primes and factorization ------------------------------------------

    @classmethod
    def primes_over(cls, field: FieldE, p: int) -> list[QIdeal]:
        """The prime ideals above the rational prime p.

        Split: two ideals (smaller b first).  Ramified: one.  Inert: (p).
        """
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        chi = field.chi(p)
        if chi == -1:
            return [cls(field, 1, 0, Fraction(p))]
        if p == 2:
            bs = [b for b in range(2) if field.element(b, 1).norm() % 2 == 0]
        else:
            d = field.disc
            roots = sympy.ntheory.sqrt_mod(d, p, all_roots=True) or []
            inv2 = pow(2, -1, p)
            bs = sorted({((-d + r) * inv2) % p for r in roots})
        out = [cls(field, p, b, Fraction(1)) for b in bs]
        assert len(out) == (2 if chi == 1 else 1)
        return out

    def valuation(self, prime: QIdeal) -> int:
        """v_prime(self) for a prime ideal; works for fractional ideals."""
        if not self.is_integral:
            d = self.scale.denominator
            pd = QIdeal.from_element(self.field.element(d))
            return (self * d).valuation(prime) - pd.valuation(prime)
        v = 0
        cur = self
        while True:
            nxt = cur / prime
            if not nxt.is_integral:
                return v
            v += 1
            cur = nxt

    def factor(self) -> dict[QIdeal, int]:
        """Prime factorization; negative exponents for true denominators."""
        if not self.is_integral:
            d = self.scale.denominator
            fnum = (self * d).factor()
            fden = QIdeal.from_element(self.field.element(d)).factor()
            out = dict(fnum)
            for pr, e in fden.items():
                out[pr] = out.get(pr, 0) - e
            return {pr: e for pr, e in out.items() if e != 0}
        out: dict[QIdeal, int] = {}
        for p in sympy.factorint(int(self.norm())):
            for pr in QIdeal.primes_over(self.field, p):
                v = self.valuation(pr)
                if v:
                    out[pr] = v
        return out

    def is_principal(self) -> QuadElem | None:
        """A generator if the ideal is principal, else None.

        Enumerates elements of the primitive part with norm equal to a via
        (2x + y*D)^2 + |D| y^2 = 4a, checks membership, and returns the
        scaled generator with a deterministic associate choice.
        """
        a = self.a
        dd = -self.field.disc
        cands: list[QuadElem] = []
        ymax = isqrt(4 * a // dd)
        for y in range(-ymax, ymax + 1):
            rest = 4 * a - dd * y * y
            u = isqrt(rest)
            if u * u != rest:
                continue
            for uu in ({u, -u} if u else {0}):
                if (uu - y * self.field.disc) % 2:
                    continue
                x = (uu - y * self.field.disc) // 2
                cand = self.field.element(x, y)
                prim = QIdeal(self.field, self.a, self.b, Fraction(1))
                if cand.norm() == a and prim.contains(cand):
                    cands.append(cand)
        if not cands:
            return None
        cands.sort(key=lambda e: (e.y, e.x))
        gen = cands[-1]
        return gen * self.scale

    def __repr__(self) -> str:
        return f"{self.scale}*(Z{self.a} + Z({self.b}+w) | D={self.field.disc})"
