"""Integer linear algebra for finite abelian groups.

Everything here works with plain Python ints and lists, exactly.  The rest of
the package leans on three workhorses:

* Smith normal form with transform matrices, used to turn relation lattices
  into cyclic decompositions and to solve linear congruence systems.
* Two-dimensional Hermite normal form, used for ideal lattices.
* A breadth-first decomposition of a finite abelian group given by a black-box
  multiplication and a generating set, returning independent generators,
  their orders, and a discrete-log table.
"""

from __future__ import annotations

from math import gcd, prod
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

T = TypeVar("T", bound=Hashable)


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(
    a: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*A*V = D in Smith normal form.

    U and V are unimodular; D is diagonal (rectangular allowed) with
    nonnegative entries and d_1 | d_2 | ...
    """
    d = [list(row) for row in a]
    n = len(d)
    m = len(d[0]) if n else 0
    u = identity_matrix(n)
    v = identity_matrix(m)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        for j in range(m):
            d[dst][j] += q * d[src][j]
        for j in range(n):
            u[dst][j] += q * u[src][j]

    def add_col(dst: int, src: int, q: int) -> None:
        for i in range(n):
            d[i][dst] += q * d[i][src]
        for i in range(m):
            v[i][dst] += q * v[i][src]

    for t in range(min(n, m)):
        while True:
            # Move the smallest nonzero entry of the trailing block to (t, t).
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            clean = True
            for i in range(t + 1, n):
                if d[i][t] != 0:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    if d[i][t] != 0:
                        clean = False
            for j in range(t + 1, m):
                if d[t][j] != 0:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    if d[t][j] != 0:
                        clean = False
            if not clean:
                continue
            offender = None
            for i in range(t + 1, n):
                if any(d[i][j] % d[t][t] != 0 for j in range(t + 1, m)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if d[t][t] < 0:
            for j in range(m):
                d[t][j] = -d[t][j]
            for j in range(n):
                u[t][j] = -u[t][j]
    return u, d, v


def unimodular_inverse(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        # Gcd-style elimination keeps everything integral.
        while True:
            piv = None
            for i in range(col, n):
                if work[i][col] != 0 and (piv is None or abs(work[i][col]) < abs(work[piv][col])):
                    piv = i
            assert piv is not None, "matrix is singular"
            work[col], work[piv] = work[piv], work[col]
            done = True
            for i in range(col + 1, n):
                if work[i][col] != 0:
                    q = work[i][col] // work[col][col]
                    for j in range(2 * n):
                        work[i][j] -= q * work[col][j]
                    if work[i][col] != 0:
                        done = False
            if done:
                break
    # Back-substitute above the diagonal.
    for col in range(n - 1, -1, -1):
        assert abs(work[col][col]) == 1, "matrix is not unimodular"
        if work[col][col] == -1:
            for j in range(2 * n):
                work[col][j] = -work[col][j]
        for i in range(col):
            q = work[i][col]
            if q:
                for j in range(2 * n):
                    work[i][j] -= q * work[col][j]
    return [row[n:] for row in work]


def hnf_2x2(rows: Iterable[tuple[int, int]]) -> tuple[int, int, int]:
    """Hermite basis of the sublattice of Z^2 spanned by `rows`.

    Returns (a, c, d): the lattice is Z*(a, 0) + Z*(c, d) with a >= 0, d >= 0,
    and 0 <= c < a when a > 0.
    """
    a, c, d = 0, 0, 0
    for (x, y) in rows:
        if y != 0:
            if d == 0:
                c, d = x, y
                if d < 0:
                    c, d = -c, -d
            else:
                g, s, t = xgcd(d, y)
                c, x_left = s * c + t * x, (y // g) * c - (d // g) * x
                d = g
                a = gcd(a, x_left)
        else:
            a = gcd(a, x)
    a = abs(a)
    if a and d:
        c %= a
    return a, c, d


class CyclicDecomposition:
    """A finite abelian group as a direct product of cyclic factors.

    `generators[i]` has exact order `orders[i]`, and exponent vectors
    (e_1, ..., e_k) with 0 <= e_i < orders[i] biject onto the group via
    prod generators[i]^{e_i}.  `dlog` inverts the bijection.
    """

    def __init__(self, generators: list, orders: list[int], dlog_table: dict):
        self.generators = generators
        self.orders = orders
        self._dlog = dlog_table

    @property
    def order(self) -> int:
        return prod(self.orders) if self.orders else 1

    def dlog(self, element) -> tuple[int, ...]:
        return self._dlog[element]

    def elements(self):
        return self._dlog.keys()


def decompose_from_generators(
    identity: T,
    gens: Sequence[T],
    mul: Callable[[T, T], T],
) -> CyclicDecomposition:
    """Cyclic decomposition of the finite group generated by `gens`.

    Computes the relative order of each generator over its predecessors by
    breadth-first closure, Smith-reduces the resulting triangular relation
    lattice, and rebuilds independent generators from the column transform.
    The final exhaustive dlog table double-checks itself: its size must equal
    the product of the Smith invariants.
    """
    subgroup: set[T] = {identity}
    rel_rows: list[list[int]] = []
    kept: list[T] = []
    kept_orders: list[int] = []
    for g in gens:
        power = g
        r = 1
        while power not in subgroup:
            power = mul(power, g)
            r += 1
        # power == g^r lies in the current subgroup; express it.
        rel = _subgroup_dlog(identity, kept, kept_orders, subgroup, mul, power)
        for prev in rel_rows:
            prev.append(0)
        rel_rows.append([-e for e in rel] + [r])
        kept.append(g)
        # Absolute order of g (for negative exponents later).
        n = r
        acc = power
        while acc != identity:
            acc = mul(acc, g)
            n += 1
        kept_orders.append(n)
        if r > 1:
            extended = set(subgroup)
            for el in subgroup:
                acc = el
                for _ in range(1, r):
                    acc = mul(acc, g)
                    extended.add(acc)
            subgroup = extended

    k = len(kept)
    if k == 0:
        return CyclicDecomposition([], [], {identity: ()})

    _, diag, v = smith_normal_form(rel_rows)
    orders = [diag[j][j] for j in range(k)]
    # With U*A*V = D and A the relation lattice, Z^k / D maps back through
    # rows of V^{-1}: the j-th invariant factor is generated by
    # prod_i kept[i] ** Vinv[j][i].
    vinv = unimodular_inverse(v)
    new_gens: list[T] = []
    for j in range(k):
        acc = identity
        for i in range(k):
            e = vinv[j][i] % kept_orders[i]
            for _ in range(e):
                acc = mul(acc, kept[i])
        new_gens.append(acc)

    final = [(g, n) for g, n in zip(new_gens, orders) if n > 1]
    final_gens = [g for g, _ in final]
    final_orders = [n for _, n in final]

    table: dict[T, tuple[int, ...]] = {identity: tuple(0 for _ in final_gens)}
    for idx, (g, n) in enumerate(final):
        for el, vec in list(table.items()):
            acc = el
            for j in range(1, n):
                acc = mul(acc, g)
                nv = list(vec)
                nv[idx] = j
                table[acc] = tuple(nv)
    expected = prod(final_orders) if final_orders else 1
    assert len(table) == expected, "generator relations were inconsistent"
    assert len(table) == len(subgroup), "decomposition lost elements"
    return CyclicDecomposition(final_gens, final_orders, table)


def _subgroup_dlog(
    identity: T,
    gens: Sequence[T],
    orders: Sequence[int],
    subgroup: set[T],
    mul: Callable[[T, T], T],
    target: T,
) -> list[int]:
    """Exponent vector of `target` over `gens` (exhaustive, subgroup is small)."""
    if target == identity:
        return [0] * len(gens)
    table: dict[T, list[int]] = {identity: [0] * len(gens)}
    for idx, (g, n) in enumerate(zip(gens, orders)):
        for el, vec in list(table.items()):
            acc = el
            for j in range(1, n):
                acc = mul(acc, g)
                nv = list(vec)
                nv[idx] = j
                if acc not in table:
                    table[acc] = nv
        if target in table:
            return table[target]
    return table[target]


def solve_congruence_system(
    coeffs: Sequence[Sequence[int]],
    rhs: Sequence[int],
    modulus: int,
) -> tuple[list[int], list[list[int]]] | None:
    """Solve A x = b (mod R) over Z^k.

    Returns None if insoluble, else (x0, basis): the solutions mod R are
    exactly x0 + span_Z(basis) reduced mod R.
    """
    n = len(coeffs)
    k = len(coeffs[0]) if n else 0
    if n == 0:
        return [0] * k, identity_matrix(k)
    # A x + R y = b over the unknowns (x, y) in Z^{k+n}.
    big = [
        [coeffs[i][j] for j in range(k)] + [modulus if t == i else 0 for t in range(n)]
        for i in range(n)
    ]
    u, d, v = smith_normal_form(big)
    b2 = mat_vec(u, rhs)
    total = k + n
    rank = min(n, total)
    sol = [0] * total
    for i in range(n):
        di = d[i][i] if i < rank else 0
        if di == 0:
            if b2[i] != 0:
                return None
        elif b2[i] % di != 0:
            return None
        else:
            sol[i] = b2[i] // di
    full = mat_vec(v, sol)
    x0 = [full[j] % modulus for j in range(k)]
    basis = []
    for j in range(total):
        if j >= rank or d[j][j] == 0:
            col = [v[i][j] % modulus for i in range(k)]
            if any(col):
                basis.append(col)
    return x0, basis


def enumerate_solutions(
    coeffs: Sequence[Sequence[int]],
    rhs: Sequence[int],
    modulus: int,
    component_moduli: Sequence[int],
) -> list[tuple[int, ...]]:
    """All solutions of A x = b (mod R), with x_j reported mod component_moduli[j].

    Each component modulus must divide R and must annihilate the coefficient
    column (coeffs[i][j] * component_moduli[j] == 0 mod R for all i), so that
    reducing x_j is well-defined.  Enumeration is a breadth-first closure over
    the homogeneous basis in the reduced coordinates.
    """
    k = len(component_moduli)
    for j in range(k):
        assert modulus % component_moduli[j] == 0
        for row in coeffs:
            assert row[j] * component_moduli[j] % modulus == 0, "column not well-defined"
    res = solve_congruence_system(coeffs, rhs, modulus)
    if res is None:
        return []
    x0, basis = res

    def reduce(x: Sequence[int]) -> tuple[int, ...]:
        return tuple(x[j] % component_moduli[j] for j in range(k))

    start = reduce(x0)
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for b in basis:
            nxt = tuple((cur[j] + b[j]) % component_moduli[j] for j in range(k))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen)
