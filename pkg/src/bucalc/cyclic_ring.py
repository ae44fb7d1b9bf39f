"""Exact arithmetic in Z[z]/(z^N - 1) and quotients by the ideal ((1-z)^n).

A :class:`CyclicPoly` is a dense length-N vector of Python integers, so
all arithmetic is exact at any size.  The quotient ring
Z[z]/(z^N - 1, (1-z)^n) is handled additively: the ideal ((1-z)^n) is the
sublattice of Z^N spanned by the N cyclic shifts z^i * (1-z)^n, and a
single Smith normal form of that generator matrix answers both membership
questions (is x zero in the quotient?) and structure questions (free rank
and torsion of the quotient group).  Localizing at p only relaxes the
divisibility tests to the p-parts of the invariant factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .group_rep import GroupSpec, p_valuation

__all__ = [
    "INTEGRAL",
    "P_LOCAL",
    "CyclicPoly",
    "QuotientCtx",
    "from_coeffs",
    "monomial",
    "one",
    "zero",
    "cyclic_mul",
    "binomial_one_minus_z",
    "smith_normal_form",
    "make_quotient_ctx",
    "quotient_ctx",
    "smith_coordinates",
    "member_from_coords",
    "is_zero_in_quotient",
    "quotient_invariants",
]

INTEGRAL = "integral"
P_LOCAL = "p_local"
_LOCALITIES = (INTEGRAL, P_LOCAL)


@dataclass(frozen=True)
class CyclicPoly:
    """An element of Z[z]/(z^N - 1): coeffs[i] is the coefficient of z^i."""

    group: GroupSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.N:
            raise ValueError(
                f"coefficient vector has length {len(self.coeffs)}, expected N = {self.group.N}"
            )

    def _check_group(self, other: "CyclicPoly"):
        if self.group != other.group:
            raise ValueError(f"group mismatch: {self.group} vs {other.group}")

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        self._check_group(other)
        return CyclicPoly(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclicPoly") -> "CyclicPoly":
        self._check_group(other)
        return CyclicPoly(self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclicPoly":
        return CyclicPoly(self.group, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, CyclicPoly):
            return cyclic_mul(self, other)
        if isinstance(other, int):
            return CyclicPoly(self.group, tuple(other * a for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __repr__(self):
        return f"CyclicPoly(N={self.group.N}, {list(self.coeffs)})"


def from_coeffs(group: GroupSpec, coeffs) -> CyclicPoly:
    """Wrap an exact coefficient vector of length N."""
    return CyclicPoly(group, tuple(int(c) for c in coeffs))


def zero(group: GroupSpec) -> CyclicPoly:
    return CyclicPoly(group, (0,) * group.N)


def one(group: GroupSpec) -> CyclicPoly:
    return monomial(group, 0)


def monomial(group: GroupSpec, exp: int, coeff: int = 1) -> CyclicPoly:
    """coeff * z^exp, with the exponent folded mod N."""
    c = [0] * group.N
    c[exp % group.N] = coeff
    return CyclicPoly(group, tuple(c))


def cyclic_mul(a: CyclicPoly, b: CyclicPoly) -> CyclicPoly:
    """Exact product in Z[z]/(z^N - 1) (cyclic convolution)."""
    a._check_group(b)
    n = a.group.N
    # Iterate over the sparser factor; products like (1-z)^j have few terms.
    if sum(1 for c in a.coeffs if c) < sum(1 for c in b.coeffs if c):
        a, b = b, a
    out = [0] * n
    ac = a.coeffs
    for j, bj in enumerate(b.coeffs):
        if bj == 0:
            continue
        for i, ai in enumerate(ac):
            if ai:
                out[(i + j) % n] += ai * bj
    return CyclicPoly(a.group, tuple(out))


@lru_cache(maxsize=None)
def binomial_one_minus_z(group: GroupSpec, n: int) -> CyclicPoly:
    """(1 - z)^n expanded exactly and folded mod z^N - 1 (n >= 0)."""
    if n < 0:
        raise ValueError(f"n = {n} must be >= 0")
    out = [0] * group.N
    for i in range(n + 1):
        out[i % group.N] += (-comb(n, i) if i % 2 else comb(n, i))
    return CyclicPoly(group, tuple(out))


# ---------------------------------------------------------------------------
# Smith normal form over Z, with both unimodular transforms.


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (d, U, W) with U * matrix * W = diag(d_1, ..., d_r, 0, ...),
    d_i > 0 and d_1 | d_2 | ... | d_r.  U and W are unimodular (products
    of elementary operations).  Entries are Python ints, so nothing
    overflows.
    """
    D = [list(map(int, row)) for row in matrix]
    m = len(D)
    n = len(D[0]) if m else 0
    for row in D:
        if len(row) != n:
            raise ValueError("matrix rows have unequal lengths")
    U = _identity(m)
    W = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in W:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        Di, Dj = D[i], D[j]
        for t in range(n):
            Di[t] += c * Dj[t]
        Ui, Uj = U[i], U[j]
        for t in range(m):
            Ui[t] += c * Uj[t]

    def add_col(i, j, c):
        # col_i += c * col_j
        for row in D:
            row[i] += c * row[j]
        for row in W:
            row[i] += c * row[j]

    t = 0
    bound = min(m, n)
    while t < bound:
        # Pivot: smallest nonzero entry (in absolute value) of the submatrix.
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best):
                    best, piv = v, (i, j)
        if piv is None:
            break
        if piv != (t, t):
            if piv[0] != t:
                swap_rows(piv[0], t)
            if piv[1] != t:
                swap_cols(piv[1], t)

        while True:
            # Clear the pivot column by division with remainder.
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            leftover = [i for i in range(t + 1, m) if D[i][t]]
            if leftover:
                i = min(leftover, key=lambda r: abs(D[r][t]))
                swap_rows(i, t)
                continue
            # Clear the pivot row (column operations leave column t intact).
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            leftover = [j for j in range(t + 1, n) if D[t][j]]
            if leftover:
                j = min(leftover, key=lambda c: abs(D[t][c]))
                swap_cols(j, t)
                continue
            # Divisibility: d_t must divide the rest of the submatrix.
            d = D[t][t]
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % d:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)  # pulls the bad row in; column t stays d, 0, ...

        if D[t][t] < 0:
            for j in range(n):
                D[t][j] = -D[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1

    diag = [D[i][i] for i in range(t)]
    return diag, U, W


# ---------------------------------------------------------------------------
# The quotient Z[z]/(z^N - 1, (1-z)^n) as Z^N modulo a relation lattice.


@dataclass(frozen=True)
class QuotientCtx:
    """Precomputed normal-form data for the ideal ((1-z)^n) in Z[z]/(z^N-1).

    ``generators`` holds the relation lattice: column i is
    z^i * (1-z)^n folded mod z^N - 1.  ``row_transform`` (U) and
    ``col_transform`` (W) are the unimodular matrices with
    U * generators * W = diag(invariant_factors, 0, ...).  Membership of x
    in the lattice is decided in Smith coordinates y = U*x: y_i must be
    divisible by the i-th invariant factor inside the rank and vanish
    outside it.  Immutable; share freely.
    """

    group: GroupSpec
    n: int
    generators: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]
    row_transform: tuple[tuple[int, ...], ...]
    col_transform: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def make_quotient_ctx(group: GroupSpec, n: int) -> QuotientCtx:
    """Assemble the relation lattice of ((1-z)^n) and its Smith data (n >= 1)."""
    if n < 1:
        raise ValueError(f"n = {n} must be >= 1")
    g = binomial_one_minus_z(group, n).coeffs
    N = group.N
    # generators[r][c] = coefficient of z^r in z^c * (1-z)^n
    gens = [[g[(r - c) % N] for c in range(N)] for r in range(N)]
    d, U, W = smith_normal_form(gens)
    return QuotientCtx(
        group=group,
        n=n,
        generators=tuple(tuple(row) for row in gens),
        invariant_factors=tuple(d),
        row_transform=tuple(tuple(row) for row in U),
        col_transform=tuple(tuple(row) for row in W),
    )


@lru_cache(maxsize=None)
def quotient_ctx(group: GroupSpec, n: int) -> QuotientCtx:
    """Cached :func:`make_quotient_ctx`; one normal form per (group, n)."""
    return make_quotient_ctx(group, n)


@lru_cache(maxsize=None)
def _p_part_factors(ctx_group: GroupSpec, factors: tuple[int, ...]) -> tuple[int, ...]:
    p = ctx_group.p
    return tuple(p ** p_valuation(p, d) for d in factors)


def smith_coordinates(x: CyclicPoly, ctx: QuotientCtx) -> tuple[int, ...]:
    """Coordinates U*x of x in the Smith basis of the relation lattice."""
    if x.group != ctx.group:
        raise ValueError(f"group mismatch: {x.group} vs {ctx.group}")
    xc = x.coeffs
    return tuple(sum(u * v for u, v in zip(row, xc)) for row in ctx.row_transform)


def member_from_coords(y, ctx: QuotientCtx, locality: str = INTEGRAL) -> bool:
    """Membership verdict given Smith coordinates y = U*x.

    Inside the rank, y_i must be divisible by the i-th invariant factor
    (only by its p-part in p_local mode); outside the rank y_i must vanish
    exactly in both modes.
    """
    if locality not in _LOCALITIES:
        raise ValueError(f"locality must be one of {_LOCALITIES}")
    r = ctx.rank
    if locality == INTEGRAL:
        mods = ctx.invariant_factors
    else:
        mods = _p_part_factors(ctx.group, ctx.invariant_factors)
    for i in range(r):
        if y[i] % mods[i]:
            return False
    return all(y[i] == 0 for i in range(r, len(y)))


def is_zero_in_quotient(x: CyclicPoly, ctx: QuotientCtx, locality: str = INTEGRAL) -> bool:
    """Decide whether x lies in the relation lattice of ctx.

    ``integral`` tests membership over Z.  ``p_local`` tests membership
    after inverting every prime other than p.
    """
    return member_from_coords(smith_coordinates(x, ctx), ctx, locality)


def quotient_invariants(ctx: QuotientCtx) -> tuple[int, list[int]]:
    """Structure of Z^N / lattice: (free rank, invariant factors > 1)."""
    free_rank = ctx.group.N - ctx.rank
    torsion = [d for d in ctx.invariant_factors if d > 1]
    return free_rank, torsion
