"""K-theory Euler classes over lens spaces and their nonvanishing thresholds.

The Euler class of the line bundle with exponent t is 1 - z^t in
Z[z]/(z^N - 1); for a sum of lines it is the product of the factors.
Whether such a class survives in the truncated ring
Z[z]/(z^N - 1, (1-z)^n) is decided exactly by lattice membership
(:func:`bucalc.cyclic_ring.is_zero_in_quotient`), either over Z or
localized at p.

The nonvanishing threshold in n is governed by the invariant
delta = sum p^l m_l - (p^k - 1): the class times (1-z)^j is non-zero for
n >= j + 1 + delta, and p-locally it is zero as soon as n <= j + delta,
so the p-local threshold is sharp.  Alongside the membership oracle this
module implements the algebra that proves the threshold -- the factor
phi(z) = 1 + z^(p^k) + ... + z^((p-1)p^k) of 1 - z^N, and the correction
polynomials a_l with

    (1 - z^(p^l))^((p-1) p^(k-l)) = -p (1 + (1-z) a_l(z)) + phi(z)

exactly in Z[z] -- so the two routes can be cross-checked.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .cyclic_ring import (
    INTEGRAL,
    P_LOCAL,
    CyclicPoly,
    binomial_one_minus_z,
    cyclic_mul,
    member_from_coords,
    monomial,
    one,
    quotient_ctx,
    smith_coordinates,
)
from .group_rep import GroupSpec, RepSpec

__all__ = [
    "INTEGRAL",
    "P_LOCAL",
    "EulerQuery",
    "euler_class",
    "is_nonvanishing",
    "sharpness_scan",
    "phi_poly",
    "phi_correction_poly",
]


@dataclass(frozen=True)
class EulerQuery:
    """One membership question: does euler_class(rep) * (1-z)^j survive
    in the quotient truncated at (1-z)^n, integrally or p-locally?
    """

    rep: RepSpec
    n: int
    j: int = 0
    locality: str = P_LOCAL

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n = {self.n} must be >= 1")
        if self.j < 0:
            raise ValueError(f"j = {self.j} must be >= 0")
        if self.locality not in (INTEGRAL, P_LOCAL):
            raise ValueError(f"unknown locality {self.locality!r}")


@lru_cache(maxsize=None)
def euler_class(rep: RepSpec) -> CyclicPoly:
    """The product of the line factors 1 - z^t over the rep's exponents."""
    group = rep.group
    acc = one(group)
    for t in rep.exponents:
        acc = cyclic_mul(acc, one(group) - monomial(group, t))
    return acc


def _require_top_level(rep: RepSpec):
    if rep.profile[-1] == 0:
        raise ValueError(
            "m_k = 0: restrict to the effective subgroup first (effective_reduction)"
        )


@lru_cache(maxsize=1 << 17)
def _coords(rep: RepSpec, j: int, n: int) -> tuple[int, ...]:
    """Smith coordinates of euler_class(rep)*(1-z)^j at truncation n.

    Cached so that the integral and p-local verdicts of the same query,
    and grid scans over (j, n), share one matrix-vector product.
    """
    x = cyclic_mul(euler_class(rep), binomial_one_minus_z(rep.group, j))
    return smith_coordinates(x, quotient_ctx(rep.group, n))


def is_nonvanishing(query: EulerQuery) -> bool:
    """True iff the queried class is non-zero in the truncated quotient.

    Guarantees: true (both localities) whenever n >= j + 1 + delta(rep);
    false in p_local mode whenever n <= j + delta(rep).
    """
    _require_top_level(query.rep)
    ctx = quotient_ctx(query.rep.group, query.n)
    y = _coords(query.rep, query.j, query.n)
    return not member_from_coords(y, ctx, query.locality)


def sharpness_scan(
    rep: RepSpec, n: int, locality: str = P_LOCAL, *, threads: int = 1
) -> tuple[int | None, dict[int, bool]]:
    """Scan j = 0..n and report the largest j with a non-zero verdict.

    Returns (j_max, table) where table[j] is the verdict for each j and
    j_max is None when the class is already zero at j = 0.  In p_local
    mode j_max equals n - 1 - delta(rep) exactly whenever n > delta(rep).
    Verdicts are monotone in j (the relation lattice is an ideal), so the
    table is a run of True followed by False.
    """
    _require_top_level(rep)
    if n < 1:
        raise ValueError(f"n = {n} must be >= 1")
    js = range(n + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(
                pool.map(lambda j: is_nonvanishing(EulerQuery(rep, n, j, locality)), js)
            )
    else:
        verdicts = [is_nonvanishing(EulerQuery(rep, n, j, locality)) for j in js]
    table = dict(zip(js, verdicts))
    j_max = None
    for j, ok in table.items():
        if ok:
            j_max = j
    return j_max, table


def phi_poly(group: GroupSpec) -> CyclicPoly:
    """phi(z) = 1 + z^(p^k) + ... + z^((p-1) p^k).

    Satisfies (1 - z^(p^k)) * phi(z) = 1 - z^(p^(k+1)) = 0 in Z[z]/(z^N-1).
    """
    p, k = group.p, group.k
    coeffs = [0] * group.N
    for i in range(p):
        coeffs[i * p**k] = 1
    return CyclicPoly(group, tuple(coeffs))


# ---------------------------------------------------------------------------
# Honest polynomials in Z[x] (no cyclic folding) for the correction identity.


def _poly_binom_power(s: int, e: int) -> list[int]:
    """(1 - x^s)^e as a dense coefficient list of length s*e + 1."""
    out = [0] * (s * e + 1)
    for i in range(e + 1):
        out[s * i] = -comb(e, i) if i % 2 else comb(e, i)
    return out


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def phi_correction_poly(group: GroupSpec, l: int) -> list[int]:
    """The integral polynomial a_l(x) with
    (1 - x^(p^l))^((p-1) p^(k-l)) = -p (1 + (1-x) a_l(x)) + phi(x) in Z[x].

    Returned as an ascending coefficient list (degree <= (p-1)p^k - 1).
    Both exact divisions are asserted; a failure would falsify the
    identity and raises ArithmeticError.
    """
    p, k = group.p, group.k
    if not 0 <= l <= k:
        raise ValueError(f"l = {l} must satisfy 0 <= l <= k = {k}")
    lhs = _poly_binom_power(p**l, (p - 1) * p ** (k - l))
    phi = [0] * ((p - 1) * p**k + 1)
    for i in range(p):
        phi[i * p**k] = 1
    diff = _strip(_poly_sub(lhs, phi))
    # diff = -p (1 + (1-x) a_l): divide by -p, drop the 1, divide by 1-x.
    q = []
    for c in diff:
        if c % p:
            raise ArithmeticError(f"coefficient {c} not divisible by p = {p}")
        q.append(c // -p)
    if not q:
        q = [0]
    q[0] -= 1
    # Divide q by (1 - x): with q = (1-x)*a, a_i = q_i + a_{i-1}; the final
    # carry is the remainder q(1) and must vanish.
    a = []
    carry = 0
    for c in q:
        carry += c
        a.append(carry)
    if carry != 0:
        raise ArithmeticError("remainder after dividing by (1 - x) is non-zero")
    a.pop()  # the last entry duplicates the (zero) remainder slot
    a = _strip(a)
    if len(a) > (p - 1) * p**k:
        raise ArithmeticError("correction polynomial exceeds its degree bound")
    return a if a else [0]
