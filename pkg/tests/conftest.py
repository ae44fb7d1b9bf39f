"""Shared test oracles, kept independent of the package internals.

Lattice membership is re-decided from scratch here: the ideal generators
are rebuilt with ``math.comb``, and membership is tested by comparing
sympy Hermite normal forms of the generator matrix with and without the
candidate column (equal lattices have equal HNFs).  p-local membership
reduces to integral membership of s*x where s is the prime-to-p part of
the torsion exponent, read off sympy's invariant factors.
"""

from math import comb

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, invariant_factors


def folded_one_minus_z(N: int, n: int) -> list[int]:
    """(1 - z)^n folded mod z^N - 1, computed directly from binomials."""
    out = [0] * N
    for i in range(n + 1):
        out[i % N] += comb(n, i) * (-1) ** i
    return out


def ideal_generator_columns(N: int, n: int) -> Matrix:
    """Columns z^i * (1-z)^n, i = 0..N-1, as a sympy integer matrix."""
    g = folded_one_minus_z(N, n)
    return Matrix([[g[(r - c) % N] for c in range(N)] for r in range(N)])


def hnf_member(gens: Matrix, x) -> bool:
    """x in the column lattice of gens, via canonical Hermite forms."""
    augmented = gens.row_join(Matrix(len(x), 1, list(x)))
    return hermite_normal_form(gens) == hermite_normal_form(augmented)


def hnf_member_p_local(gens: Matrix, x, p: int) -> bool:
    """x in lattice tensor Z_(p): s*x must be a member for the
    prime-to-p part s of the torsion exponent."""
    s = 1
    for d in invariant_factors(gens):
        d = int(d)
        if d != 0:
            while d % p == 0:
                d //= p
            s = s * d // _gcd(s, d)  # lcm of the prime-to-p parts
    return hnf_member(gens, [s * v for v in x])


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@pytest.fixture
def small_groups():
    from bucalc import make_group

    return [make_group(2, 0), make_group(2, 1), make_group(3, 0), make_group(3, 1),
            make_group(2, 2), make_group(5, 0)]
