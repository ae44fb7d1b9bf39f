"""Cyclic p-groups and their complex representations as exponent multisets.

The group Z/p^(k+1) acts on the basic complex line L through the primitive
root of unity e^(2*pi*i/p^(k+1)).  A representation with zero fixed
submodule is a direct sum of tensor powers L**t with t not divisible by
p^(k+1), so it is fully described by the multiset of exponents t (taken
mod p^(k+1)).  Everything downstream -- Euler classes, dimension bounds,
map constructions -- consumes only this multiset and its p-adic valuation
profile (m_0, ..., m_k), where m_l counts the exponents of valuation
exactly l.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "GroupSpec",
    "RepSpec",
    "make_group",
    "make_rep",
    "delta",
    "effective_reduction",
    "rep_from_profile",
    "rep_from_json",
    "rep_to_json",
]

# Dense coefficient vectors of length N are used throughout; keep N sane.
MAX_ORDER = 1 << 20

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def p_valuation(p: int, t: int) -> int:
    """Exponent of the largest power of p dividing t (t != 0)."""
    if t == 0:
        raise ValueError("valuation of 0 is undefined here")
    v = 0
    while t % p == 0:
        t //= p
        v += 1
    return v


@dataclass(frozen=True)
class GroupSpec:
    """The cyclic group Z/p^(k+1) of order N = p^(k+1)."""

    p: int
    k: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.k, int):
            raise ValueError("p and k must be integers")
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.k < 0:
            raise ValueError(f"k = {self.k} must be >= 0")
        if self.p ** (self.k + 1) > MAX_ORDER:
            raise ValueError(f"group order p^(k+1) exceeds {MAX_ORDER}")

    @property
    def N(self) -> int:
        """Group order p^(k+1)."""
        return self.p ** (self.k + 1)

    def __repr__(self):
        return f"GroupSpec(p={self.p}, k={self.k})"


def make_group(p: int, k: int) -> GroupSpec:
    """Construct Z/p^(k+1), validating that p is prime and k >= 0."""
    return GroupSpec(p, k)


@dataclass(frozen=True)
class RepSpec:
    """A complex representation of Z/p^(k+1) with zero fixed submodule.

    ``exponents`` is the sorted multiset of tensor exponents, each reduced
    to the range [1, N-1].  Use :func:`make_rep` to build one from raw
    input; the constructor itself insists on already-normalized data.
    """

    group: GroupSpec
    exponents: tuple[int, ...]

    def __post_init__(self):
        n = self.group.N
        if not self.exponents:
            raise ValueError("representation needs at least one summand")
        if list(self.exponents) != sorted(self.exponents):
            raise ValueError("exponents must be sorted")
        for t in self.exponents:
            if not 1 <= t <= n - 1:
                raise ValueError(f"exponent {t} not in [1, {n - 1}]")

    @cached_property
    def profile(self) -> tuple[int, ...]:
        """Valuation profile (m_0, ..., m_k): m_l = #{t : v_p(t) = l}."""
        counts = [0] * (self.group.k + 1)
        for t in self.exponents:
            counts[p_valuation(self.group.p, t)] += 1
        return tuple(counts)

    @property
    def dim(self) -> int:
        """Complex dimension (number of line summands)."""
        return len(self.exponents)

    def __repr__(self):
        return f"RepSpec(p={self.group.p}, k={self.group.k}, exponents={list(self.exponents)})"


def make_rep(group: GroupSpec, exponents) -> RepSpec:
    """Build a representation from raw exponents, folding them mod N.

    Raises if any exponent is divisible by N: such a summand would be
    fixed by the whole group.
    """
    exps = list(exponents)
    if not exps:
        raise ValueError("representation needs at least one summand")
    reduced = []
    for t in exps:
        folded = t % group.N
        if folded == 0:
            raise ValueError(
                f"exponent {t} is 0 mod {group.N}: fixed submodule must be zero"
            )
        reduced.append(folded)
    return RepSpec(group, tuple(sorted(reduced)))


def rep_from_profile(group: GroupSpec, profile) -> RepSpec:
    """Expand a valuation profile (m_0, ..., m_k) to canonical exponents.

    Level l contributes m_l copies of the exponent p^l.  Any question
    that only depends on the profile (delta, p-local nonvanishing) gives
    the same answer on this representative.
    """
    counts = list(profile)
    if len(counts) != group.k + 1:
        raise ValueError(f"profile must have length k+1 = {group.k + 1}")
    if any(m < 0 for m in counts):
        raise ValueError("profile entries must be >= 0")
    exps = []
    for l, m in enumerate(counts):
        exps.extend([group.p**l] * m)
    if not exps:
        raise ValueError("profile is empty")
    return make_rep(group, exps)


def delta(rep: RepSpec) -> int:
    """The bound invariant sum_l p^l * m_l - (p^k - 1).

    Defined only when m_k != 0; otherwise the representation lives over a
    proper subgroup and the caller must apply :func:`effective_reduction`
    first, so that every reported value names its group level explicitly.
    """
    profile = rep.profile
    if profile[-1] == 0:
        raise ValueError(
            "m_k = 0: restrict to the effective subgroup first (effective_reduction)"
        )
    p, k = rep.group.p, rep.group.k
    return sum(p**l * m for l, m in enumerate(profile)) - (p**k - 1)


def effective_reduction(rep: RepSpec) -> tuple[int, RepSpec, int]:
    """Restrict to the smallest subgroup level k' on which m_{k'} != 0.

    Returns (k', rep', delta') where k' is the largest valuation present,
    rep' is the same exponent multiset read mod p^(k'+1) as a
    representation of Z/p^(k'+1), and delta' is its invariant.  When
    m_k != 0 the representation is returned unchanged.
    """
    p = rep.group.p
    k_eff = max(p_valuation(p, t) for t in rep.exponents)
    if k_eff == rep.group.k:
        return k_eff, rep, delta(rep)
    sub = GroupSpec(p, k_eff)
    reduced = make_rep(sub, [t % sub.N for t in rep.exponents])
    return k_eff, reduced, delta(reduced)


def rep_from_json(obj: dict) -> RepSpec:
    """Parse the shared representation format {"p":…, "k":…, "exponents":[…]}."""
    try:
        p, k, exps = obj["p"], obj["k"], obj["exponents"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"representation object missing field: {exc}") from exc
    return make_rep(make_group(p, k), exps)


def rep_to_json(rep: RepSpec) -> dict:
    """Serialize to the shared representation format."""
    return {"p": rep.group.p, "k": rep.group.k, "exponents": list(rep.exponents)}
