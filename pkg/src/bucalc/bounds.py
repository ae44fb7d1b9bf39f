"""Dimension bounds for zero-sets of equivariant maps, and comparisons.

The central quantity is delta(V) = sum p^l m_l - (p^k - 1): the zero-set
of an equivariant map from a space that looks like S(nL) through
dimension 2(n-1) into V has covering dimension at least 2(n - 1 - delta)
whenever n > delta, and n <= delta is necessary for a map of spheres
S(nL) -> S(V) to exist at all.

Dimensions of modules are complex throughout; reported zero-set bounds
are real dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import NoMapError, plan_sphere_map
from .group_rep import RepSpec, delta, effective_reduction, make_group, rep_from_profile

__all__ = [
    "BoundsReport",
    "ConstructionSummary",
    "CoincidenceBound",
    "zero_set_lower_bound",
    "sphere_map_necessary",
    "coincidence_bound",
    "compare_prior_bounds",
    "module_zero_set_bound",
    "bounds_report",
    "report_to_json",
]


def _require_top_level(rep: RepSpec):
    if rep.profile[-1] == 0:
        raise ValueError(
            "m_k = 0: restrict to the effective subgroup first (effective_reduction)"
        )


def zero_set_lower_bound(rep: RepSpec, n: int) -> int | None:
    """Real-dimension lower bound 2(n - 1 - delta) for the zero-set of an
    equivariant map S(nL) -> V; None when n <= delta (no information)."""
    _require_top_level(rep)
    d = delta(rep)
    if n <= d:
        return None
    return 2 * (n - 1 - d)


def sphere_map_necessary(rep: RepSpec, n: int) -> bool:
    """Necessary condition n <= delta(V) for a map S(nL) -> S(V) to exist."""
    _require_top_level(rep)
    return n <= delta(rep)


@dataclass(frozen=True)
class CoincidenceBound:
    """Bound for the coincidence set of a null-homotopic map to an
    r-manifold; for p = 2 the extra complex-structure hypothesis on the
    target's tangent bundle is recorded alongside the value."""

    value: int
    extra_hypothesis: str | None = None


def coincidence_bound(p: int, k: int, r: int, n: int) -> CoincidenceBound:
    """Dimension bound 2(n + (p^k - 1) - 1) - r(k+1)(p-1)p^k.

    Internally rebuilt from the permutation-module profile
    m_l = r(p-1)p^(k-l)/2 and the generic 2(n - 1 - delta) bound, then
    checked against the closed form.  For p = 2, r must be even and the
    bound additionally assumes the target manifold's tangent bundle
    admits a complex structure.
    """
    group = make_group(p, k)
    if r < 1:
        raise ValueError(f"manifold dimension r = {r} must be >= 1")
    note = None
    if p == 2:
        if r % 2:
            raise ValueError("p = 2 requires even r (tangent complex structure)")
        note = "p = 2: assumes the target tangent bundle admits a complex structure"
    profile = [r * (p - 1) * p ** (k - l) // 2 for l in range(k + 1)]
    generic = 2 * (n - 1 - delta(rep_from_profile(group, profile)))
    closed = 2 * (n + (p**k - 1) - 1) - r * (k + 1) * (p - 1) * p**k
    if generic != closed:
        raise AssertionError(
            f"closed form {closed} disagrees with generic bound {generic}"
        )
    return CoincidenceBound(closed, note)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def compare_prior_bounds(rep: RepSpec, n: int) -> dict[str, int | None]:
    """Compare our zero-set bound with two published ones for S(nL) -> V.

    Keys: ``ours`` = 2(n - 1 - delta) (None when n <= delta, after
    restricting to the effective level if m_k = 0); ``bms`` =
    2*ceil((n - 1 - p^k' m)/p^k') at the effective level k'; and
    ``crabb2019`` = 2(n - 2^k m - 1), the earlier mod-2 connective
    K-theory bound, applicable only when p = 2 and every exponent has
    valuation exactly k (None otherwise).
    """
    p = rep.group.p
    m = rep.dim
    k_eff, _, d_eff = effective_reduction(rep)
    ours = 2 * (n - 1 - d_eff) if n > d_eff else None
    bms = 2 * _ceil_div(n - 1 - p**k_eff * m, p**k_eff)
    k = rep.group.k
    if p == 2 and rep.profile[-1] == m:
        crabb2019 = 2 * (n - 2**k * m - 1)
    else:
        crabb2019 = None
    return {"ours": ours, "bms": bms, "crabb2019": crabb2019}


def module_zero_set_bound(U: RepSpec, V: RepSpec) -> tuple[int | None, int]:
    """Zero-set bound 2(n - delta(V) - 1) for maps S(U) -> V, n = dim U.

    Also returns the order of the finite deck group used to compare S(U)
    with S(nL): the product of U's exponents (each coordinate is reached
    by a power map whose fibre is a group of roots of unity).
    """
    if U.group != V.group:
        raise ValueError(f"group mismatch: {U.group} vs {V.group}")
    _require_top_level(V)
    n = U.dim
    d = delta(V)
    gamma_order = 1
    for t in U.exponents:
        gamma_order *= t
    if n <= d:
        return None, gamma_order
    return 2 * (n - d - 1), gamma_order


@dataclass(frozen=True)
class ConstructionSummary:
    n_0: int
    c_achieved: int
    zero_set_dim: int


@dataclass(frozen=True)
class BoundsReport:
    """Everything we can say about equivariant maps S(nL) -> V."""

    rep: RepSpec
    n: int
    delta: int
    lower_bound_dim: int | None
    necessary_ok: bool
    construction: ConstructionSummary | None
    comparisons: dict[str, int | None]


def bounds_report(rep: RepSpec, n: int) -> BoundsReport:
    """Assemble the full report; requires m_k != 0 (reduce first otherwise).

    The construction block is present only when the planner succeeds and
    n exceeds the planned source dimension, so that the padded map's
    zero-set sphere is defined.
    """
    _require_top_level(rep)
    d = delta(rep)
    construction = None
    try:
        plan = plan_sphere_map(rep)
    except NoMapError:
        plan = None
    if plan is not None and n > plan.source_dim:
        construction = ConstructionSummary(
            n_0=plan.source_dim,
            c_achieved=plan.c_achieved,
            zero_set_dim=2 * (n - plan.source_dim) - 1,
        )
    return BoundsReport(
        rep=rep,
        n=n,
        delta=d,
        lower_bound_dim=zero_set_lower_bound(rep, n),
        necessary_ok=sphere_map_necessary(rep, n),
        construction=construction,
        comparisons=compare_prior_bounds(rep, n),
    )


def report_to_json(report: BoundsReport) -> dict:
    construction = None
    if report.construction is not None:
        construction = {
            "n_0": report.construction.n_0,
            "c_achieved": report.construction.c_achieved,
            "zero_set_dim": report.construction.zero_set_dim,
        }
    return {
        "delta": report.delta,
        "n": report.n,
        "lower_bound_dim": report.lower_bound_dim,
        "necessary": report.necessary_ok,
        "construction": construction,
        "comparisons": dict(report.comparisons),
    }
