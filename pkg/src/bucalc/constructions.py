"""Certificates for equivariant sphere maps and the map planner.

A certificate is a typed expression tree whose leaves are primitive maps
-- identities, inclusions, coordinatewise power maps, and the
Stolz--Meyer map S(p(d-2)L) -> S(d L^p) over Z/p^2, which is admitted as
an axiom (its existence is a stable-homotopy fact, not re-proved here) --
and whose internal nodes are combinators: join of spheres, composition,
the wreath power (p-fold join restricted to a cyclic subgroup of the
wreath product, raising the group level by one), and inflation along the
quotient Z/p^(kappa+1) -> Z/p^kappa, which multiplies every exponent
by p.

Every node carries its claimed source and target sphere types;
:func:`validate_certificate` re-derives both bottom-up from the typing
rules and rejects any mismatch with the path of the offending node, so a
serialized certificate can be re-checked by third parties.

The planner assembles, for a representation V with m_k != 0 and enough
summands, a certificate for an equivariant map S(n_0 L) -> S(V) whose
source dimension satisfies n_0 >= sum(p^l m_l) - c with the closed-form
worst case c = p^k (k+2)(k+1) - (p^(k+1)-1)/(p-1), while never exceeding
the necessary bound n_0 <= delta(V).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .group_rep import GroupSpec, RepSpec, delta, make_group, p_valuation

__all__ = [
    "SphereType",
    "Certificate",
    "CertificateError",
    "NoMapError",
    "sphere",
    "sphere_of_rep",
    "identity_map",
    "inclusion_into",
    "power_map",
    "stolz_meyer_map",
    "join_maps",
    "compose_maps",
    "wreath_power_map",
    "inflate_map",
    "validate_certificate",
    "certificate_to_dict",
    "certificate_from_dict",
    "build_level_map",
    "worst_case_defect",
    "SphereMapPlan",
    "plan_sphere_map",
    "padded_zero_set",
]

KINDS = (
    "identity",
    "inclusion",
    "power",
    "stolz_meyer",
    "join",
    "compose",
    "wreath_power",
    "inflate",
)


class CertificateError(ValueError):
    """A typing-rule violation, tagged with the path of the bad node."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class NoMapError(ValueError):
    """The planner cannot construct a map (no level reaches its threshold)."""


@dataclass(frozen=True)
class SphereType:
    """The unit sphere of a sum of line representations over Z/p^kappa.

    ``summands`` is the canonical form: (multiplicity, exponent) pairs
    with distinct exponents in [1, N-1], sorted by exponent, zero
    multiplicities removed.
    """

    group: GroupSpec
    summands: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        """Complex dimension: total multiplicity."""
        return sum(a for a, _ in self.summands)

    def direct_sum(self, other: "SphereType") -> "SphereType":
        if self.group != other.group:
            raise ValueError(f"group mismatch: {self.group} vs {other.group}")
        return sphere(self.group, self.summands + other.summands)

    def inflated(self) -> "SphereType":
        """Pull back along Z/p^(kappa+1) -> Z/p^kappa: exponents times p."""
        up = make_group(self.group.p, self.group.k + 1)
        return sphere(up, tuple((a, self.group.p * u) for a, u in self.summands))

    def __repr__(self):
        parts = " + ".join(f"{a}L^{u}" for a, u in self.summands)
        return f"S({parts} | Z/{self.group.N})"


def sphere(group: GroupSpec, pairs) -> SphereType:
    """Canonicalize (multiplicity, exponent) pairs into a SphereType.

    Exponents are folded mod N and must not be 0 there; equal exponents
    merge; zero multiplicities drop out.
    """
    merged: dict[int, int] = {}
    for a, u in pairs:
        if a < 0:
            raise ValueError(f"negative multiplicity {a}")
        if a == 0:
            continue
        u = u % group.N
        if u == 0:
            raise ValueError("exponent 0 mod N: summand would be a trivial line")
        merged[u] = merged.get(u, 0) + a
    return SphereType(group, tuple((a, u) for u, a in sorted(merged.items())))


def sphere_of_rep(rep: RepSpec) -> SphereType:
    """The representation sphere S(V) of an exponent multiset."""
    return sphere(rep.group, [(1, t) for t in rep.exponents])


@dataclass(frozen=True)
class Certificate:
    """One node of a map certificate; treat ``params`` as immutable."""

    kind: str
    group: GroupSpec
    params: dict[str, Any] = field(compare=False)
    children: tuple["Certificate", ...]
    source: SphereType
    target: SphereType


# ---------------------------------------------------------------------------
# Typing rules.  _rule_endpoints is the single source of truth used both by
# the smart constructors below and by the validator.


def _single_summand(st: SphereType, what: str, path: str) -> tuple[int, int]:
    if len(st.summands) != 1:
        raise CertificateError(path, f"{what} must be a single summand, got {st}")
    return st.summands[0]


def _rule_endpoints(
    kind: str,
    group: GroupSpec,
    params: dict,
    claimed_source: SphereType,
    child_endpoints: list[tuple[SphereType, SphereType]],
    path: str = "root",
) -> tuple[SphereType, SphereType]:
    N = group.N
    n_children = len(child_endpoints)

    def need_children(n):
        if n_children != n:
            raise CertificateError(path, f"{kind} expects {n} children, got {n_children}")

    if kind == "identity":
        need_children(0)
        if claimed_source.group != group:
            raise CertificateError(path, "identity sphere lives over the wrong group")
        return claimed_source, claimed_source

    if kind == "inclusion":
        need_children(0)
        if claimed_source.group != group:
            raise CertificateError(path, "inclusion source lives over the wrong group")
        try:
            extra = sphere(group, params["extra"])
        except (KeyError, ValueError, TypeError) as exc:
            raise CertificateError(path, f"bad inclusion extra summands: {exc}") from exc
        return claimed_source, claimed_source.direct_sum(extra)

    if kind == "power":
        need_children(0)
        try:
            s, t = int(params["s"]), int(params["t"])
        except (KeyError, ValueError, TypeError) as exc:
            raise CertificateError(path, f"bad power parameters: {exc}") from exc
        if not 1 <= s <= N - 1:
            raise CertificateError(path, f"power source exponent {s} not in [1, {N - 1}]")
        if t < 1:
            raise CertificateError(path, f"power degree {t} must be >= 1")
        if (s * t) % N == 0:
            raise CertificateError(path, f"power degree {t} kills the exponent {s} mod {N}")
        return sphere(group, [(1, s)]), sphere(group, [(1, s * t)])

    if kind == "stolz_meyer":
        need_children(0)
        if group.k != 1:
            raise CertificateError(path, "stolz_meyer is a map over Z/p^2 (level kappa = 2)")
        try:
            d = int(params["d"])
        except (KeyError, ValueError, TypeError) as exc:
            raise CertificateError(path, f"bad stolz_meyer parameter: {exc}") from exc
        if d <= 2:
            raise CertificateError(path, f"stolz_meyer needs d > 2, got {d}")
        p = group.p
        return sphere(group, [(p * (d - 2), 1)]), sphere(group, [(d, p)])

    if kind == "join":
        if n_children < 2:
            raise CertificateError(path, f"join expects >= 2 children, got {n_children}")
        src, tgt = child_endpoints[0]
        for csrc, ctgt in child_endpoints[1:]:
            if csrc.group != src.group:
                raise CertificateError(path, "join children live over different groups")
            src = src.direct_sum(csrc)
            tgt = tgt.direct_sum(ctgt)
        if src.group != group:
            raise CertificateError(path, "join node group differs from its children")
        return src, tgt

    if kind == "compose":
        need_children(2)
        (outer_src, outer_tgt), (inner_src, inner_tgt) = child_endpoints
        if inner_tgt != outer_src:
            raise CertificateError(
                path,
                f"composition mismatch: inner target {inner_tgt} != outer source {outer_src}",
            )
        if inner_src.group != group:
            raise CertificateError(path, "compose node group differs from its children")
        return inner_src, outer_tgt

    if kind == "wreath_power":
        need_children(1)
        csrc, ctgt = child_endpoints[0]
        p = group.p
        if csrc.group.p != p or csrc.group.k != group.k - 1:
            raise CertificateError(path, "wreath_power child must live one level below")
        if csrc.group.k + 1 < 2:
            raise CertificateError(path, "wreath_power needs child level kappa >= 2")
        r, su = _single_summand(csrc, "wreath_power child source", path)
        s, tu = _single_summand(ctgt, "wreath_power child target", path)
        if su != 1:
            raise CertificateError(path, f"child source exponent must be 1, got {su}")
        if tu != p:
            raise CertificateError(path, f"child target exponent must be p = {p}, got {tu}")
        return sphere(group, [(p * r, 1)]), sphere(group, [(p * s, p)])

    if kind == "inflate":
        need_children(1)
        csrc, ctgt = child_endpoints[0]
        if csrc.group.p != group.p or csrc.group.k != group.k - 1:
            raise CertificateError(path, "inflate child must live one level below")
        return csrc.inflated(), ctgt.inflated()

    raise CertificateError(path, f"unknown node kind {kind!r}")


def _make(kind, group, params, children, claimed_source=None) -> Certificate:
    endpoints = [(c.source, c.target) for c in children]
    src, tgt = _rule_endpoints(kind, group, params, claimed_source, endpoints)
    return Certificate(kind, group, params, tuple(children), src, tgt)


def identity_map(st: SphereType) -> Certificate:
    return _make("identity", st.group, {}, (), st)


def inclusion_into(source: SphereType, extra_pairs) -> Certificate:
    """Inclusion of S(source) into S(source + extra)."""
    return _make("inclusion", source.group, {"extra": [list(t) for t in extra_pairs]},
                 (), source)


def power_map(group: GroupSpec, s: int, t: int) -> Certificate:
    """The coordinatewise t-th power map S(L^s) -> S(L^(s*t))."""
    return _make("power", group, {"s": s, "t": t}, ())


def stolz_meyer_map(p: int, d: int) -> Certificate:
    """The axiom map S(p(d-2)L) -> S(d L^p) over Z/p^2, d > 2."""
    return _make("stolz_meyer", make_group(p, 1), {"d": d}, ())


def join_maps(*certs: Certificate) -> Certificate:
    if len(certs) == 1:
        return certs[0]
    return _make("join", certs[0].group, {}, certs)


def compose_maps(outer: Certificate, inner: Certificate) -> Certificate:
    """outer after inner (children are stored in that order)."""
    return _make("compose", inner.group, {}, (outer, inner))


def wreath_power_map(f: Certificate) -> Certificate:
    """p-fold join of f, restricted to the cyclic group one level up."""
    return _make("wreath_power", make_group(f.group.p, f.group.k + 1), {}, (f,))


def inflate_map(f: Certificate) -> Certificate:
    """Regard f as a map one level up; every exponent is multiplied by p."""
    return _make("inflate", make_group(f.group.p, f.group.k + 1), {}, (f,))


# ---------------------------------------------------------------------------
# Validation of (possibly deserialized, possibly tampered) certificates.


def _validate(cert: Certificate, path: str) -> tuple[SphereType, SphereType]:
    if cert.kind not in KINDS:
        raise CertificateError(path, f"unknown node kind {cert.kind!r}")
    child_endpoints = [
        _validate(c, f"{path}.children[{i}]") for i, c in enumerate(cert.children)
    ]
    src, tgt = _rule_endpoints(
        cert.kind, cert.group, cert.params, cert.source, child_endpoints, path
    )
    if cert.source != src:
        raise CertificateError(path, f"claimed source {cert.source} != derived {src}")
    if cert.target != tgt:
        raise CertificateError(path, f"claimed target {cert.target} != derived {tgt}")
    if cert.source.group != cert.group or cert.target.group != cert.group:
        raise CertificateError(path, "endpoint group differs from node group")
    return src, tgt


def validate_certificate(cert: Certificate) -> tuple[SphereType, SphereType]:
    """Re-derive every node's endpoints; return the root (source, target).

    Raises :class:`CertificateError` carrying the path of the first
    offending node.
    """
    return _validate(cert, "root")


# ---------------------------------------------------------------------------
# JSON wire format.
# {"group": {"p": int, "kappa": int}, "kind": str, "params": {...},
#  "children": [...], "source": [[mult, exp], ...], "target": [[mult, exp], ...]}
# kappa is the exponent of the group order (the group is Z/p^kappa).


def _sphere_to_json(st: SphereType) -> list[list[int]]:
    return [[a, u] for a, u in st.summands]


def _sphere_from_json(group: GroupSpec, arr, path: str) -> SphereType:
    if not isinstance(arr, list):
        raise CertificateError(path, "sphere type must be a list of [mult, exp] pairs")
    pairs = []
    for item in arr:
        if not (isinstance(item, list) and len(item) == 2
                and all(isinstance(v, int) for v in item)):
            raise CertificateError(path, f"bad summand entry {item!r}")
        a, u = item
        if not 1 <= u <= group.N - 1:
            raise CertificateError(path, f"exponent {u} not in [1, {group.N - 1}]")
        if a < 0:
            raise CertificateError(path, f"negative multiplicity {a}")
        pairs.append((a, u))
    return sphere(group, pairs)


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "group": {"p": cert.group.p, "kappa": cert.group.k + 1},
        "kind": cert.kind,
        "params": cert.params,
        "children": [certificate_to_dict(c) for c in cert.children],
        "source": _sphere_to_json(cert.source),
        "target": _sphere_to_json(cert.target),
    }


def certificate_from_dict(obj: dict, path: str = "root") -> Certificate:
    """Parse the wire format without trusting it; run
    :func:`validate_certificate` afterwards to check the claims."""
    if not isinstance(obj, dict):
        raise CertificateError(path, "certificate node must be an object")
    try:
        gobj = obj["group"]
        p, kappa = int(gobj["p"]), int(gobj["kappa"])
        kind = obj["kind"]
        params = obj.get("params", {})
        children = obj.get("children", [])
        source = obj["source"]
        target = obj["target"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(path, f"malformed node: {exc}") from exc
    if kappa < 1:
        raise CertificateError(path, f"kappa = {kappa} must be >= 1")
    try:
        group = make_group(p, kappa - 1)
    except ValueError as exc:
        raise CertificateError(path, str(exc)) from exc
    if not isinstance(params, dict):
        raise CertificateError(path, "params must be an object")
    kids = tuple(
        certificate_from_dict(c, f"{path}.children[{i}]") for i, c in enumerate(children)
    )
    return Certificate(
        kind=kind,
        group=group,
        params=params,
        children=kids,
        source=_sphere_from_json(group, source, path),
        target=_sphere_from_json(group, target, path),
    )


# ---------------------------------------------------------------------------
# The recursive construction S(p^k (d - 2l) L) -> S(p^(k-l) d L^(p^l)).


def build_level_map(p: int, k: int, l: int, d: int) -> Certificate:
    """Certificate raising the tensor exponent to p^l at a dimension cost.

    Source S(p^k (d-2l) L), target S(p^(k-l) d L^(p^l)), over Z/p^(k+1).
    Requires k >= 1, 0 <= l <= k and d > 2l.  l = 0 is the identity;
    l = 1 iterates the wreath power over the Stolz--Meyer axiom; l >= 2
    composes an inflated level-(l-1) map with a level-1 map.
    """
    group = make_group(p, k)
    if k < 1:
        raise ValueError(f"k = {k} must be >= 1")
    if not 0 <= l <= k:
        raise ValueError(f"l = {l} must satisfy 0 <= l <= k = {k}")
    if d <= 2 * l:
        raise ValueError(f"d = {d} must exceed 2l = {2 * l}")
    if l == 0:
        return identity_map(sphere(group, [(p**k * d, 1)]))
    if l == 1:
        cert = stolz_meyer_map(p, d)
        for _ in range(k - 1):
            cert = wreath_power_map(cert)
        return cert
    inner = build_level_map(p, k, 1, d - 2 * (l - 1))
    outer = inflate_map(build_level_map(p, k - 1, l - 1, d))
    return compose_maps(outer, inner)


def worst_case_defect(p: int, k: int) -> int:
    """Closed-form worst-case dimension defect of the planner.

    The planned source dimension n_0 always satisfies
    n_0 >= sum(p^l m_l) - worst_case_defect(p, k).  Zero for k = 0.
    """
    make_group(p, k)  # validate arguments
    if k == 0:
        return 0
    return p**k * (k + 2) * (k + 1) - (p ** (k + 1) - 1) // (p - 1)


@dataclass(frozen=True)
class SphereMapPlan:
    """A planned equivariant map S(n_0 L) -> S(V) with its certificate.

    ``levels[l] = (n_l, q_l)`` records the split m_l = n_l p^(k-l) + q_l;
    ``source_dim`` is n_0 = sum_l p^k n_l and ``c_achieved`` the realized
    defect sum(p^l m_l) - n_0.
    """

    rep: RepSpec
    levels: tuple[tuple[int, int], ...]
    source_dim: int
    c_achieved: int
    certificate: Certificate


def _plan_rank_zero(rep: RepSpec) -> SphereMapPlan:
    # k = 0: V = mL up to power maps, so the join of coordinatewise powers
    # S(mL) -> S(V) realizes the defect 0.
    group = rep.group
    powers = [power_map(group, 1, t) for t in rep.exponents]
    cert = join_maps(*powers)
    m = rep.dim
    return SphereMapPlan(rep, ((m, 0),), m, 0, cert)


def plan_sphere_map(rep: RepSpec) -> SphereMapPlan:
    """Plan a map S(n_0 L) -> S(V) for a representation with m_k != 0.

    Per level l, if m_l >= p^(k-l) (2l+1), split m_l = n_l p^(k-l) + q_l
    with q_l the smallest value >= 2l p^(k-l) congruent to m_l mod
    p^(k-l) (so n_l >= 1); otherwise the level is skipped (n_l = 0).
    Active levels contribute a level map into m_l copies of L^(p^l),
    adjusted onto the actual exponents by coordinatewise power maps;
    inactive levels enter through the final inclusion into S(V).

    Raises :class:`NoMapError` when no level reaches its threshold.
    """
    profile = rep.profile
    if profile[-1] == 0:
        raise ValueError(
            "m_k = 0: restrict to the effective subgroup first (effective_reduction)"
        )
    group = rep.group
    p, k = group.p, group.k
    if k == 0:
        return _plan_rank_zero(rep)

    levels = []
    for l, m_l in enumerate(profile):
        step = p ** (k - l)
        if m_l >= step * (2 * l + 1):
            lo = 2 * l * step
            q_l = lo + (m_l - lo) % step
            n_l = (m_l - q_l) // step
        else:
            n_l, q_l = 0, m_l
        levels.append((n_l, q_l))

    active = [l for l, (n_l, _) in enumerate(levels) if n_l >= 1]
    if not active:
        raise NoMapError(
            "no map constructed: every level is below its threshold p^(k-l)(2l+1)"
        )

    by_level: dict[int, list[int]] = {}
    for t in rep.exponents:
        by_level.setdefault(p_valuation(p, t), []).append(t)

    chains = []
    for l in active:
        n_l, _ = levels[l]
        cert = build_level_map(p, k, l, n_l + 2 * l)
        m_l = profile[l]
        covered = p ** (k - l) * (n_l + 2 * l)
        if covered < m_l:
            cert = compose_maps(
                inclusion_into(cert.target, [(m_l - covered, p**l)]), cert
            )
        units = [t // p**l for t in sorted(by_level[l])]
        if any(u != 1 for u in units):
            powers = [power_map(group, p**l, u) for u in units]
            cert = compose_maps(join_maps(*powers), cert)
        chains.append(cert)

    cert = join_maps(*chains)
    missing = [t for l, ts in sorted(by_level.items()) if l not in active for t in ts]
    if missing:
        cert = compose_maps(
            inclusion_into(cert.target, [(1, t) for t in missing]), cert
        )

    target = sphere_of_rep(rep)
    if cert.target != target:
        raise AssertionError(f"planner produced target {cert.target}, wanted {target}")
    n_0 = p**k * sum(n_l for n_l, _ in levels)
    if cert.source != sphere(group, [(n_0, 1)]):
        raise AssertionError(f"planner produced source {cert.source}, wanted S({n_0}L)")
    weight = sum(p**l * m_l for l, m_l in enumerate(profile))
    return SphereMapPlan(rep, tuple(levels), n_0, weight - n_0, cert)


def padded_zero_set(rep: RepSpec, n: int) -> tuple[int, int]:
    """Real dimension of the zero-set of the padded map on S(nL).

    Padding the planned map f_0 : S(n_0 L) -> S(V) by the join coordinate
    (f([u, t, v]) = t f_0(v)) makes its zero-set the subsphere
    S((n - n_0) L) of real dimension 2(n - n_0) - 1.  Requires n > n_0.
    Returns (zero_set_dim, n_0).
    """
    plan = plan_sphere_map(rep)
    n_0 = plan.source_dim
    if n <= n_0:
        raise ValueError(f"n = {n} must exceed the planned source dimension n_0 = {n_0}")
    return 2 * (n - n_0) - 1, n_0
