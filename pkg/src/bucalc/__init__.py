"""Exact Borsuk-Ulam / Bourgin-Yang computations for cyclic p-groups.

Sub-modules:

* :mod:`bucalc.group_rep` -- the group Z/p^(k+1), representations as
  exponent multisets, valuation profiles, and the invariant delta.
* :mod:`bucalc.cyclic_ring` -- exact arithmetic in Z[z]/(z^N - 1) and
  membership/structure in the quotient by the ideal ((1-z)^n), via Smith
  normal form over Z.
* :mod:`bucalc.euler` -- Euler classes of sums of lines, the
  nonvanishing oracle, sharpness scans, and the phi-identity verifiers.
* :mod:`bucalc.constructions` -- certificates for equivariant sphere
  maps, their validator, and the planner S(n_0 L) -> S(V).
* :mod:`bucalc.bounds` -- zero-set dimension bounds and comparisons with
  prior published bounds.
* :mod:`bucalc.cli` -- the ``bucalc`` command-line front end.
"""

from .group_rep import (
    GroupSpec,
    RepSpec,
    delta,
    effective_reduction,
    make_group,
    make_rep,
    rep_from_json,
    rep_from_profile,
    rep_to_json,
)
from .cyclic_ring import (
    INTEGRAL,
    P_LOCAL,
    CyclicPoly,
    QuotientCtx,
    binomial_one_minus_z,
    cyclic_mul,
    is_zero_in_quotient,
    make_quotient_ctx,
    quotient_ctx,
    quotient_invariants,
    smith_normal_form,
)
from .euler import (
    EulerQuery,
    euler_class,
    is_nonvanishing,
    phi_correction_poly,
    phi_poly,
    sharpness_scan,
)
from .constructions import (
    Certificate,
    CertificateError,
    NoMapError,
    SphereMapPlan,
    SphereType,
    build_level_map,
    certificate_from_dict,
    certificate_to_dict,
    padded_zero_set,
    plan_sphere_map,
    sphere,
    sphere_of_rep,
    validate_certificate,
    worst_case_defect,
)
from .bounds import (
    BoundsReport,
    bounds_report,
    coincidence_bound,
    compare_prior_bounds,
    module_zero_set_bound,
    sphere_map_necessary,
    zero_set_lower_bound,
)

__version__ = "0.1.0"
