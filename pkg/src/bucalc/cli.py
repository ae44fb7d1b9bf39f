"""Command-line front end.

Commands: delta, bound, oracle, scan, identity-a, construct, verify,
compare, structure.  Output is JSON by default (``--format table`` for
aligned text) and is byte-identical across identical invocations.
Exit codes: 0 success, 1 property/validation failure (e.g. a rejected
certificate or an unconstructible map), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds as bounds_mod
from . import constructions as cons
from . import euler
from .cyclic_ring import quotient_ctx, quotient_invariants
from .group_rep import (
    GroupSpec,
    RepSpec,
    delta,
    effective_reduction,
    make_group,
    make_rep,
    rep_from_json,
    rep_from_profile,
)

__all__ = ["run_cli", "main"]

_LOCAL_FLAGS = {"integral": euler.INTEGRAL, "p": euler.P_LOCAL, "p_local": euler.P_LOCAL}


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from exc


def _add_rep_flags(sub):
    sub.add_argument("--p", type=int, help="the prime p")
    sub.add_argument("--k", type=int, help="group level k (the group is Z/p^(k+1))")
    sub.add_argument("--exps", type=str, help="comma-separated tensor exponents")
    sub.add_argument(
        "--profile",
        type=str,
        help="comma-separated valuation profile m_0,...,m_k "
        "(expanded to exponents p^l per slot)",
    )
    sub.add_argument(
        "--rep", type=str, metavar="FILE",
        help='JSON file {"p":…, "k":…, "exponents":[…]} instead of the flags above',
    )


def _parse_rep(args) -> RepSpec:
    if args.rep is not None:
        if args.p is not None or args.k is not None or args.exps or args.profile:
            raise ValueError("--rep excludes --p/--k/--exps/--profile")
        with open(args.rep, encoding="utf-8") as fh:
            return rep_from_json(json.load(fh))
    if args.p is None or args.k is None:
        raise ValueError("--p and --k are required (or use --rep FILE)")
    group = make_group(args.p, args.k)
    if (args.exps is None) == (args.profile is None):
        raise ValueError("exactly one of --exps or --profile is required")
    if args.exps is not None:
        return make_rep(group, _int_list(args.exps))
    return rep_from_profile(group, _int_list(args.profile))


def _parse_group(args) -> GroupSpec:
    if args.p is None or args.k is None:
        raise ValueError("--p and --k are required")
    return make_group(args.p, args.k)


def _reduce(rep: RepSpec) -> tuple[RepSpec, int | None]:
    """Apply the effective-level reduction when m_k = 0, surfacing k'."""
    if rep.profile[-1] != 0:
        return rep, None
    k_eff, reduced, _ = effective_reduction(rep)
    return reduced, k_eff


# ---------------------------------------------------------------------------
# Rendering


def _render_table(payload, out):
    def write_row(key, value):
        out.write(f"{key:<16} {value}\n")

    for key in sorted(payload):
        value = payload[key]
        if key == "table" and isinstance(value, list):
            out.write("j      verdict\n")
            for j, v in value:
                out.write(f"{j:<6} {'nonzero' if v else 'zero'}\n")
        elif isinstance(value, dict):
            for sub in sorted(value):
                write_row(f"{key}.{sub}", json.dumps(value[sub], sort_keys=True))
        else:
            write_row(key, json.dumps(value, sort_keys=True))


def _emit(payload, args, out):
    if getattr(args, "format", "json") == "table":
        _render_table(payload, out)
    else:
        out.write(json.dumps(payload, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Command handlers (return the payload; raise ValueError for bad input).


def _cmd_delta(args, out):
    rep, k_eff = _reduce(_parse_rep(args))
    payload = {"delta": delta(rep), "profile": list(rep.profile)}
    if k_eff is not None:
        payload["reduced_k"] = k_eff
    _emit(payload, args, out)
    return 0


def _cmd_oracle(args, out):
    rep, k_eff = _reduce(_parse_rep(args))
    query = euler.EulerQuery(rep, args.n, args.j, _LOCAL_FLAGS[args.local])
    payload = {"nonzero": euler.is_nonvanishing(query)}
    if k_eff is not None:
        payload["reduced_k"] = k_eff
    _emit(payload, args, out)
    return 0


def _cmd_scan(args, out):
    rep, k_eff = _reduce(_parse_rep(args))
    threads = max(1, int(os.environ.get("BU_THREADS", "1")))
    payload = {"delta": delta(rep), "n": args.n}
    if k_eff is not None:
        payload["reduced_k"] = k_eff
    # Both localities are always reported; they can genuinely differ
    # (prime-to-p torsion), and printing both keeps that visible.
    for name, locality in (("integral", euler.INTEGRAL), ("p_local", euler.P_LOCAL)):
        j_max, table = euler.sharpness_scan(rep, args.n, locality, threads=threads)
        payload[name] = {"j_max": j_max, "table": [[j, v] for j, v in sorted(table.items())]}
    if getattr(args, "format", "json") == "table":
        out.write(f"delta: {payload['delta']}   n: {args.n}\n")
        out.write(f"j_max integral: {payload['integral']['j_max']}   "
                  f"p_local: {payload['p_local']['j_max']}\n")
        out.write("j      integral   p_local\n")
        for (j, vi), (_, vp) in zip(payload["integral"]["table"], payload["p_local"]["table"]):
            out.write(f"{j:<6} {'nonzero' if vi else 'zero':<10} {'nonzero' if vp else 'zero'}\n")
    else:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    return 0


def _cmd_identity_a(args, out):
    group = _parse_group(args)
    coeffs = euler.phi_correction_poly(group, args.l)
    _emit({"a_l": coeffs}, args, out)
    return 0


def _cmd_structure(args, out):
    group = _parse_group(args)
    if args.n < 1:
        raise ValueError(f"--n {args.n} must be >= 1")
    free_rank, torsion = quotient_invariants(quotient_ctx(group, args.n))
    _emit({"free_rank": free_rank, "torsion": torsion}, args, out)
    return 0


def _cmd_compare(args, out):
    rep = _parse_rep(args)
    _emit(bounds_mod.compare_prior_bounds(rep, args.n), args, out)
    return 0


def _cmd_bound(args, out):
    rep, k_eff = _reduce(_parse_rep(args))
    payload = bounds_mod.report_to_json(bounds_mod.bounds_report(rep, args.n))
    if k_eff is not None:
        payload["reduced_k"] = k_eff
    _emit(payload, args, out)
    return 0


def _cmd_construct(args, out, err):
    rep, k_eff = _reduce(_parse_rep(args))
    try:
        plan = cons.plan_sphere_map(rep)
    except cons.NoMapError as exc:
        err.write(f"error: {exc}\n")
        return 1
    payload = {
        "n_0": plan.source_dim,
        "c_achieved": plan.c_achieved,
        "worst_case_c": cons.worst_case_defect(rep.group.p, rep.group.k),
        "delta": delta(rep),
        "levels": [[n_l, q_l] for n_l, q_l in plan.levels],
    }
    if k_eff is not None:
        payload["reduced_k"] = k_eff
    cert_dict = cons.certificate_to_dict(plan.certificate)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(cert_dict, sort_keys=True, indent=2) + "\n")
        payload["certificate_path"] = args.output
    else:
        payload["certificate"] = cert_dict
    _emit(payload, args, out)
    return 0


def _cmd_verify(args, out, err):
    with open(args.certificate, encoding="utf-8") as fh:
        obj = json.load(fh)
    try:
        cert = cons.certificate_from_dict(obj)
        source, target = cons.validate_certificate(cert)
    except cons.CertificateError as exc:
        err.write(f"certificate rejected: {exc}\n")
        return 1
    payload = {
        "valid": True,
        "source": [[a, u] for a, u in source.summands],
        "target": [[a, u] for a, u in target.summands],
    }
    _emit(payload, args, out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bucalc",
        description="Exact dimension bounds, Euler-class nonvanishing, and "
        "sphere-map certificates for cyclic p-groups",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def sub(name, help_text, rep=False, group=False, n=False):
        s = subs.add_parser(name, help=help_text)
        if rep:
            _add_rep_flags(s)
        elif group:
            s.add_argument("--p", type=int, required=True)
            s.add_argument("--k", type=int, required=True)
        if n:
            s.add_argument("--n", type=int, required=True, help="truncation exponent")
        s.add_argument("--format", choices=("json", "table"), default="json")
        return s

    sub("delta", "valuation profile and the bound invariant delta", rep=True)

    s = sub("oracle", "nonvanishing of the Euler class times (1-z)^j", rep=True, n=True)
    s.add_argument("--j", type=int, default=0)
    s.add_argument("--local", choices=sorted(_LOCAL_FLAGS), default="p")

    sub("scan", "threshold table over j in both localities", rep=True, n=True)

    s = sub("identity-a", "correction polynomial a_l of the phi identity", group=True)
    s.add_argument("--l", type=int, required=True)

    sub("structure", "free rank and torsion of the truncated quotient", group=True, n=True)

    sub("compare", "compare our bound with prior published bounds", rep=True, n=True)

    sub("bound", "full report: bound, necessity, construction, comparisons",
        rep=True, n=True)

    s = sub("construct", "plan a sphere map and emit its certificate", rep=True)
    s.add_argument("-o", "--output", type=str, help="write the certificate JSON here")

    s = subs.add_parser("verify", help="validate a certificate file")
    s.add_argument("certificate", type=str)
    s.add_argument("--format", choices=("json", "table"), default="json")

    return parser


_HANDLERS = {
    "delta": _cmd_delta,
    "oracle": _cmd_oracle,
    "scan": _cmd_scan,
    "identity-a": _cmd_identity_a,
    "structure": _cmd_structure,
    "compare": _cmd_compare,
    "bound": _cmd_bound,
}


def run_cli(argv, out=None, err=None) -> int:
    """Dispatch one invocation; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own diagnostics
        return int(exc.code or 0)
    try:
        if args.command == "construct":
            return _cmd_construct(args, out, err)
        if args.command == "verify":
            return _cmd_verify(args, out, err)
        return _HANDLERS[args.command](args, out)
    except cons.CertificateError as exc:
        err.write(f"certificate rejected: {exc}\n")
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
