"""Command-line interface: solve, verify, export, report.

Exit codes: 0 success, 1 runtime/IO failure, 2 invalid parameters,
3 verification failure.  Flags override values from --config (a JSON
file mirroring the flag names).  Identical configuration yields
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .errors import (
    NoRoot,
    ParameterDomainError,
    PeriodViolation,
    SphereminError,
    UnrecognizedEndType,
)
from .families import (
    FamilyInstance,
    double_vase_weierstrass_data,
    make_catenoid_fixture,
    make_family,
    vase_weierstrass_data,
)
from .mesh import (
    DomainSpec,
    estimate_mean_curvature,
    sample_mesh,
    write_metadata,
    write_obj,
    write_ply,
)
from .periods import (
    DoubleVaseParams,
    VaseParams,
    period_report,
    solve_double_vase_a,
    solve_vase_rho,
)
from .weierstrass import verification_report

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_PARAMS = 2
EXIT_VERIFICATION = 3

DEFAULT_TOL = {"vase": 1e-9, "double_vase": 1e-8, "catenoid": 1e-9}


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="spheremin",
        description="Construct, verify and mesh minimal surfaces on "
        "punctured spheres from Weierstrass data.",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--family", choices=["vase", "double_vase", "catenoid"])
        p.add_argument("--k", type=int)
        p.add_argument("--a", type=float)
        p.add_argument("--b", type=float)
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--tol", type=float, help="period-closure tolerance")

    p_solve = sub.add_parser("solve", help="solve the family's period equation")
    common(p_solve)
    p_solve.add_argument("--out", "-o", help="write the JSON report here")

    p_verify = sub.add_parser("verify", help="run the full verification suite")
    common(p_verify)
    p_verify.add_argument("--rho", type=float, help="override rho (vase only)")
    p_verify.add_argument("--out", "-o", help="write the JSON report here")

    p_export = sub.add_parser("export", help="sample and export a mesh")
    common(p_export)
    p_export.add_argument("--out", "-o", required=True, help="mesh output path")
    p_export.add_argument("--format", choices=["obj", "ply"], default="obj")
    p_export.add_argument("--rmin", type=float)
    p_export.add_argument("--rmax", type=float)
    p_export.add_argument("--nr", type=int)
    p_export.add_argument("--ntheta", type=int)
    p_export.add_argument("--exclusion-radius", type=float, dest="exclusion_radius")
    p_export.add_argument(
        "--force", action="store_true", help="export even if verification fails"
    )

    p_report = sub.add_parser("report", help="parameter-grid CSV sweep")
    common(p_report)
    p_report.add_argument("--k-min", type=int, default=2)
    p_report.add_argument("--k-max", type=int, default=6)
    p_report.add_argument(
        "--values",
        help="comma-separated a (vase) or b (double_vase) values",
        default="0.1,0.3,0.5,0.7,0.9",
    )
    p_report.add_argument("--out", "-o", required=True, help="CSV output path")
    return top


def _apply_config(args: argparse.Namespace):
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        cfg = json.load(fh)
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) in (None, False):
            setattr(args, attr, value)


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text + "\n")
    print(text)


def _base_payload(args) -> dict:
    return {
        "tool_version": __version__,
        "family": args.family,
        "parameters": {
            k: getattr(args, k)
            for k in ("k", "a", "b")
            if getattr(args, k, None) is not None
        },
    }


def cmd_solve(args) -> int:
    payload = _base_payload(args)
    if args.family == "vase":
        res = solve_vase_rho(args.k, args.a)
        payload["solved"] = {"parameter": "rho", "value": res.value}
    elif args.family == "double_vase":
        res = solve_double_vase_a(args.k, args.b)
        payload["solved"] = {"parameter": "a", "value": res.value}
    else:
        raise ParameterDomainError("the catenoid fixture has nothing to solve")
    payload["solved"].update(
        closed_form=res.closed_form,
        numeric_root=res.numeric_root,
        residual=res.residual,
        mismatch=res.mismatch,
    )
    _emit(payload, args.out)
    return EXIT_OK


def _build_data(args, rho_override=None):
    """Weierstrass data plus solved parameters, without the gate (so that
    verify can report failures instead of raising)."""
    if args.family == "vase":
        if args.k is None or args.a is None:
            raise ParameterDomainError("vase requires --k and --a")
        rho = rho_override or solve_vase_rho(args.k, args.a).value
        params = VaseParams(args.k, args.a, rho)
        return vase_weierstrass_data(args.k, args.a, rho), params
    if args.family == "double_vase":
        if args.k is None or args.b is None:
            raise ParameterDomainError("double_vase requires --k and --b")
        a = solve_double_vase_a(args.k, args.b).value
        params = DoubleVaseParams(args.k, args.b, a)
        return double_vase_weierstrass_data(args.k, args.b, a), params
    if args.family == "catenoid":
        return make_catenoid_fixture().data, None
    raise ParameterDomainError(f"unknown family {args.family!r}")


def cmd_verify(args) -> int:
    tol = args.tol or DEFAULT_TOL[args.family]
    data, params = _build_data(args, rho_override=getattr(args, "rho", None))
    payload = _base_payload(args)
    payload["tolerance"] = tol
    if params is not None:
        payload["resolved_parameters"] = {
            f: getattr(params, f) for f in params.__dataclass_fields__
        }
    failures = []
    try:
        payload.update(verification_report(data))
    except UnrecognizedEndType as exc:
        failures.append(str(exc))
    else:
        if payload["regularity_violations"]:
            failures.append("regularity violations present")
        if not payload["degree_audit"]["passed"]:
            failures.append("degree audit failed")
    report = period_report(data, tol)
    payload["period"] = report.to_json()
    if not report.closed:
        worst = report.worst
        failures.append(
            f"period condition fails at {worst.location!r} "
            f"(defect {worst.defect:.3e})"
        )
    payload["passed"] = not failures
    payload["failures"] = failures
    _emit(payload, args.out)
    return EXIT_OK if not failures else EXIT_VERIFICATION


_EXPORT_DOMAIN = {
    "catenoid": DomainSpec(0.5, 2.0),
    "vase": DomainSpec(0.45, 2.2),
    "double_vase": DomainSpec(0.6, 1.8),
}


def export_domain(family: str, params, rmin=None, rmax=None, nr=None,
                  ntheta=None, exclusion_radius=None) -> DomainSpec:
    base = _EXPORT_DOMAIN[family]
    base_point = 1.0 + 0j
    if family == "vase":
        base_point = complex(0.5 * (1.0 + params.a))
    return DomainSpec(
        rmin if rmin is not None else base.r_min,
        rmax if rmax is not None else base.r_max,
        nr if nr is not None else base.n_r,
        ntheta if ntheta is not None else base.n_theta,
        base_point,
        exclusion_radius
        if exclusion_radius is not None
        else base.exclusion_radius,
    )


def cmd_export(args) -> int:
    tol = args.tol or DEFAULT_TOL[args.family]
    try:
        instance = make_family(args.family, args.k, args.a, args.b)
        data, params = instance.data, instance.params
        descriptor = instance.to_descriptor()
    except (PeriodViolation, SphereminError) as exc:
        if isinstance(exc, (ParameterDomainError, NoRoot)):
            raise
        if not args.force:
            print(f"verification failed: {exc}", file=sys.stderr)
            return EXIT_VERIFICATION
        data, params = _build_data(args)
        descriptor = {"family": args.family, "forced": True}

    spec = export_domain(
        args.family, params, args.rmin, args.rmax, args.nr, args.ntheta,
        args.exclusion_radius,
    )
    mesh = sample_mesh(data, spec, metadata={"family": descriptor})
    if args.format == "ply":
        write_ply(mesh, args.out)
    else:
        write_obj(mesh, args.out)
    write_metadata(mesh, args.out + ".json")

    report = period_report(data, tol)
    H, interior = estimate_mean_curvature(mesh)
    median_h = float(np.median(H[interior])) if interior.any() else float("nan")
    print(
        f"wrote {args.out}: {mesh.n_vertices} vertices, {mesh.n_faces} faces; "
        f"max period defect {report.worst.defect:.3e}; "
        f"median |H| {median_h:.3e}"
    )
    return EXIT_OK


def cmd_report(args) -> int:
    if args.family not in ("vase", "double_vase"):
        raise ParameterDomainError("report sweeps need --family vase|double_vase")
    values = [float(v) for v in args.values.split(",")]
    rows = []
    for k in range(args.k_min, args.k_max + 1):
        for v in values:
            if args.family == "vase":
                res = solve_vase_rho(k, v)
            else:
                res = solve_double_vase_a(k, v)
            rows.append(
                {
                    "family": args.family,
                    "k": k,
                    "param": v,
                    "solved_value": res.value,
                    "closed_form": res.closed_form,
                    "numeric_root": res.numeric_root,
                    "residual": res.residual,
                    "mismatch": res.mismatch,
                }
            )
    with open(args.out, "w", newline="\n") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {args.out}: {len(rows)} rows")
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "export": cmd_export,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        _apply_config(args)
        if getattr(args, "family", None) is None:
            raise ParameterDomainError("--family is required")
        return _COMMANDS[args.command](args)
    except (ParameterDomainError, NoRoot) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except PeriodViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as exc:
        print(f"IO error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except SphereminError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
