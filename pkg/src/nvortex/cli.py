"""Command-line front end: analyze, sweep, integrate.

Input is either a JSON document ({"circulations": [...], "positions":
[[x, y], ...]} or {"family": ..., parameters}) via --file/stdin, or a
family given inline with flags. Output is JSON (analyze), RFC-4180 CSV
(sweep) or a plain-text drift table (integrate).

Exit codes: 0 ok, 2 parse error, 3 validation failure, 4 numerical
failure; error messages name the failing stage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys as _sys

import numpy as np

from . import central, dynamics, inertia, model, spectral
from .errors import (
    AmbiguousClassification,
    ClusterAmbiguity,
    CollisionApproach,
    CollisionError,
    DegenerateMomentum,
    DegenerateRestriction,
    IndefiniteSignXi,
    NegativeDiscriminant,
    NoConvergence,
    NotSymmetric,
    ParameterOutOfRange,
    RankDeficientBasis,
    SingularJacobian,
    StepFailure,
    TrivialMatchFailure,
    VortexError,
    ZeroAngularImpulse,
    ZeroTotalCirculation,
)
from .kernels import BACKEND

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4

_VALIDATION_ERRORS = (
    CollisionError,
    ZeroTotalCirculation,
    ZeroAngularImpulse,
    ParameterOutOfRange,
    NegativeDiscriminant,
)
_NUMERICAL_ERRORS = (
    NoConvergence,
    SingularJacobian,
    DegenerateMomentum,
    TrivialMatchFailure,
    AmbiguousClassification,
    NotSymmetric,
    RankDeficientBasis,
    ClusterAmbiguity,
    DegenerateRestriction,
    IndefiniteSignXi,
    CollisionApproach,
    StepFailure,
)

# CSV column sets (documented, stable)
RHOMBUS_SWEEP_COLUMNS = [
    "m",
    "y",
    "omega",
    "mu1",
    "mu2",
    "classification",
    "n_minus_ahat",
    "n_minus_m",
    "m_xi_xi",
    "theorem_b",
    "error",
]
TRIANGLE_SWEEP_COLUMNS = [
    "gamma1",
    "gamma2",
    "gamma3",
    "L",
    "omega",
    "classification",
    "n_minus_ahat",
    "n_minus_m",
    "m_xi_xi",
    "table_index",
    "table_match",
    "theorem_b",
    "error",
]


class CliError(Exception):
    def __init__(self, code: int, stage: str, message: str):
        self.code = code
        self.stage = stage
        super().__init__(message)


def _fmt(x: float) -> str:
    """Full double precision decimal text."""
    return format(float(x), ".17g")


def _complex_list(values) -> list[list[float]]:
    vals = np.sort_complex(np.asarray(values, dtype=complex))
    return [[float(v.real), float(v.imag)] for v in vals]


def _parse_gammas(text: str) -> list[float]:
    try:
        out = [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise CliError(EXIT_PARSE, "parse", f"bad --gammas: {exc}") from None
    return out


def _load_input(args) -> dict:
    """Input document from --file/stdin or inline family flags."""
    if getattr(args, "file", None):
        try:
            if args.file == "-":
                text = _sys.stdin.read()
            else:
                with open(args.file, "r", encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise CliError(EXIT_PARSE, "parse", f"cannot read input: {exc}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_PARSE, "parse", f"invalid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise CliError(EXIT_PARSE, "parse", "top-level JSON must be an object")
        # an analyze output can be fed back in: descend into its input echo
        if "input" in doc and isinstance(doc["input"], dict):
            doc = doc["input"]
        return doc
    if getattr(args, "family", None):
        doc: dict = {"family": args.family}
        if args.family == "triangle":
            if not args.gammas:
                raise CliError(
                    EXIT_PARSE, "parse", "--family triangle needs --gammas g1,g2,g3"
                )
            doc["gammas"] = _parse_gammas(args.gammas)
        elif args.family == "rhombus":
            if args.m is None or args.branch is None:
                raise CliError(
                    EXIT_PARSE, "parse", "--family rhombus needs --m and --branch"
                )
            doc["m"] = args.m
            doc["branch"] = args.branch
        return doc
    raise CliError(EXIT_PARSE, "parse", "no input: give --file or --family")


def _build_cc(doc: dict, args):
    """(system, central configuration) from an input document."""
    try:
        if "family" in doc:
            family = doc["family"]
            if family == "triangle":
                gammas = [float(g) for g in doc["gammas"]]
                if len(gammas) != 3:
                    raise CliError(
                        EXIT_PARSE, "parse", "triangle needs exactly 3 gammas"
                    )
                cc = central.make_equilateral_triangle(*gammas)
            elif family == "rhombus":
                branch = central.RhombusBranch(str(doc["branch"]))
                cc = central.make_rhombus(float(doc["m"]), branch)
            else:
                raise CliError(EXIT_PARSE, "parse", f"unknown family {family!r}")
            return cc.system, cc
        circulations = [float(g) for g in doc["circulations"]]
        positions = np.asarray(doc["positions"], dtype=float).reshape(-1)
        sys = model.VortexSystem(circulations)
        z = model.as_configuration(positions, sys.n)
        model.check_collisions(z)
        if getattr(args, "solve", False):
            return sys, central.find_cc(sys, z, tol=args.tol_cc)
        ok, omega, res = central.validate_cc(sys, z, tol=args.tol_cc)
        if not ok:
            raise CliError(
                EXIT_VALIDATION,
                "validate",
                f"configuration is not a central configuration "
                f"(relative residual {res:.3e}); rerun with --solve to refine",
            )
        res_norm = float(np.linalg.norm(central.cc_residual(sys, z, omega)))
        return sys, central.CentralConfiguration(sys, z, omega, res_norm)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CliError):
            raise
        raise CliError(EXIT_PARSE, "parse", f"bad input document: {exc}") from None


def _input_echo(doc: dict) -> dict:
    if "family" in doc:
        out = {"family": doc["family"]}
        if doc["family"] == "triangle":
            out["gammas"] = [float(g) for g in doc["gammas"]]
        else:
            out["m"] = float(doc["m"])
            out["branch"] = str(doc["branch"])
        return out
    return {
        "circulations": [float(g) for g in doc["circulations"]],
        "positions": np.asarray(doc["positions"], dtype=float)
        .reshape(-1, 2)
        .tolist(),
    }


def _tolerances(args) -> dict:
    return {
        "tol_cc": args.tol_cc,
        "tol_spec": args.tol_spec,
        "tol_zero": args.tol_zero,
        "kappa_max": args.kappa_max,
    }


def _classify(sys, cc, args):
    return spectral.classify(
        sys,
        cc,
        kappa_max=args.kappa_max,
        tol_zero=args.tol_zero,
        tol_spec=args.tol_spec,
    )


def _analysis_document(doc, sys, cc, args) -> dict:
    from . import __version__

    report = spectral.nontrivial_spectrum(sys, cc)
    classification = _classify(sys, cc, args)
    irep = inertia.check_theorem_b(sys, cc)
    out = {
        "input": _input_echo(doc),
        "tool": {"name": "nvortex", "version": __version__, "backend": BACKEND},
        "tolerances": _tolerances(args),
        "configuration": {
            "circulations": [float(g) for g in sys.circulations],
            "positions": cc.xi.reshape(-1, 2).tolist(),
            "omega": float(cc.omega),
            "residual": float(cc.residual_norm),
            "total_circulation": sys.total,
            "angular_momentum": sys.angular_momentum,
            "angular_impulse": model.angular_impulse(sys, cc.xi),
            "m_xi_xi": model.circulation_inner(sys, cc.xi, cc.xi),
        },
        "spectral": {
            "classification": classification.value,
            "eigenvalues_B": _complex_list(report.eigenvalues_B),
            "trivial": _complex_list(report.trivial_part),
            "nontrivial": _complex_list(report.nontrivial_part),
            "mus": _complex_list(report.mus),
            "nontrivial_mus": _complex_list(report.nontrivial_mus),
            "pairing_error": float(report.pairing_error),
            "eigenvector_condition": float(report.eigenvector_condition),
        },
        "inertia": {
            "ahat": list(irep.inertia_ahat),
            "m": list(irep.inertia_m),
            "ahat_w": list(irep.inertia_ahat_w),
            "ahat_wperp": list(irep.inertia_ahat_wperp),
            "m_wperp": list(irep.inertia_m_wperp),
            "m_xi_xi": float(irep.m_xi_xi),
            "omega_sign": irep.omega_sign,
            "predicted_n_minus": irep.predicted_n_minus,
            "restriction_formula_holds": irep.restriction_formula_holds,
            "verdict": irep.verdict.value,
        },
    }
    if getattr(args, "verify_dynamics", False):
        period = dynamics.period_of(cc)
        traj = dynamics.integrate(sys, cc.xi, period)
        mono = dynamics.monodromy(sys, cc)
        out["dynamics"] = {
            "period": period,
            "return_error": float(
                np.linalg.norm(traj.states[-1] - dynamics.exact_re_orbit(cc, period))
            ),
            "energy_drift": traj.energy_drift,
            "impulse_drift": traj.impulse_drift,
            "center_drift": traj.center_drift,
            "monodromy_determinant": mono.determinant,
            "floquet_mismatch": dynamics.floquet_vs_spectrum(sys, cc, mono),
            "max_multiplier": float(np.max(np.abs(mono.multipliers))),
        }
    return out


def _emit(text: str, args) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)


def cmd_analyze(args) -> int:
    doc = _load_input(args)
    sys, cc = _build_cc(doc, args)
    try:
        out = _analysis_document(doc, sys, cc, args)
    except _NUMERICAL_ERRORS as exc:
        raise CliError(EXIT_NUMERICAL, "analyze", str(exc)) from None
    _emit(json.dumps(out, indent=2) + "\n", args)
    return EXIT_OK


def _bisect_change(label, lo: float, hi: float, tol: float = 1e-8) -> float:
    """Smallest-interval localization of a change in a discrete label."""
    ref = label(lo)
    if label(hi) == ref:
        raise ValueError("no label change on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if label(mid) == ref:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _safe_class_label(m: float, branch, args) -> str:
    try:
        cc = central.make_rhombus(m, branch)
        return _classify(cc.system, cc, args).value
    except (VortexError, ValueError) as exc:
        return type(exc).__name__


def _eig_type_label(m: float, branch, args) -> str:
    """Number of nontrivial eigenvalues off the imaginary axis."""
    try:
        cc = central.make_rhombus(m, branch)
        lam = spectral.nontrivial_spectrum(cc.system, cc).nontrivial_part
        scale = max(1.0, float(np.max(np.abs(lam))))
        return str(int(np.sum(np.abs(lam.real) > 1e-8 * scale)))
    except (VortexError, ValueError) as exc:
        return type(exc).__name__


def _rhombus_sweep_rows(args):
    branch = central.RhombusBranch(args.branch)
    count = int(round((args.m_to - args.m_from) / args.m_step))
    ms = args.m_from + args.m_step * np.arange(count + 1)
    # snap round-off at the endpoint so it stays inside the branch domain
    snap = 1e-9 * max(1.0, abs(args.m_to))
    ms[np.abs(ms - args.m_to) < snap] = args.m_to
    ms = ms[ms <= args.m_to]
    rows = []
    for m in ms:
        m = float(m)
        try:
            cc = central.make_rhombus(m, branch)
            y = float(cc.xi[5])
            mu1, mu2 = central.rhombus_nontrivial_mus(m, branch)
            classification = _classify(cc.system, cc, args)
            irep = inertia.check_theorem_b(cc.system, cc)
            rows.append(
                [
                    _fmt(m),
                    _fmt(y),
                    _fmt(cc.omega),
                    _fmt(mu1),
                    _fmt(mu2),
                    classification.value,
                    str(irep.inertia_ahat.n_minus),
                    str(irep.inertia_m.n_minus),
                    _fmt(irep.m_xi_xi),
                    irep.verdict.value,
                    "",
                ]
            )
        except (VortexError, ValueError) as exc:
            rows.append(
                [_fmt(m)]
                + [""] * 9
                + [f"{type(exc).__name__}: {exc}"]
            )
    return rows, ms, branch


def _triangle_sweep_rows(args):
    from . import reference

    samples = [
        (1.0, 1.0, 1.0),
        (1.0, 1.0, -0.4),
        (1.0, -0.4, -0.4),
        (-1.0, -1.0, -1.0),
    ]
    rows = []
    for gammas in samples:
        try:
            cc = central.make_equilateral_triangle(*gammas)
            classification = _classify(cc.system, cc, args)
            irep = inertia.check_theorem_b(cc.system, cc)
            table = reference.triangle_table_index(*gammas)
            rows.append(
                [
                    _fmt(gammas[0]),
                    _fmt(gammas[1]),
                    _fmt(gammas[2]),
                    _fmt(cc.system.angular_momentum),
                    _fmt(cc.omega),
                    classification.value,
                    str(irep.inertia_ahat.n_minus),
                    str(irep.inertia_m.n_minus),
                    _fmt(irep.m_xi_xi),
                    str(table),
                    "match" if table == irep.inertia_ahat.n_minus else "mismatch",
                    irep.verdict.value,
                    "",
                ]
            )
        except (VortexError, ValueError) as exc:
            rows.append(
                [_fmt(g) for g in gammas]
                + [""] * 9
                + [f"{type(exc).__name__}: {exc}"]
            )
    return rows


def cmd_sweep(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    if args.family == "triangle":
        writer.writerow(TRIANGLE_SWEEP_COLUMNS)
        for row in _triangle_sweep_rows(args):
            writer.writerow(row)
        _emit(buf.getvalue(), args)
        return EXIT_OK
    if args.family != "rhombus":
        raise CliError(EXIT_PARSE, "parse", f"unknown sweep family {args.family!r}")
    if args.branch is None:
        raise CliError(EXIT_PARSE, "parse", "rhombus sweep needs --branch")
    if args.m_from is None or args.m_to is None:
        raise CliError(EXIT_PARSE, "parse", "rhombus sweep needs --m-from/--m-to")
    writer.writerow(RHOMBUS_SWEEP_COLUMNS)
    rows, ms, branch = _rhombus_sweep_rows(args)
    for row in rows:
        writer.writerow(row)
    _emit(buf.getvalue(), args)
    if args.locate_boundaries:
        # localize changes between consecutive sampled classifications
        class_names = {c.value for c in spectral.StabilityClass}
        labels = [r[5] if not r[10] else r[10].split(":")[0] for r in rows]
        for k in range(len(rows) - 1):
            if labels[k] not in class_names or labels[k + 1] not in class_names:
                continue
            if labels[k] != labels[k + 1]:
                m_star = _bisect_change(
                    lambda m: _safe_class_label(m, branch, args),
                    float(ms[k]),
                    float(ms[k + 1]),
                )
                print(
                    f"boundary: classification {labels[k]} -> {labels[k + 1]} "
                    f"at m = {_fmt(m_star)}",
                    file=_sys.stderr,
                )
        types = [_eig_type_label(float(m), branch, args) for m in ms]
        for k in range(len(types) - 1):
            if not (types[k].isdigit() and types[k + 1].isdigit()):
                continue
            if types[k] != types[k + 1]:
                m_star = _bisect_change(
                    lambda m: _eig_type_label(m, branch, args),
                    float(ms[k]),
                    float(ms[k + 1]),
                )
                print(
                    f"boundary: eigenvalue type {types[k]} -> {types[k + 1]} "
                    f"at m = {_fmt(m_star)}",
                    file=_sys.stderr,
                )
    return EXIT_OK


def cmd_integrate(args) -> int:
    doc = _load_input(args)
    sys, cc = _build_cc(doc, args)
    period = dynamics.period_of(cc)
    t_end = args.periods * period
    try:
        traj = dynamics.integrate(sys, cc.xi, t_end)
        mono = dynamics.monodromy(sys, cc)
        mismatch = dynamics.floquet_vs_spectrum(sys, cc, mono)
    except _NUMERICAL_ERRORS as exc:
        raise CliError(EXIT_NUMERICAL, "integrate", str(exc)) from None
    return_error = float(
        np.linalg.norm(traj.states[-1] - dynamics.exact_re_orbit(cc, t_end))
    )
    lines = [
        f"period                 {_fmt(period)}",
        f"periods integrated     {_fmt(args.periods)}",
        f"return error           {return_error:.6e}",
        f"energy drift           {traj.energy_drift:.6e}",
        f"impulse drift          {traj.impulse_drift:.6e}",
        f"center drift           {traj.center_drift:.6e}",
        f"monodromy determinant  {_fmt(mono.determinant)}",
        f"floquet mismatch       {mismatch:.6e}",
        f"max |multiplier|       {_fmt(float(np.max(np.abs(mono.multipliers))))}",
    ]
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--file", help="JSON input document ('-' for stdin)")
    parser.add_argument("--family", choices=["triangle", "rhombus"])
    parser.add_argument("--gammas", help="comma-separated strengths (triangle)")
    parser.add_argument("--m", type=float, help="rhombus strength ratio")
    parser.add_argument("--branch", choices=["A", "B"], help="rhombus branch")
    parser.add_argument("--out", help="write the report to this path")
    parser.add_argument("--tol-cc", type=float, default=1e-8)
    parser.add_argument("--tol-spec", type=float, default=1e-8)
    parser.add_argument("--tol-zero", type=float, default=1e-8)
    parser.add_argument("--kappa-max", type=float, default=1e8)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nvortex",
        description="Rigidly rotating point-vortex configurations: "
        "generation, stability classification, Morse indices, dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="full report for one configuration")
    _add_common(p_an)
    p_an.add_argument(
        "--solve", action="store_true", help="refine the input with the solver first"
    )
    p_an.add_argument(
        "--verify-dynamics",
        action="store_true",
        help="add a one-period integration cross-check",
    )
    p_an.set_defaults(func=cmd_analyze)

    p_sw = sub.add_parser("sweep", help="CSV table over a parameter range")
    _add_common(p_sw)
    p_sw.add_argument("--m-from", type=float)
    p_sw.add_argument("--m-to", type=float)
    p_sw.add_argument("--m-step", type=float, default=0.01)
    p_sw.add_argument(
        "--locate-boundaries",
        action="store_true",
        help="bisect classification/eigenvalue-type changes to 1e-8",
    )
    p_sw.set_defaults(func=cmd_sweep)

    p_in = sub.add_parser("integrate", help="drift and Floquet cross-check")
    _add_common(p_in)
    p_in.add_argument("--periods", type=float, default=1.0)
    p_in.set_defaults(func=cmd_integrate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error ({exc.stage}): {exc}", file=_sys.stderr)
        return exc.code
    except _VALIDATION_ERRORS as exc:
        print(f"error (validate): {type(exc).__name__}: {exc}", file=_sys.stderr)
        return EXIT_VALIDATION
    except _NUMERICAL_ERRORS as exc:
        print(f"error (numerics): {type(exc).__name__}: {exc}", file=_sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error (validate): {exc}", file=_sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
