"""Command-line front end.

Exit codes: 0 success, 1 a bound/oracle check failed, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from hallpost import DomainError, __version__
from hallpost import bounds, models, oracle
from hallpost.bounds import Model, Orientation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_N_RANGE = {
    Model.CALOGERO_1D: (3, 10),
    Model.HYPER_COULOMB: (4, 10),
    Model.CALOGERO_D: (4, 10),
}
DEFAULT_D_RANGE = (2, 6)


class UsageError(Exception):
    pass


def fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".15g")
    if value is None:
        return ""
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        if not math.isfinite(value):
            return None if math.isnan(value) else fmt(value)
        return float(format(value, ".15g"))
    return value


@dataclass
class RunRecord:
    command: str
    parameters: dict
    columns: list[str]
    outputs: list[dict] = field(default_factory=list)
    tool_version: str = __version__
    timestamp: str = ""
    notes: list[str] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# command: {self.command}\n")
        buf.write(f"# version: hallpost {self.tool_version}\n")
        if self.timestamp:
            buf.write(f"# timestamp: {self.timestamp}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.outputs:
            writer.writerow([fmt(row.get(c)) for c in self.columns])
        for note in self.notes:
            buf.write(f"# {note}\n")
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "parameters": {k: _json_value(v) for k, v in self.parameters.items()},
            "outputs": [{c: _json_value(row.get(c)) for c in self.columns} for row in self.outputs],
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "notes": self.notes,
        }
        return json.dumps(doc, indent=2) + "\n"


# -- helpers -----------------------------------------------------------------


def g_values(args) -> list[float]:
    if args.g is not None:
        return [args.g]
    if args.g_min is None or args.g_max is None:
        raise UsageError("give --g, or --g-min and --g-max")
    if not args.g_min < args.g_max:
        raise UsageError("--g-min must be below --g-max")
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    if args.log:
        if args.g_min <= 0.0:
            raise UsageError("--log needs --g-min > 0")
        grid = np.geomspace(args.g_min, args.g_max, args.points)
    else:
        grid = np.linspace(args.g_min, args.g_max, args.points)
    return [float(v) for v in grid]


def _need_dim(model: Model, dim):
    if model is Model.CALOGERO_D and dim is None:
        raise UsageError("calogerod needs --dim")


def row_is_consistent(report: bounds.BoundReport) -> bool:
    """Re-derive the satisfaction flag and margin sign of a report."""
    if report.orientation is Orientation.AT_LEAST_ONE:
        ok = report.ratio >= 1.0
    else:
        ok = report.ratio <= 1.0
    return ok == report.satisfied and (report.margin >= 0.0) == ok


def ratio_rows(model: Model, N: int, gs: Sequence[float], *, omega, alpha, dim) -> tuple[list[dict], bool]:
    _, limit = bounds.ratio_limits(model, N, dim)
    rows = []
    all_ok = True
    for g in gs:
        try:
            rep = bounds.hp_report(model, N, g, omega=omega, alpha=alpha, D=dim)
        except DomainError as exc:
            raise DomainError(f"at g = {g!r}: {exc}") from exc
        all_ok &= rep.satisfied and row_is_consistent(rep)
        rows.append(
            {
                "g": g,
                "beta": rep.beta,
                "betaprime": rep.betaprime,
                "energy": rep.energy,
                "bound": rep.bound,
                "ratio": rep.ratio,
                "limit_at_infinity": limit,
            }
        )
    return rows, all_ok


RATIO_COLUMNS = ["g", "beta", "betaprime", "energy", "bound", "ratio", "limit_at_infinity"]


# -- subcommands -------------------------------------------------------------


def cmd_energy(args) -> tuple[RunRecord, int]:
    model = Model(args.model)
    if model is Model.CALOGERO_1D:
        p = models.Calogero1DParams(args.n, args.omega, args.g)
        row = {"model": model.value, "N": args.n, "g": args.g, "beta": p.beta,
               "energy": models.energy_calogero_1d(p)}
        cols = ["model", "N", "g", "beta", "energy"]
    elif model is Model.HYPER_COULOMB:
        p = models.HyperCoulombParams(args.n, args.g, args.alpha)
        row = {"model": model.value, "N": args.n, "g": args.g, "beta": p.beta,
               "energy": models.energy_hyper_coulomb(p)}
        cols = ["model", "N", "g", "beta", "energy"]
    else:
        _need_dim(model, args.dim)
        p = models.CalogeroDParams(args.n, args.dim, args.omega, args.g)
        row = {"model": model.value, "N": args.n, "D": args.dim, "g": args.g,
               "beta": p.beta, "G": p.G, "energy": models.energy_calogero_d(p)}
        cols = ["model", "N", "D", "g", "beta", "G", "energy"]
    params = {"model": model.value, "n": args.n, "dim": args.dim, "omega": args.omega,
              "alpha": args.alpha, "g": args.g}
    return RunRecord("energy", params, cols, [row]), EXIT_OK


def cmd_ratio(args) -> tuple[RunRecord, int]:
    model = Model(args.model)
    _need_dim(model, args.dim)
    gs = g_values(args)
    rows, ok = ratio_rows(model, args.n, gs, omega=args.omega, alpha=args.alpha, dim=args.dim)
    params = {"model": model.value, "n": args.n, "dim": args.dim, "omega": args.omega,
              "alpha": args.alpha, "g": args.g, "g_min": args.g_min, "g_max": args.g_max,
              "points": args.points, "log": args.log}
    return RunRecord("ratio", params, RATIO_COLUMNS, rows), EXIT_OK if ok else EXIT_FAIL


AUDIT_COLUMNS = ["model", "N", "D", "g", "beta", "betaprime", "energy", "bound", "ratio",
                 "orientation", "margin", "satisfied", "three_body_margin", "error"]


def cmd_audit(args) -> tuple[RunRecord, int]:
    model = Model(args.model)
    n_lo, n_hi = DEFAULT_N_RANGE[model]
    n_lo = n_lo if args.n_min is None else args.n_min
    n_hi = n_hi if args.n_max is None else args.n_max
    if n_lo > n_hi:
        raise UsageError("--n-min must not exceed --n-max")
    n_range = range(n_lo, n_hi + 1)
    bounds.validate_n_range(model, n_range)
    d_range = None
    if model is Model.CALOGERO_D:
        d_lo = DEFAULT_D_RANGE[0] if args.dim_min is None else args.dim_min
        d_hi = DEFAULT_D_RANGE[1] if args.dim_max is None else args.dim_max
        if d_lo < 2 or d_lo > d_hi:
            raise UsageError("dimension range must satisfy 2 <= dim-min <= dim-max")
        d_range = range(d_lo, d_hi + 1)
    if args.g is None and args.g_min is None and args.g_max is None:
        grid = bounds.default_g_grid()
    else:
        grid = g_values(args)

    summary = bounds.audit_grid(model, n_range, grid, d_range, omega=args.omega, alpha=args.alpha)
    rows = []
    violations = 0
    for pt in summary.points:
        row = {"model": model.value, "N": pt.N, "D": pt.D, "g": pt.g, "error": pt.error}
        rep = pt.report
        if rep is not None:
            row.update(beta=rep.beta, betaprime=rep.betaprime, energy=rep.energy, bound=rep.bound,
                       ratio=rep.ratio, orientation=rep.orientation.value, margin=rep.margin,
                       satisfied=rep.satisfied, three_body_margin=pt.three_body_margin)
            if not (rep.satisfied and row_is_consistent(rep)):
                violations += 1
            elif pt.three_body_margin is not None and pt.three_body_margin < 0.0:
                violations += 1
        rows.append(row)

    notes = [
        f"violations={violations} worst_margin={fmt(summary.worst_margin)}",
        f"domain_errors={summary.error_count}",
    ]
    if model is Model.CALOGERO_D:
        notes.append(f"worst_three_body_margin={fmt(summary.worst_three_body_margin)}")
    if any(g < 0.0 for g in grid):
        notes.append("grid includes -1/4 <= g < 0 (supported, outside the usual physical range)")
    params = {"model": model.value, "n_min": n_lo, "n_max": n_hi,
              "dim_min": d_range.start if d_range else None,
              "dim_max": d_range.stop - 1 if d_range else None,
              "omega": args.omega, "alpha": args.alpha, "g_points": len(grid)}
    rec = RunRecord("audit", params, AUDIT_COLUMNS, rows, notes=notes)
    return rec, EXIT_OK if violations == 0 else EXIT_FAIL


def cmd_oracle(args) -> tuple[RunRecord, int]:
    if args.model == "calogero1d":
        p = models.Calogero1DParams(args.n, args.omega, args.g)
        a = models.printed_gauss_coeff(p.N, p.omega) if args.printed_gauss else None
        rep = oracle.residual_stats(p, args.samples, args.seed, gauss_coeff=a)
        row = {"N": p.N, "g": p.g, "beta": p.beta, "mean": rep.mean, "stddev": rep.stddev,
               "max_dev": rep.max_dev, "reference": rep.reference, "rel_error": rep.rel_error,
               "rel_stddev": rep.rel_stddev, "fd_agreement": rep.fd_agreement,
               "fd_rel_stddev": rep.fd_stddev / abs(rep.reference)}
        cols = list(row)
        ok = (rep.rel_error <= args.tol and rep.rel_stddev <= args.stddev_tol
              and row["fd_rel_stddev"] <= args.fd_tol and rep.fd_agreement <= args.fd_tol)
        notes = []
        if not ok:
            notes.append("local energy is not constant or does not match the closed form")
        params = {"model": "calogero1d", "n": args.n, "g": args.g, "omega": args.omega,
                  "samples": args.samples, "seed": args.seed, "printed_gauss": args.printed_gauss,
                  "tol": args.tol}
        return RunRecord("oracle", params, cols, [row], notes=notes), EXIT_OK if ok else EXIT_FAIL

    prob = oracle.RadialProblem(args.kind, g=args.g, omega=args.omega, lam=args.lam,
                                grid_points=args.grid_points)
    ref = oracle.two_body_reference(prob)
    notes = []
    try:
        res = oracle.solve_two_body_radial_detailed(prob)
    except oracle.ConvergenceError as exc:
        res, notes = None, [str(exc)]
    row = {"kind": prob.kind.value, "g": prob.g, "E0": res.energy if res else math.nan,
           "reference": ref["exact"],
           "rel_error": abs(res.energy - ref["exact"]) / abs(ref["exact"]) if res else math.nan,
           "refinement_change": res.refinement_change if res else math.nan}
    cols = list(row)
    if "closed_form_n2" in ref:
        row["closed_form_n2"] = ref["closed_form_n2"]
        cols.append("closed_form_n2")
        notes.append("closed_form_n2 is the -alpha^2 energy formula at N=2 with alpha^2 = lambda")
    ok = res is not None and row["rel_error"] <= args.tol
    params = {"model": "twobody", "kind": prob.kind.value, "g": prob.g, "omega": prob.omega,
              "lambda": prob.lam, "grid_points": prob.grid_points, "tol": args.tol}
    return RunRecord("oracle", params, cols, [row], notes=notes), EXIT_OK if ok else EXIT_FAIL


FIGURES = {"fig1": Model.CALOGERO_1D, "fig2": Model.HYPER_COULOMB}


def cmd_figure(args) -> tuple[RunRecord, int]:
    model = FIGURES[args.which]
    gs = [float(v) for v in np.linspace(0.0, args.g_max, args.points)]
    rows, ok = ratio_rows(model, 5, gs, omega=1.0, alpha=1.0, dim=None)
    params = {"which": args.which, "model": model.value, "n": 5, "g_min": 0.0,
              "g_max": args.g_max, "points": args.points}
    return RunRecord("figure", params, RATIO_COLUMNS, rows), EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--out", metavar="PATH", help="write output to PATH")
    p.add_argument("--timestamp", action="store_true",
                   help="record wall-clock time (output is then not byte-reproducible)")


def _grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--g", type=float, help="single coupling")
    p.add_argument("--g-min", type=float)
    p.add_argument("--g-max", type=float)
    p.add_argument("--points", type=int, default=81)
    p.add_argument("--log", action="store_true", help="logarithmic g spacing")


def _model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("model", choices=[m.value for m in Model])
    p.add_argument("--dim", type=int, help="space dimension (calogerod)")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hallpost",
        description="Exact energies and Hall-Post bound ratios for Calogero-type models.",
    )
    parser.add_argument("--version", action="version", version=f"hallpost {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="exact ground-state energy at one point")
    _model_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=float, required=True)
    _common(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("ratio", help="Hall-Post ratio at one g or along a g sweep")
    _model_flags(p)
    p.add_argument("--n", type=int, required=True)
    _grid_flags(p)
    _common(p)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("audit", help="check the bound on an (N, D, g) grid")
    _model_flags(p)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--dim-min", type=int)
    p.add_argument("--dim-max", type=int)
    _grid_flags(p)
    _common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("oracle", help="numerical checks of the closed forms")
    p.add_argument("model", choices=["calogero1d", "twobody"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--kind", choices=[k.value for k in oracle.RadialKind], default="oscillator")
    p.add_argument("--grid-points", type=int, default=4096)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--printed-gauss", action="store_true",
                   help="use the Gaussian coefficient omega/sqrt(2N) instead of omega/(2 sqrt(2N))")
    p.add_argument("--tol", type=float, default=None,
                   help="relative error tolerance (1e-8 residual, 1e-6 two-body)")
    p.add_argument("--stddev-tol", type=float, default=1e-6)
    p.add_argument("--fd-tol", type=float, default=1e-4)
    _common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("figure", help="ratio curves for N = 5 (fig1 Calogero, fig2 hyper-Coulomb)")
    p.add_argument("which", choices=sorted(FIGURES))
    p.add_argument("--g-max", type=float, default=20.0)
    p.add_argument("--points", type=int, default=201)
    _common(p)
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle" and args.tol is None:
        args.tol = 1e-8 if args.model == "calogero1d" else 1e-6
    try:
        record, code = args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"hallpost {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    record.command = " ".join(["hallpost", *argv])
    if args.timestamp:
        record.timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    text = record.to_json() if args.json else record.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
