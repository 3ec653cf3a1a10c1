"""Command-line interface.

Subcommands: planar, sphere, critical, sweep, verify, constants.
Default output is JSON on standard output; sweeps can emit CSV and
optionally render the curves to an image file.  Exit codes: 0 success,
2 argument error, 3 numerical non-convergence.
"""

import argparse
import json
import math
import sys

from . import constants as con
from . import crosscheck
from .planar import (Eta, PLANAR_TOL, parse_length_nm, planar_energy,
                     q_planar_total, q_te_planar, q_tm_planar)
from .quadrature import ToleranceConfig
from .sphere import SumConfig, critical_eta, q_sphere_total, sphere_energy

EXIT_OK = 0
EXIT_ARGS = 2
EXIT_NUMERICAL = 3


def _eta_json(eta):
    """Render Eta for JSON output; infinity is not valid JSON."""
    return "inf" if eta.is_perfect else eta.value


def _fmt(x):
    """Full round-trip precision, 17 significant digits."""
    return format(float(x), ".17g")


def _emit(payload, out_path=None):
    text = json.dumps(payload, indent=2)
    if out_path:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _planar_tol(args):
    if args.tol is None:
        return PLANAR_TOL
    return ToleranceConfig(abs_tol=args.tol, rel_tol=100.0 * args.tol,
                           max_evals=400_000)


def _sum_config(args):
    kwargs = {}
    if getattr(args, "l_max", None) is not None:
        kwargs["l_max"] = args.l_max
    if getattr(args, "tol", None) is not None:
        kwargs["target_tol"] = args.tol
    return SumConfig(**kwargs)


def _eta_arg(text):
    try:
        return Eta.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _length_arg(text):
    try:
        return parse_length_nm(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def cmd_planar(args):
    tol = _planar_tol(args)
    if args.d is not None:
        ev = planar_energy(args.eta, args.d, unit=args.unit, tol=tol)
        q = ev.q
        payload = {
            "eta": _eta_json(args.eta),
            "q_tm": q.parts["tm"],
            "q_te": q.parts["te"],
            "q_total": q.value,
            "abs_error": q.abs_error,
            "separation_nm": ev.geometry["separation_nm"],
            "energy": ev.energy,
            "unit": ev.unit,
        }
        converged = q.converged
    else:
        q = q_planar_total(args.eta, tol)
        payload = {
            "eta": _eta_json(args.eta),
            "q_tm": q.parts["tm"],
            "q_te": q.parts["te"],
            "q_total": q.value,
            "abs_error": q.abs_error,
        }
        converged = q.converged
    _emit(payload, args.out)
    if not converged:
        print("warning: quadrature did not converge to tolerance", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_sphere(args):
    cfg = _sum_config(args)
    bd = q_sphere_total(args.eta, cfg)
    payload = {
        "eta": _eta_json(args.eta),
        "q_te_as": bd.te_as,
        "q_te_num": bd.te_num,
        "q_tm_as": bd.tm_as,
        "q_tm_num": bd.tm_num,
        "q_te": bd.te,
        "q_tm": bd.tm,
        "q_total": bd.total,
        "abs_error": bd.abs_error,
    }
    if args.radius is not None:
        ev = sphere_energy(args.eta, args.radius, unit=args.unit, cfg=cfg)
        payload["radius_nm"] = ev.geometry["radius_nm"]
        payload["energy"] = ev.energy
        payload["unit"] = ev.unit
    _emit(payload, args.out)
    if not bd.diagnostics.get("converged", True):
        print("warning: multipole sum did not converge to tolerance",
              file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_critical(args):
    cfg = _sum_config(args)
    try:
        root = critical_eta(cfg, root_tol=args.root_tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _emit({"eta_critical": root, "root_tol": args.root_tol}, args.out)
    return EXIT_OK


def _sweep_grid(args):
    if not (0.0 < args.eta_min < args.eta_max):
        raise argparse.ArgumentTypeError("require 0 < eta-min < eta-max")
    n = args.points
    if n < 2:
        raise argparse.ArgumentTypeError("require at least 2 sweep points")
    if args.log:
        lo, hi = math.log(args.eta_min), math.log(args.eta_max)
        return [math.exp(lo + (hi - lo) * i / (n - 1)) for i in range(n)]
    return [args.eta_min + (args.eta_max - args.eta_min) * i / (n - 1)
            for i in range(n)]


def cmd_sweep(args):
    try:
        grid = _sweep_grid(args)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    rows = []
    all_ok = True
    if args.geometry == "planar":
        tol = _planar_tol(args)
        columns = ["eta", "q_te", "q_tm", "q_total", "abs_error"]
        for eta in grid:
            te = q_te_planar(eta, tol)
            tm = q_tm_planar(eta, tol)
            rows.append({
                "eta": eta,
                "q_te": te.value,
                "q_tm": tm.value,
                "q_total": te.value + tm.value,
                "abs_error": te.abs_error + tm.abs_error,
            })
            all_ok = all_ok and te.converged and tm.converged
    else:
        cfg = _sum_config(args)
        columns = ["eta", "q_te", "q_tm", "q_total",
                   "q_te_as", "q_te_num", "q_tm_as", "q_tm_num", "abs_error"]
        for eta in grid:
            bd = q_sphere_total(eta, cfg)
            rows.append({
                "eta": eta,
                "q_te": bd.te,
                "q_tm": bd.tm,
                "q_total": bd.total,
                "q_te_as": bd.te_as,
                "q_te_num": bd.te_num,
                "q_tm_as": bd.tm_as,
                "q_tm_num": bd.tm_num,
                "abs_error": bd.abs_error,
            })
            all_ok = all_ok and bd.diagnostics.get("converged", True)
    if args.csv:
        lines = [",".join(columns)]
        lines += [",".join(_fmt(r[c]) for c in columns) for r in rows]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit({"geometry": args.geometry, "columns": columns, "rows": rows},
              args.out)
    if args.fig:
        from .figures import render_sweep_figure
        render_sweep_figure(rows, args.geometry, args.fig, log_x=args.log)
    return EXIT_OK if all_ok else EXIT_NUMERICAL


def cmd_verify(args):
    if args.perturb:
        for spec in args.perturb:
            name, _, delta = spec.partition("=")
            if name not in crosscheck.PIECE_NAMES or not delta:
                print(f"error: bad --perturb {spec!r}", file=sys.stderr)
                return EXIT_ARGS
            crosscheck._PERTURB[name] = float(delta)
    grid = crosscheck.DEFAULT_ETA_GRID
    if args.eta_grid:
        try:
            grid = tuple(float(tok) for tok in args.eta_grid.split(","))
        except ValueError:
            print("error: --eta-grid expects comma-separated reals",
                  file=sys.stderr)
            return EXIT_ARGS
    report = crosscheck.verification_report(eta_grid=grid)
    _emit(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_NUMERICAL


def cmd_constants(args):
    payload = {
        "q_planar_perfect": {"value": con.Q_PLANAR_PERFECT,
                             "note": "-pi^2/720, both planar modes"},
        "q_planar_perfect_per_mode": {"value": con.Q_PLANAR_PERFECT_PER_MODE,
                                      "note": "-pi^2/1440, one planar mode"},
        "q_te_sphere_perfect_as": {"value": con.Q_TE_SPHERE_TAIL_PERFECT,
                                   "note": "17/128, TE shell closed part"},
        "q_tm_sphere_perfect_as": {"value": con.Q_TM_SPHERE_TAIL_PERFECT,
                                   "note": "-11/128, TM shell closed part"},
        "q_sphere_perfect": {"value": con.Q_SPHERE_PERFECT,
                             "note": "perfectly conducting shell total"},
        "eta_critical": {"value": con.ETA_CRITICAL,
                         "note": "shell energy sign change"},
        "eta_graphene": {"value": con.ETA_GRAPHENE,
                         "note": "pi*alpha/2, graphene universal conductivity"},
        "graphene_z": {"value": 1.024,
                       "note": "Z in Q_tm = -alpha*Z/(32 pi) at eta_gr"},
        "hbar_c_ev_nm": {"value": con.HBAR_C_EV_NM,
                         "note": "unit conversion, CODATA 2018"},
        "alpha": {"value": con.ALPHA, "note": "fine-structure constant"},
    }
    _emit(payload, args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="condcasimir",
        description="Casimir energy of constant-conductivity sheets and shells.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write output to a file instead of stdout")

    p = sub.add_parser("planar", help="two parallel sheets")
    p.add_argument("--eta", type=_eta_arg, required=True,
                   help="dimensionless conductivity, or 'inf'")
    p.add_argument("--d", type=_length_arg,
                   help="sheet separation, e.g. 100nm, 2um")
    p.add_argument("--unit", choices=("natural", "eV"), default="natural")
    p.add_argument("--tol", type=float, help="absolute quadrature tolerance")
    add_common(p)
    p.set_defaults(func=cmd_planar)

    p = sub.add_parser("sphere", help="spherical shell")
    p.add_argument("--eta", type=_eta_arg, required=True)
    p.add_argument("--radius", type=_length_arg, help="shell radius, e.g. 50nm")
    p.add_argument("--unit", choices=("natural", "eV"), default="natural")
    p.add_argument("--tol", type=float, help="multipole sum error budget")
    p.add_argument("--l-max", type=int, help="multipole truncation order")
    add_common(p)
    p.set_defaults(func=cmd_sphere)

    p = sub.add_parser("critical", help="shell sign-change conductivity")
    p.add_argument("--root-tol", type=float, default=1e-3)
    p.add_argument("--tol", type=float)
    p.add_argument("--l-max", type=int)
    add_common(p)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("sweep", help="Q(eta) curves over a conductivity grid")
    p.add_argument("--geometry", choices=("planar", "sphere"), required=True)
    p.add_argument("--eta-min", type=float, required=True)
    p.add_argument("--eta-max", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--log", action="store_true", help="log-spaced grid")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    p.add_argument("--fig", metavar="PATH",
                   help="also render the curves to an image file")
    p.add_argument("--tol", type=float)
    p.add_argument("--l-max", type=int)
    add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="closed-form vs quadrature cross-check")
    p.add_argument("--eta-grid", help="comma-separated eta values")
    p.add_argument("--perturb", action="append", metavar="PIECE=DELTA",
                   help="testing hook: offset a closed form before checking")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", help="named reference constants")
    add_common(p)
    p.set_defaults(func=cmd_constants)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_ARGS
    return code


if __name__ == "__main__":
    sys.exit(main())
