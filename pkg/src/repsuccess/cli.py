"""Command-line interface.

Exit status is 0 whenever a computation ran, whatever its scientific outcome
(including an infeasible design). Usage and input errors exit with 2,
numerical convergence failures with 3.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional

from . import curves
from .design import c_from_d_two_trials, c_from_dmin_rs, c_from_power_rs, c_from_power_two_trials
from .errors import ConvergenceError, InfeasibleDesignError, ReplicationError
from .numkernel import normal_isf
from .power import CONDITIONAL, PREDICTIVE, REPLICATION_SUCCESS, TWO_TRIALS, PowerSpec, power
from .projects import (
    analyze_project,
    dinf_sweep,
    discrepant_report,
    format_2dp,
    format_discrepant,
    format_p,
    format_summary,
    group_by_project,
    read_project_csv,
    result_rows,
    to_json,
    write_results_csv,
)
from .rates import (
    ProjectPowerSpec,
    project_power_rs,
    project_power_two_trials,
    t1e_closed_c1,
    t1e_quadrature,
    t1e_two_trials,
)
from .sceptical import (
    StudyPair,
    custom_level,
    golden_level,
    level_from_limiting_res,
    assess,
    d_min,
    nominal_level,
)

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


def _add_level_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.025, help="one-sided significance level (default 0.025)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--level", choices=("nominal", "golden"), default=None,
                       help="replication success level (default golden)")
    group.add_argument("--dinf", type=float, default=None,
                       help="calibrate the success level to this limiting relative effect size")
    group.add_argument("--alpha-s", dest="alpha_s", type=float, default=None,
                       help="custom replication success level")


def _level(args):
    if args.dinf is not None:
        return level_from_limiting_res(args.alpha, args.dinf)
    if args.alpha_s is not None:
        return custom_level(args.alpha, args.alpha_s)
    if args.level == "nominal":
        return nominal_level(args.alpha)
    return golden_level(args.alpha)


def _add_original_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--zo", type=float, help="original z-value")
    group.add_argument("--po", type=float, help="original one-sided p-value")


def _z_original(args) -> float:
    return args.zo if args.zo is not None else normal_isf(args.po)


def _fmt(x) -> str:
    if x is None:
        return "undefined"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        if math.isnan(x):
            return "nan"
        return f"{x:.6g}"
    return str(x)


def _pair_from_args(args) -> StudyPair:
    groups = {
        "z": [args.zo, args.zr],
        "p": [args.po, args.pr],
        "estimates": [args.to, args.so, args.tr, args.sr],
    }
    used = [name for name, vals in groups.items() if any(v is not None for v in vals)]
    if len(used) != 1:
        raise UsageError("supply exactly one of --zo/--zr, --po/--pr or --to/--so/--tr/--sr")
    name = used[0]
    if any(v is None for v in groups[name]):
        raise UsageError(f"incomplete input group: {name}")
    if name == "estimates":
        if args.c is not None:
            raise UsageError("--c conflicts with --so/--sr (c is the squared ratio of standard errors)")
        return StudyPair.from_estimates(args.to, args.so, args.tr, args.sr)
    if args.c is None:
        raise UsageError("--c is required with z-values or p-values")
    if name == "z":
        return StudyPair(args.zo, args.zr, args.c)
    return StudyPair.from_p_values(args.po, args.pr, args.c)


def cmd_assess(args, out) -> None:
    pair = _pair_from_args(args)
    level = _level(args)
    result = assess(pair, level)
    if args.json:
        payload = {"z_o": pair.z_o, "z_r": pair.z_r, "c": pair.c, "alpha": level.alpha,
                   "alpha_s": level.alpha_s, "calibration": level.calibration}
        payload.update(result.to_dict())
        print(to_json(payload), file=out)
        return
    print(f"z_o: {_fmt(pair.z_o)}  z_r: {_fmt(pair.z_r)}  c: {_fmt(pair.c)}", file=out)
    print(f"level: {level.calibration}  alpha: {_fmt(level.alpha)}  alpha_s: {_fmt(level.alpha_s)}", file=out)
    for name, value in result.to_dict().items():
        if name in ("p_s", "p_s_tilde") and value is None:
            text = "undefined (opposite directions)"
        elif name in ("p_o", "p_r", "p_s", "p_s_tilde"):
            text = format_p(value)
        elif name in ("d", "shrinkage_s", "d_min", "d_inf", "z_r_min"):
            text = format_2dp(value) if not math.isnan(value) else "nan"
        else:
            text = _fmt(value)
        print(f"{name}: {text}", file=out)


def cmd_power(args, out) -> None:
    method = TWO_TRIALS if args.method == "2tr" else REPLICATION_SUCCESS
    spec = PowerSpec(_z_original(args), args.c, _level(args), args.shrinkage, args.mode, method)
    value = power(spec)
    if args.json:
        print(to_json({"z_o": spec.z_o, "c": spec.c, "mode": spec.mode, "method": spec.method,
                       "shrinkage": spec.shrinkage, "power": value}), file=out)
    else:
        print(f"{spec.mode} power ({spec.method}): {value:.6g}", file=out)


def cmd_rates(args, out) -> None:
    level = _level(args)
    if args.t1e:
        if args.method == "2tr":
            res = t1e_two_trials(args.alpha)
        elif args.c == 1:
            res = t1e_closed_c1(level)
        else:
            res = t1e_quadrature(args.c, level)
        quantity = "type-I error"
    else:
        spec = ProjectPowerSpec(args.alpha, args.beta, args.c, level, args.restrict)
        res = project_power_two_trials(spec) if args.method == "2tr" else project_power_rs(spec)
        quantity = "project power"
    if args.json:
        print(to_json({"quantity": quantity, "method": args.method, "c": args.c, "value": res.value,
                       "abs_error_estimate": res.abs_error_estimate, "method_tag": res.method_tag}), file=out)
    else:
        print(f"{quantity} ({args.method}, c={args.c:g}): {res.value:.6g} "
              f"[{res.method_tag}, error <= {res.abs_error_estimate:.2g}]", file=out)


def cmd_design(args, out) -> None:
    z_o = _z_original(args)
    level = _level(args)
    payload = {"z_o": z_o, "method": "2tr" if args.tr2 else "rs"}
    try:
        if args.dmin is not None:
            payload["target"] = {"d_min": args.dmin}
            if args.tr2:
                c = c_from_d_two_trials(z_o, args.alpha, args.dmin)
                check = normal_isf(args.alpha) / (z_o * math.sqrt(c))
            else:
                c = c_from_dmin_rs(z_o, level, args.dmin)
                check = d_min(z_o, c, level)
            payload["round_trip"] = {"d_min": check}
        else:
            payload["target"] = {"power": args.power}
            if args.tr2:
                c = c_from_power_two_trials(z_o, args.alpha, args.power, args.shrinkage)
                spec = PowerSpec(z_o, c, level, args.shrinkage, method=TWO_TRIALS)
            else:
                c = c_from_power_rs(z_o, level, args.power, args.shrinkage)
                spec = PowerSpec(z_o, c, level, args.shrinkage)
            payload["round_trip"] = {"power": power(spec)}
        payload.update(feasible=True, c=c)
    except InfeasibleDesignError as exc:
        payload.update(feasible=False, reason=str(exc))
    if args.json:
        print(to_json(payload), file=out)
    elif payload["feasible"]:
        (key, value), = payload["round_trip"].items()
        print(f"required c: {payload['c']:.6g} (round trip: {key} = {value:.9g})", file=out)
    else:
        print(f"infeasible: {payload['reason']}", file=out)


def _parse_grid(text: str) -> List[float]:
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--dinf-grid expects start:stop:step, got {text!r}")
    if step <= 0 or stop < start:
        raise UsageError("--dinf-grid needs step > 0 and stop >= start")
    n = int(round((stop - start) / step))
    return [round(start + i * step, 12) for i in range(n + 1)]


def cmd_project(args, out) -> None:
    records = read_project_csv(args.input)
    level = _level(args)
    groups = group_by_project(records)
    summaries, rows, discrepant = [], [], []
    for name, recs in groups.items():
        results, summary = analyze_project(recs, level)
        summaries.append(summary)
        rows += result_rows(recs, results)
        discrepant += discrepant_report(recs, level)
    sweep = dinf_sweep(records, args.alpha, _parse_grid(args.dinf_grid)) if args.dinf_grid else None
    if args.results:
        with open(args.results, "w", newline="", encoding="utf-8") as fh:
            write_results_csv(rows, fh)
    if args.json:
        payload = {"summaries": summaries, "discrepant": discrepant, "results": rows}
        if sweep is not None:
            payload["dinf_sweep"] = sweep
        print(to_json(payload), file=out)
        return
    for summary in summaries:
        print(format_summary(summary), file=out)
    print("discrepant studies:", file=out)
    for row in discrepant:
        print("  " + format_discrepant(row), file=out)
    if sweep is not None:
        print("d_inf,alpha_prime,rs_rate,ttr_rate_at_alpha_prime,both_rate", file=out)
        for r in sweep:
            print(f"{r.d_inf:g},{r.alpha_prime:.4f},{r.rs_rate:.4f},"
                  f"{r.ttr_rate_at_alpha_prime:.4f},{r.both_rate:.4f}", file=out)


def cmd_curves(args, out) -> None:
    params = {}
    records = None
    if args.figure in ("fig2", "fig3", "fig4", "fig7"):
        params["alpha"] = args.alpha
    if args.figure == "fig4":
        params["beta"] = args.beta
    if args.figure == "fig7":
        if not args.input:
            raise UsageError("fig7 needs --input <csv>")
        records = read_project_csv(args.input)
    rows = curves.curve_rows(args.figure, records, **params)
    curves.write_curves(rows, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repsuccess",
        description="Replication success with the sceptical p-value at the golden level.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assess", help="assess one original/replication pair")
    for flag, hlp in (("--zo", "original z-value"), ("--zr", "replication z-value"),
                      ("--po", "original one-sided p-value"), ("--pr", "replication one-sided p-value"),
                      ("--to", "original estimate"), ("--so", "original standard error"),
                      ("--tr", "replication estimate"), ("--sr", "replication standard error"),
                      ("--c", "relative sample size / variance ratio")):
        p.add_argument(flag, type=float, help=hlp)
    _add_level_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("power", help="conditional or predictive power")
    _add_original_args(p)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--mode", choices=(CONDITIONAL, PREDICTIVE), default=CONDITIONAL)
    p.add_argument("--method", choices=("rs", "2tr"), default="rs")
    p.add_argument("--shrinkage", type=float, default=0.0)
    _add_level_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("rates", help="overall type-I error or project power")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--t1e", action="store_true")
    which.add_argument("--pp", action="store_true")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--method", choices=("rs", "2tr"), default="rs")
    p.add_argument("--restrict", action="store_true", help="only count originals with p_o <= alpha")
    _add_level_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("design", help="replication sample size")
    method = p.add_mutually_exclusive_group()
    method.add_argument("--rs", action="store_true", help="replication success (default)")
    method.add_argument("--2tr", dest="tr2", action="store_true", help="two-trials rule")
    _add_original_args(p)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--dmin", type=float, help="minimum acceptable relative effect size")
    target.add_argument("--power", type=float, help="target conditional power")
    p.add_argument("--shrinkage", type=float, default=0.0)
    _add_level_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("project", help="analyse a replication-project CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--dinf-grid", dest="dinf_grid", help="start:stop:step")
    p.add_argument("--results", help="write per-study results to this CSV file")
    _add_level_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("curves", help="emit figure curve data as CSV")
    p.add_argument("figure", choices=curves.FIGURES)
    p.add_argument("--alpha", type=float, default=0.025)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--input", help="project CSV (fig7)")
    p.set_defaults(func=cmd_curves)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, ReplicationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
