"""Command-line entry point: ``stopwalk <subcommand> ...``.

Exit status: 0 on success, 1 on validation/verification failure (error JSON on
stderr), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io as sio
from .errors import StopwalkError
from .estimation import estimate, ml_estimate, verify_unbiasedness
from .lattice import validate_region
from .path_counting import count_paths
from .region_analysis import DEFAULT_THRESHOLD, is_closed, is_simple
from .simulation import StudyConfig, run_study
from .trial_design import (
    TrialDesign,
    TrialState,
    trial_unbiased_estimate,
    validate_design,
    verify_trial,
)


def _point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated point: {text!r}")


def _rational_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v) for v in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational vector: {text!r}")


def _terminal(text: str) -> dict:
    out = {}
    for part in text.split(","):
        key, _, val = part.partition("=")
        if key not in ("r", "e", "stage", "j") or not val:
            raise argparse.ArgumentTypeError(f"bad terminal field {part!r}")
        out[key] = int(val)
    if not {"r", "e", "stage"} <= out.keys():
        raise argparse.ArgumentTypeError("terminal needs r=,e=,stage=")
    return out


def _emit(obj, path=None):
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_count(args):
    if args.table:
        table = sio.table_from_json(sio.load_json(args.table))
    else:
        if not args.region or args.horizon is None:
            raise StopwalkError("count needs --region and --horizon (or --table)")
        region = sio.load_region(args.region)
        validate_region(region)
        table = count_paths(region, args.horizon)
    if args.emit:
        _emit(sio.table_to_json(table), args.emit)
    if args.point is not None:
        x = args.point
        if x not in table.counts:
            raise StopwalkError(f"{x} is not in the table (outside the region or horizon)")
        tot, star = table.counts[x]
        out = {"point": list(x), "k": str(tot), "k_star": [str(s) for s in star],
               "boundary": table.region.is_boundary(x)}
        if out["boundary"]:
            out["unbiased"] = [sio.render(Fraction(s, tot), args.decimal) for s in star]
        _emit(out)
    return 0


def cmd_estimate(args):
    if args.closed_form:
        if args.b is None:
            raise StopwalkError("--closed-form needs --b")
        rep = estimate(args.observation, closed_form=args.closed_form, b=args.b)
    else:
        if args.table:
            table = sio.table_from_json(sio.load_json(args.table))
        else:
            if not args.region or args.horizon is None:
                raise StopwalkError("estimate needs --region and --horizon (or --table)")
            table = count_paths(sio.load_region(args.region), args.horizon)
        rep = estimate(args.observation, table=table)
    _emit({"unbiased": [sio.render(v, args.decimal) for v in rep.unbiased],
           "ml": [sio.render(v, args.decimal) for v in rep.ml]})
    return 0


def cmd_verify(args):
    region = sio.load_region(args.region)
    if args.check == "simple":
        rep = is_simple(region, args.horizon)
        _emit(rep.to_json())
        return 0 if rep.passed else 1
    if args.check == "closed":
        if not args.model:
            raise StopwalkError("verify closed needs --model")
        rep = is_closed(region, sio.load_model(args.model), args.horizon, args.threshold)
        out = rep.to_json()
        if args.decimal is not None:
            out["absorbed_mass"] = sio.render(rep.absorbed_mass, args.decimal)
            out["residual_mass"] = sio.render(rep.residual_mass, args.decimal)
        _emit(out)
        return 0 if rep.verdict != "Inconclusive" else 1
    # unbiased
    grid = args.p or []
    if not grid:
        raise StopwalkError("verify unbiased needs at least one --p")
    estimator = (lambda table, y: ml_estimate(y)) if args.ml_control else None
    rep = verify_unbiasedness(region, args.horizon, grid, estimator)
    _emit(rep.to_json())
    return 0 if rep.passed else 1


def cmd_simulate(args):
    cfg = StudyConfig(sio.load_model(args.model), sio.load_region(args.region),
                      paths=args.paths, seed=args.seed,
                      estimator=args.closed_form or "auto", max_steps=args.max_steps)
    summary = run_study(cfg)
    families = ("ml", "unbiased") if args.estimators == "both" else (args.estimators,)
    text = sio.summary_csv(summary, cfg.model, families)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.per_path:
        with open(args.per_path, "w", newline="") as fh:
            fh.write(sio.per_path_csv(summary, cfg.model))
    return 0


def cmd_trial(args):
    design = TrialDesign.from_json(sio.load_json(args.design))
    report = validate_design(design)
    if args.action == "validate":
        _emit(report.to_json())
        return 0
    if args.action == "estimate":
        if args.terminal is None:
            raise StopwalkError("trial estimate needs --terminal")
        t = args.terminal
        stage = t["stage"]
        if not 1 <= stage <= design.K:
            raise StopwalkError(f"stage {stage} out of range 1..{design.K}")
        j = t.get("j", design.cumulative[stage - 1])
        est = trial_unbiased_estimate(design, TrialState(j, t["r"], t["e"]), stage)
        out = est.to_json()
        out["unbiased"] = [sio.render(v, args.decimal)
                           for v in (est.response, est.nonresponse, est.progression)]
        y = est.terminal.point
        out["ml"] = [sio.render(v, args.decimal) for v in ml_estimate(y)]
        _emit(out)
        return 0
    rows = verify_trial(design, args.p or [])
    _emit({"result": "PASS" if all(r["holds"] for r in rows) else "FAIL",
           "checks": [{"p": [str(v) for v in r["p"]], "absorbed": str(r["absorbed"]),
                       "expectations": [str(v) for v in r["expectations"]],
                       "holds": r["holds"]} for r in rows]})
    return 0 if all(r["holds"] for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stopwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_decimal(p):
        p.add_argument("--decimal", type=int, metavar="DIGITS",
                       help="render numbers as decimals instead of exact fractions")

    p = sub.add_parser("count", help="path counts k(x) and k*_i(x)")
    p.add_argument("--region")
    p.add_argument("--horizon", type=int)
    p.add_argument("--point", type=_point)
    p.add_argument("--emit", help="write the full table as JSON")
    p.add_argument("--table", help="read a previously emitted table instead of --region")
    add_decimal(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("estimate", help="unbiased and ML estimates for one observation")
    p.add_argument("--region")
    p.add_argument("--horizon", type=int)
    p.add_argument("--table")
    p.add_argument("--observation", type=_point, required=True)
    p.add_argument("--closed-form", choices=["lattice2d", "nullstep"])
    p.add_argument("--b", type=int)
    add_decimal(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify", help="check region hypotheses or exact unbiasedness")
    p.add_argument("check", choices=["simple", "closed", "unbiased"])
    p.add_argument("--region", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--model")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--p", type=_rational_vector, action="append")
    p.add_argument("--ml-control", action="store_true",
                   help="substitute the ML estimator (negative control)")
    add_decimal(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo study of both estimators")
    p.add_argument("--model", required=True)
    p.add_argument("--region", required=True)
    p.add_argument("--paths", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--estimators", choices=["both", "ml", "unbiased"], default="both")
    p.add_argument("--closed-form", choices=["lattice2d", "nullstep", "general"])
    p.add_argument("--max-steps", type=int, default=10**6)
    p.add_argument("--out")
    p.add_argument("--per-path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("trial", help="multistage trial designs")
    p.add_argument("action", choices=["validate", "estimate", "verify"])
    p.add_argument("--design", required=True)
    p.add_argument("--terminal", type=_terminal)
    p.add_argument("--p", type=_rational_vector, action="append")
    add_decimal(p)
    p.set_defaults(func=cmd_trial)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        code = exc.code if isinstance(exc, StopwalkError) else type(exc).__name__
        sys.stderr.write(json.dumps({"error": code, "message": str(exc)}) + "\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
