"""Command-line front end.

Exit codes: 0 on success, 1 on domain errors (unstable queue, value out of
domain, invalid parameter), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import core, geometry
from .controller import ControllerConfig, LoadTrace, Mode, run_controller
from .errors import KneeError
from .export import CurveForm, sample_curve, series_to_csv, series_to_json, to_json
from .sim import SimConfig, run_mm1, validate_against_analytic


def _cmd_analyze(args):
    params = core.QueueParameters(args.lam, args.mu)
    m = core.steady_state(params)
    return to_json({
        "arrival_rate": params.arrival_rate,
        "service_rate": params.service_rate,
        "service_time": params.service_time,
        **m.as_dict(),
    })


def _cmd_knee(args, parser):
    if args.service_time is not None:
        if args.form == "throughput":
            parser.error("--form throughput requires --mu")
        return to_json(geometry.load_knee_geometry(args.service_time).as_dict())
    if args.form == "load":
        parser.error("--form load requires --service-time")
    return to_json(geometry.throughput_knee_geometry(args.mu).as_dict())


def _cmd_classify(args, parser):
    load = args.service_time is not None or args.utilization is not None
    thru = args.mu is not None or args.lam is not None
    if load == thru:
        parser.error("give either --service-time and --utilization, or --mu and --lambda")
    if load:
        if args.service_time is None or args.utilization is None:
            parser.error("--service-time and --utilization go together")
        label = geometry.classify_load(args.service_time, args.utilization)
        rec = {"form": "load", "service_time": args.service_time, "utilization": args.utilization}
    else:
        if args.mu is None or args.lam is None:
            parser.error("--mu and --lambda go together")
        label = geometry.classify_throughput(args.mu, args.lam)
        rec = {"form": "throughput", "service_rate": args.mu, "arrival_rate": args.lam}
    rec["region"] = label.value
    return to_json(rec)


def _cmd_curve(args):
    if args.service_time is not None:
        series = sample_curve(CurveForm.LOAD, args.service_time, args.x_from, args.x_to, args.step)
    else:
        series = sample_curve(CurveForm.THROUGHPUT, args.mu, args.x_from, args.x_to, args.step)
    return series_to_json(series) if args.format == "json" else series_to_csv(series)


def _cmd_simulate(args):
    config = SimConfig(args.lam, args.mu, args.seed, args.customers, args.warmup, args.batches)
    result = run_mm1(config)
    out = {
        "arrival_rate": config.arrival_rate,
        "service_rate": config.service_rate,
        "seed": config.seed,
        "total_customers": config.total_customers,
        "warmup_fraction": config.warmup_fraction,
        "batch_count": config.batch_count,
        **result.as_dict(),
    }
    if args.tolerance is not None:
        report = validate_against_analytic(
            result, core.QueueParameters(args.lam, args.mu), args.tolerance
        )
        out["validation"] = report.as_dict()
    return to_json(out)


def _cmd_adapt(args):
    trace = LoadTrace.from_csv(Path(args.trace).read_text())
    kwargs = {} if args.mu_min is None else {"mu_min": args.mu_min}
    config = ControllerConfig(
        review_period=args.review_period,
        mu_max=args.mu_max,
        initial_mu=args.initial_mu,
        mode=Mode(args.mode),
        seed=args.seed,
        settle_on_start=not args.no_settle,
        **kwargs,
    )
    return to_json(run_controller(trace, config, args.horizon).as_dict())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mm1knee", description="Knees of M/M/1 performance curves.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="steady-state metrics")
    a.add_argument("--lambda", dest="lam", type=float, required=True)
    a.add_argument("--mu", type=float, required=True)
    a.add_argument("--format", choices=["json"], default="json")

    k = sub.add_parser("knee", help="knee geometry of a load or throughput curve")
    g = k.add_mutually_exclusive_group(required=True)
    g.add_argument("--service-time", type=float)
    g.add_argument("--mu", type=float)
    k.add_argument("--form", choices=["load", "throughput"])
    k.add_argument("--format", choices=["json"], default="json")

    c = sub.add_parser("classify", help="flat / knee / exponential label of an operating point")
    c.add_argument("--service-time", type=float)
    c.add_argument("--utilization", type=float)
    c.add_argument("--mu", type=float)
    c.add_argument("--lambda", dest="lam", type=float)

    cv = sub.add_parser("curve", help="sample a response-time curve with knee markers")
    g = cv.add_mutually_exclusive_group(required=True)
    g.add_argument("--service-time", type=float)
    g.add_argument("--mu", type=float)
    cv.add_argument("--from", dest="x_from", type=float, required=True)
    cv.add_argument("--to", dest="x_to", type=float, required=True)
    cv.add_argument("--step", type=float, required=True)
    cv.add_argument("--format", choices=["csv", "json"], default="csv")

    s = sub.add_parser("simulate", help="discrete-event simulation with analytic comparison")
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--mu", type=float, required=True)
    s.add_argument("--customers", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--warmup", type=float, default=0.1)
    s.add_argument("--batches", type=int, default=20)
    s.add_argument("--tolerance", type=float)

    d = sub.add_parser("adapt", help="run the knee-region capacity controller on a load trace")
    d.add_argument("--trace", required=True)
    d.add_argument("--review-period", type=float, required=True)
    d.add_argument("--horizon", type=float, required=True)
    d.add_argument("--mu-min", type=float)
    d.add_argument("--mu-max", type=float, required=True)
    d.add_argument("--initial-mu", type=float, required=True)
    d.add_argument("--mode", choices=[m.value for m in Mode], default="analytic")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--no-settle", action="store_true",
                   help="do not centre capacity on the first measurement")
    return p


def cli_main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "knee":
            text = _cmd_knee(args, parser)
        elif args.command == "classify":
            text = _cmd_classify(args, parser)
        else:
            text = {
                "analyze": _cmd_analyze,
                "curve": _cmd_curve,
                "simulate": _cmd_simulate,
                "adapt": _cmd_adapt,
            }[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except KneeError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    stdout.write(text)
    return 0


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
