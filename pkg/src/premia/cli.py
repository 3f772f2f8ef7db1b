"""Command-line entry point.

    premia run   --scenario FILE [--tolerance R] [--max-rounds N] [--trace CSV] [--report JSON]
    premia check --scenario FILE
    premia sweep --scenario FILE --param NAME --values V1,V2,... [--out-dir DIR] [--jobs N]

Exit codes: 0 converged (or valid), 2 not converged, 3 invalid scenario,
4 hypothesis violation (some risk has no quote).
"""
import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import HypothesisViolation, PreconditionError, ScenarioError
from .scenario import emit_report, load_scenario, parse_scenario, set_param
from .simulate import run_equilibrium

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2
EXIT_INVALID = 3
EXIT_HYPOTHESIS = 4


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _summary(report):
    status = "converged" if report.converged else "NOT converged"
    return (
        f"{status} after {report.rounds_used} round(s): "
        f"P={report.P:.12g} P1={report.P1:.12g} P2={report.P2:.12g} delta={report.delta:.3g}"
    )


def run_scenario(scenario, tolerance=None, max_rounds=None):
    tol = scenario.tolerance if tolerance is None else tolerance
    rounds = scenario.max_rounds if max_rounds is None else max_rounds
    return run_equilibrium(scenario.build_state(), tol, rounds, scenario.insured_rho)


def cmd_run(args):
    scenario = load_scenario(args.scenario)
    report = run_scenario(scenario, args.tolerance, args.max_rounds)
    if args.trace:
        _write(args.trace, emit_report(report, "csv"))
    text = emit_report(report, "json", scenario)
    if args.report:
        _write(args.report, text)
    else:
        sys.stdout.write(text)
    print(_summary(report), file=sys.stderr)
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def cmd_check(args):
    scenario = load_scenario(args.scenario)
    state = scenario.build_state()
    sizes = ", ".join(f"{rid}: {len(book)}" for rid, book in state.books.items())
    print(f"ok: {len(state.insurers)} insurer(s), quotes per book {sizes}")
    return EXIT_OK


def _sweep_one(job):
    raw, param, value, out_path, trace_path = job
    try:
        scenario = parse_scenario(set_param(raw, param, value))
        report = run_scenario(scenario)
    except ScenarioError as exc:
        return value, EXIT_INVALID, str(exc)
    except HypothesisViolation as exc:
        return value, EXIT_HYPOTHESIS, str(exc)
    _write(out_path, emit_report(report, "json", scenario))
    if trace_path:
        _write(trace_path, emit_report(report, "csv"))
    return value, (EXIT_OK if report.converged else EXIT_NOT_CONVERGED), _summary(report)


def cmd_sweep(args):
    base = load_scenario(args.scenario)
    try:
        values = json.loads(f"[{args.values}]")
    except json.JSONDecodeError:
        raise ScenarioError("--values", f"not a comma-separated list of JSON values: {args.values!r}") from None
    os.makedirs(args.out_dir, exist_ok=True)
    stem = os.path.splitext(os.path.basename(args.scenario))[0]
    jobs = []
    for i, value in enumerate(values):
        prefix = os.path.join(args.out_dir, f"{stem}_{args.param}_{i}")
        jobs.append((base.raw, args.param, value, prefix + ".json", prefix + ".csv" if args.traces else None))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(job) for job in jobs]
    worst = EXIT_OK
    for value, code, message in results:
        print(f"{args.param}={value}: {message}")
        worst = max(worst, code)
    return worst


def build_parser():
    parser = argparse.ArgumentParser(
        prog="premia",
        description="Simulate arbitrage-driven convergence of full-coverage premia to additivity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario to equilibrium")
    run.add_argument("--scenario", required=True)
    run.add_argument("--tolerance", type=float, help="override the scenario tolerance")
    run.add_argument("--max-rounds", type=int, help="override the scenario round budget")
    run.add_argument("--trace", help="write the per-round trace CSV here")
    run.add_argument("--report", help="write the JSON report here (default: stdout)")
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("check", help="validate a scenario and build its market")
    check.add_argument("--scenario", required=True)
    check.set_defaults(func=cmd_check)

    sweep = sub.add_parser("sweep", help="rerun a scenario over values of one parameter")
    sweep.add_argument("--scenario", required=True)
    sweep.add_argument("--param", required=True, help="dotted path, e.g. tolerance or insurers.0.rho")
    sweep.add_argument("--values", required=True, help="comma-separated JSON values")
    sweep.add_argument("--out-dir", default="sweep_out")
    sweep.add_argument("--traces", action="store_true", help="also write a trace CSV per value")
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, PreconditionError, OSError) as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
