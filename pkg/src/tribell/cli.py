"""Command-line front end: reproduce, optimize, lhv-scan, sample, correlations."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from importlib import resources
from pathlib import Path

from . import lhv, optimizer, shots
from .inequalities import (
    Functional,
    SettingsPair,
    classify,
    correlation_tensor,
    functional_value,
    symmetric_pairs,
)
from .lhv import ModelClass, lhv_max
from .polarimetry import correlation, outcome_distribution
from .qstate import (
    as_density,
    make_ghz,
    make_w,
    mix_with_white_noise,
    state_from_jsonable,
)

NAMED_STATES = ("w", "ghz-hv", "ghz-rl")


def render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _load_state(state_arg: str):
    name = state_arg.lower()
    if name == "w":
        return make_w()
    if name == "ghz-hv":
        return make_ghz("linear_hv")
    if name == "ghz-rl":
        return make_ghz("circular_rl")
    path = Path(state_arg)
    if not path.exists():
        raise ValueError(
            f"unknown state {state_arg!r}: use one of {NAMED_STATES} or a JSON file path"
        )
    return state_from_jsonable(json.loads(path.read_text()))


def _prepare_state(args):
    state = _load_state(args.state)
    visibility = getattr(args, "visibility", None)
    if visibility is not None:
        state = mix_with_white_noise(as_density(state), visibility)
    return state


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"{what} must be comma-separated numbers, got {text!r}")


def _to_radians(values, radians_flag: bool) -> list[float]:
    return list(values) if radians_flag else [math.radians(v) for v in values]


def _parse_pairs(text: str, radians_flag: bool) -> tuple[SettingsPair, ...]:
    values = _to_radians(_parse_floats(text, "--pairs"), radians_flag)
    if len(values) == 2:
        return symmetric_pairs(values[0], values[1])
    if len(values) == 6:
        return tuple(SettingsPair(values[2 * p], values[2 * p + 1]) for p in range(3))
    raise ValueError("--pairs takes 2 values (all parties) or 6 (per party)")


def _scenario_degenerate(pairs) -> bool:
    return any(pair.is_degenerate for pair in pairs)


def load_reproduce_manifest() -> list[dict]:
    text = resources.files("tribell").joinpath("data/reproduce_manifest.json").read_text()
    return json.loads(text)["rows"]


def _evaluate_manifest_row(row: dict) -> float:
    kind = row["kind"]
    params = row["params"]
    if kind == "functional_value":
        state = _load_state(params["state"])
        pairs = symmetric_pairs(
            math.radians(params["phi_deg"]), math.radians(params["phi_prime_deg"])
        )
        tensor = correlation_tensor(state, pairs)
        return functional_value(tensor, Functional(params["functional"]))
    if kind == "lhv_max":
        result = lhv_max(Functional(params["functional"]), ModelClass(params["model"]))
        return result.max_value
    if kind == "critical_visibility":
        state = _load_state(params["state"])
        pairs = symmetric_pairs(
            math.radians(params["phi_deg"]), math.radians(params["phi_prime_deg"])
        )
        return shots.critical_visibility(
            state, pairs, Functional(params["functional"]), v_tol=1e-6
        )
    raise ValueError(f"unknown manifest row kind {kind!r}")


def run_reproduction() -> list[dict]:
    """Evaluate every manifest row; each gets value, expected, and a pass flag."""
    results = []
    for row in load_reproduce_manifest():
        value = _evaluate_manifest_row(row)
        passed = abs(value - row["expected"]) <= row["tolerance"]
        results.append(
            {
                "id": row["id"],
                "label": row["label"],
                "value": float(value),
                "expected": float(row["expected"]),
                "tolerance": float(row["tolerance"]),
                "passed": bool(passed),
            }
        )
    return results


def _reproduce_table(rows) -> str:
    width = max(len(r["label"]) for r in rows) + 2
    lines = [f"{'check':<{width}}{'value':>14}{'expected':>12}{'tol':>10}  status"]
    for r in rows:
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(
            f"{r['label']:<{width}}{r['value']:>14.9f}{r['expected']:>12g}"
            f"{r['tolerance']:>10.0e}  {status}"
        )
    n_pass = sum(r["passed"] for r in rows)
    lines.append(f"{n_pass}/{len(rows)} checks passed")
    return "\n".join(lines) + "\n"


def cmd_reproduce(args) -> int:
    rows = run_reproduction()
    all_passed = all(r["passed"] for r in rows)
    if args.format == "json":
        text = render_json({"all_passed": all_passed, "rows": rows})
    elif args.format == "csv":
        csv_rows = [["id", "label", "value", "expected", "tolerance", "passed"]]
        csv_rows += [
            [r["id"], r["label"], r["value"], r["expected"], r["tolerance"], r["passed"]]
            for r in rows
        ]
        text = render_csv(csv_rows)
    else:
        text = _reproduce_table(rows)
    _emit(text, args.output)
    return 0 if all_passed else 1


def cmd_optimize(args) -> int:
    state = _prepare_state(args)
    config = optimizer.OptimizationConfig(
        grid_step=math.radians(args.grid_step),
        refine_tolerance=args.tolerance,
        max_refine_iterations=args.max_iterations,
        seed=args.seed,
        random_restarts=args.restarts,
    )
    functional = Functional(args.functional)
    result = optimizer.optimize(state, functional, config)
    if args.trace_csv:
        Path(args.trace_csv).write_text(
            render_csv([["iteration", "value"]] + [[i, v] for i, v in result.trace])
        )
    report = classify(result.best_value, functional)
    payload = result.to_jsonable()
    payload.update(
        {"functional": functional.value, "state": args.state,
         "report": report.to_jsonable()}
    )
    if args.format == "json":
        text = render_json(payload)
    elif args.format == "csv":
        text = render_csv([["iteration", "value"]] + [[i, v] for i, v in result.trace])
    else:
        lines = [f"max |S_{'M' if functional is Functional.MERMIN else 'V'}| = "
                 f"{result.best_value:.9f}  ({report.classification.value})"]
        for name, pair in zip("abc", result.best_settings):
            lines.append(
                f"  party {name}: phi = {math.degrees(pair.phi):10.5f} deg, "
                f"phi' = {math.degrees(pair.phi_prime):10.5f} deg"
            )
        lines.append(f"  restarts used: {result.restarts_used}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def cmd_lhv_scan(args) -> int:
    result = lhv_max(Functional(args.functional), ModelClass(args.model))
    payload = result.to_jsonable()
    if args.format == "json":
        text = render_json(payload)
    elif args.format == "csv":
        text = render_csv(
            [["functional", "model", "max_value"],
             [result.functional.value, result.model.value, result.max_value]]
        )
    else:
        text = (
            f"max |{result.functional.value}| over {result.model.value} models: "
            f"{result.max_value:g}\nwitness: {json.dumps(result.witness.to_jsonable())}\n"
        )
    _emit(text, args.output)
    return 0


def cmd_sample(args) -> int:
    state = _prepare_state(args)
    pairs = _parse_pairs(args.pairs, args.radians)
    table = shots.sample_counts(state, pairs, args.shots, args.seed)
    tensor, std_errors = shots.estimate_tensor(table)
    functionals = (
        list(Functional) if args.functional == "both" else [Functional(args.functional)]
    )
    degenerate = _scenario_degenerate(pairs)
    reports = {}
    for functional in functionals:
        report = shots.estimate_inequality(table, functional)
        if degenerate:
            report = shots.report_from_tensor(
                tensor, functional, std_error=report.std_error, degenerate=True
            )
        reports[functional.value] = report
    if args.format == "json":
        payload = {
            "n_shots_per_setting": table.n_shots_per_setting,
            "seed": args.seed,
            "tensor": tensor.to_jsonable(),
            "std_errors": {
                key: float(std_errors[tuple(int(ch) for ch in key)])
                for key in tensor.to_jsonable()
            },
            "reports": {name: rep.to_jsonable() for name, rep in reports.items()},
        }
        text = render_json(payload)
    elif args.format == "csv":
        text = render_csv(table.to_csv_rows())
    else:
        lines = [f"n = {table.n_shots_per_setting} shots per setting, seed = {args.seed}"]
        for key, value in tensor.to_jsonable().items():
            err = float(std_errors[tuple(int(ch) for ch in key)])
            lines.append(f"  E[{key}] = {value:+.6f} +- {err:.6f}")
        for name, rep in reports.items():
            lines.append(
                f"{name}: value = {rep.value:+.6f} +- {rep.std_error:.6f}, "
                f"z = {rep.z_score:+.2f}, {rep.classification.value}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def cmd_correlations(args) -> int:
    state = _prepare_state(args)
    if args.pairs:
        pairs = _parse_pairs(args.pairs, args.radians)
        tensor = correlation_tensor(state, pairs)
        degenerate = _scenario_degenerate(pairs)
        reports = {
            f.value: classify(functional_value(tensor, f), f, degenerate=degenerate)
            for f in Functional
        }
        if args.format == "json":
            text = render_json(
                {
                    "tensor": tensor.to_jsonable(),
                    "reports": {name: rep.to_jsonable() for name, rep in reports.items()},
                }
            )
        elif args.format == "csv":
            text = render_csv(tensor.to_csv_rows())
        else:
            lines = [f"  E[{key}] = {value:+.6f}" for key, value in tensor.to_jsonable().items()]
            for name, rep in reports.items():
                lines.append(
                    f"{name}: value = {rep.value:+.6f} (bound {rep.bound:g}), "
                    f"{rep.classification.value}"
                )
            text = "\n".join(lines) + "\n"
    else:
        values = _to_radians(_parse_floats(args.angles, "--angles"), args.radians)
        if len(values) == 1:
            values = values * 3
        if len(values) != 3:
            raise ValueError("--angles takes 1 value (all parties) or 3 (per party)")
        dist = outcome_distribution(state, values)
        value = correlation(state, values)
        if args.format == "json":
            text = render_json(
                {
                    "angles_radians": values,
                    "angles_degrees": [math.degrees(v) for v in values],
                    "correlation": value,
                    "distribution": dist.to_jsonable(),
                }
            )
        elif args.format == "csv":
            rows = [["outcome", "probability"]]
            rows += [[key, p] for key, p in dist.to_jsonable().items()]
            text = render_csv(rows)
        else:
            lines = [f"E = {value:+.9f}"]
            lines += [f"  P({key}) = {p:.6f}" for key, p in dist.to_jsonable().items()]
            text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def _add_common(parser, state: bool = True):
    parser.add_argument("--format", choices=("table", "json", "csv"), default="table")
    parser.add_argument("--output", help="write the report to this path instead of stdout")
    if state:
        parser.add_argument(
            "--state", default="w",
            help="w | ghz-hv | ghz-rl | path to a JSON state file (default: w)",
        )
        parser.add_argument(
            "--visibility", type=float, default=None,
            help="mix the state with white noise at this visibility before use",
        )
        parser.add_argument(
            "--radians", action="store_true",
            help="interpret angle arguments as radians instead of degrees",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tribell",
        description="Mermin/Svetlichny tests for three-qubit polarization states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", help="recompute every headline number and check it")
    _add_common(p, state=False)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("optimize", help="maximize |S_M| or |S_V| over analyzer phases")
    _add_common(p)
    p.add_argument("--functional", choices=("mermin", "svetlichny"), required=True)
    p.add_argument("--grid-step", type=float, default=15.0,
                   help="coarse grid step in degrees (default 15)")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=0,
                   help="extra random refinement starts beyond the grid seeds")
    p.add_argument("--trace-csv", help="also write the improvement trace to this CSV path")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("lhv-scan", help="exact hidden-variable model bounds by enumeration")
    _add_common(p, state=False)
    p.add_argument("--functional", choices=("mermin", "svetlichny"), required=True)
    p.add_argument("--model", choices=("local", "hybrid"), required=True)
    p.set_defaults(func=cmd_lhv_scan)

    p = sub.add_parser("sample", help="simulate a finite-statistics correlation run")
    _add_common(p)
    p.add_argument("--pairs", required=True,
                   help="phi,phi' for all parties, or six per-party values")
    p.add_argument("--shots", type=int, required=True, help="shots per setting choice")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--functional", choices=("mermin", "svetlichny", "both"),
                   default="both")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("correlations", help="correlation values for explicit settings")
    _add_common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--angles", help="one triple phi_a,phi_b,phi_c (or one shared value)")
    group.add_argument("--pairs", help="phi,phi' for all parties, or six per-party values")
    p.set_defaults(func=cmd_correlations)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sample" and args.shots < 1:
        parser.error("--shots must be at least 1")
    if getattr(args, "visibility", None) is not None and not 0.0 <= args.visibility <= 1.0:
        parser.error("--visibility must lie in [0, 1]")
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write(render_json({"error": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
