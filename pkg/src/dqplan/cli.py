"""Command-line interface.

Subcommands: ``gen-scenario``, ``plan``, ``compare``, ``validate``. All
randomness flows through explicit ``--seed`` flags, so every invocation
is deterministic and repeated runs write byte-identical files.

Exit codes: 0 success, 2 usage error, 3 unreadable/mismatched input,
4 planning failure, 5 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass

from .collision import validate_path
from .dualquat import Pose, Quaternion, quat_from_axis_angle
from .errors import (
    DqplanError,
    GenerationFailedError,
    InvalidScenarioError,
    NoPathFoundError,
    ParseError,
    SchemaVersionMismatchError,
)
from .planner import MODE_DQ, MODE_SE3, PlannedPath, PlannerConfig, plan
from .posespace import ROTATION_FULL, ROTATION_TRANSLATION_ONLY, MetricWeights, SteerConfig, WorkspaceBounds
from .scenario import (
    DEFAULT_EXPORT_RESOLUTION,
    Scenario,
    demo_scenario,
    densify_path,
    export_path,
    generate_scenario,
    load_path_export,
    load_scenario,
    rotation_increment_stats,
    save_scenario,
    scenario_hash,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NO_PATH = 4
EXIT_VALIDATION = 5

_CLI_MODES = {"dq": MODE_DQ, "se3": MODE_SE3}


@dataclass
class RunSummary:
    """Machine-readable record of one planner invocation."""

    command: str
    mode: str
    seed: int
    success: bool
    path_cost: float | None
    node_count: int | None
    iterations: int | None
    wall_time_ms: float | None
    min_clearance_m: float | None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _emit_summary(summary: RunSummary, as_json: bool) -> None:
    if as_json:
        print(summary.to_json())
        return
    status = "ok" if summary.success else "failed"
    print(f"{summary.command} [{summary.mode}] seed={summary.seed}: {status}")
    if summary.path_cost is not None:
        print(f"  cost={summary.path_cost:.6f} nodes={summary.node_count} iterations={summary.iterations}")
    if summary.wall_time_ms is not None:
        print(f"  wall_time_ms={summary.wall_time_ms:.1f}")
    if summary.min_clearance_m is not None and math.isfinite(summary.min_clearance_m):
        print(f"  min_clearance_m={summary.min_clearance_m:.6f}")


def _load_scenario_arg(value: str) -> Scenario:
    if value == "demo":
        return demo_scenario()
    return load_scenario(value)


def _add_planner_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", required=True, help="scenario file or the built-in 'demo'")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-iterations", type=int, default=5000)
    parser.add_argument("--step-max", type=float, default=5.0)
    parser.add_argument("--collision-step", type=float, default=None,
                        help="edge discretization step (default: step-max / 10)")
    parser.add_argument("--wt", type=float, default=1.0, help="translation weight (1/m)")
    parser.add_argument("--wr", type=float, default=1.0, help="rotation weight (1/rad)")
    parser.add_argument("--goal-bias", type=float, default=0.05)
    parser.add_argument("--goal-tol-t", type=float, default=0.5)
    parser.add_argument("--goal-tol-r", type=float, default=0.05)
    parser.add_argument("--rewire-gamma", type=float, default=None,
                        help="neighborhood radius factor (default: 2x workspace diagonal)")
    parser.add_argument("--rotation-mode", choices=[ROTATION_FULL, ROTATION_TRANSLATION_ONLY],
                        default=ROTATION_FULL)
    parser.add_argument("--tree", action="store_true", help="include the tree snapshot in exports")
    parser.add_argument("--json", action="store_true", help="print a single JSON summary to stdout")


def _planner_config(args: argparse.Namespace, mode: str) -> PlannerConfig:
    collision_step = args.collision_step if args.collision_step is not None else args.step_max / 10.0
    return PlannerConfig(
        max_iterations=args.max_iterations,
        goal_bias=args.goal_bias,
        goal_tol_translation=args.goal_tol_t,
        goal_tol_rotation=args.goal_tol_r,
        rewire_gamma=args.rewire_gamma,
        step=SteerConfig(args.step_max, collision_step),
        weights=MetricWeights(args.wt, args.wr),
        seed=args.seed,
        mode=mode,
        rotation_mode=args.rotation_mode,
        include_tree=args.tree,
    )


def _min_clearance(path: PlannedPath, scenario: Scenario) -> float | None:
    report = validate_path(path, scenario.obstacles, refine=1)
    return report.min_clearance if math.isfinite(report.min_clearance) else None


def cmd_gen_scenario(args: argparse.Namespace) -> int:
    try:
        bounds = WorkspaceBounds(tuple(args.bounds_min), tuple(args.bounds_max))
        start = Pose(Quaternion(1.0, 0.0, 0.0, 0.0), tuple(args.start))
        goal_rotation = quat_from_axis_angle((0.0, 0.0, 1.0), args.goal_rotation_z)
        goal = Pose(goal_rotation, tuple(args.goal))
        if args.radius_min > args.radius_max:
            print("error: --radius-min exceeds --radius-max", file=sys.stderr)
            return EXIT_USAGE
        scenario = generate_scenario(
            seed=args.seed,
            count=args.count,
            bounds=bounds,
            radius_range=(args.radius_min, args.radius_max),
            start=start,
            goal=goal,
            name=args.name,
        )
    except (ValueError, DqplanError) as exc:
        if isinstance(exc, GenerationFailedError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    save_scenario(scenario, args.out)
    if args.json:
        print(json.dumps({
            "command": "gen-scenario",
            "out": str(args.out),
            "seed": args.seed,
            "count": len(scenario.obstacles.zones),
            "scenario_hash": scenario_hash(scenario),
        }, sort_keys=True))
    else:
        print(f"wrote {args.out} ({len(scenario.obstacles.zones)} zones, seed {args.seed})")
    return EXIT_OK


def _run_one_mode(scenario: Scenario, args: argparse.Namespace, mode: str,
                  out_file: str | None) -> tuple[PlannedPath | None, RunSummary]:
    cfg = _planner_config(args, mode)
    try:
        path = plan(scenario, cfg)
    except NoPathFoundError:
        summary = RunSummary(
            command="plan", mode=mode, seed=args.seed, success=False,
            path_cost=None, node_count=None, iterations=args.max_iterations,
            wall_time_ms=None, min_clearance_m=None,
        )
        return None, summary
    if out_file is not None:
        export_path(path, DEFAULT_EXPORT_RESOLUTION, out_file)
    summary = RunSummary(
        command="plan", mode=mode, seed=args.seed, success=True,
        path_cost=path.cost, node_count=path.nodes_in_tree,
        iterations=path.iterations_used, wall_time_ms=path.wall_time_ms,
        min_clearance_m=_min_clearance(path, scenario),
    )
    return path, summary


def cmd_plan(args: argparse.Namespace) -> int:
    try:
        scenario = _load_scenario_arg(args.scenario)
    except (ParseError, SchemaVersionMismatchError, DqplanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    mode = _CLI_MODES[args.mode]
    try:
        path, summary = _run_one_mode(scenario, args, mode, args.out)
    except InvalidScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit_summary(summary, args.json)
    return EXIT_OK if path is not None else EXIT_NO_PATH


def cmd_compare(args: argparse.Namespace) -> int:
    """Run both modes with one shared seed and configuration."""
    try:
        scenario = _load_scenario_arg(args.scenario)
    except (ParseError, SchemaVersionMismatchError, DqplanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    prefix = args.out
    results: dict[str, dict] = {}
    failed = False
    for mode in (MODE_DQ, MODE_SE3):
        suffix = "dq" if mode == MODE_DQ else "se3"
        out_file = f"{prefix}.{suffix}.path.json" if prefix else None
        try:
            path, summary = _run_one_mode(scenario, args, mode, out_file)
        except InvalidScenarioError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        if path is None:
            failed = True
            results[mode] = {"success": False}
            continue
        mean_inc, max_inc = rotation_increment_stats(
            densify_path(path, DEFAULT_EXPORT_RESOLUTION)
        )
        results[mode] = {
            "success": True,
            "cost": path.cost,
            "wall_time_ms": path.wall_time_ms,
            "nodes_in_tree": path.nodes_in_tree,
            "iterations_used": path.iterations_used,
            "rotation_increment_mean": mean_inc,
            "rotation_increment_max": max_inc,
            "min_clearance_m": summary.min_clearance_m,
            "path_file": out_file,
        }
    record = {
        "command": "compare",
        "seed": args.seed,
        "scenario_hash": scenario_hash(scenario),
        "scenario_name": scenario.name,
        "modes": results,
    }
    if prefix:
        with open(f"{prefix}.compare.json", "w", encoding="utf-8") as fh:
            json.dump(record, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        for mode, entry in results.items():
            if entry.get("success"):
                print(
                    f"{mode}: cost={entry['cost']:.6f} nodes={entry['nodes_in_tree']} "
                    f"wall_time_ms={entry['wall_time_ms']:.1f} "
                    f"rot_inc_mean={entry['rotation_increment_mean']:.6f} "
                    f"rot_inc_max={entry['rotation_increment_max']:.6f}"
                )
            else:
                print(f"{mode}: no path found")
    return EXIT_NO_PATH if failed else EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        export = load_path_export(args.path)
        scenario = _load_scenario_arg(args.scenario)
    except (ParseError, SchemaVersionMismatchError, DqplanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if scenario_hash(scenario) != export.scenario_hash:
        print("error: scenario hash does not match the one embedded in the path export",
              file=sys.stderr)
        return EXIT_INPUT
    report = validate_path(export.to_planned_path(), scenario.obstacles, refine=args.refine)
    payload = {
        "command": "validate",
        "passed": report.passed,
        "min_clearance_m": report.min_clearance if math.isfinite(report.min_clearance) else None,
        "samples_checked": report.samples_checked,
        "refine": args.refine,
        "violation": None,
    }
    if report.violation is not None:
        payload["violation"] = {
            "edge_index": report.violation.edge_index,
            "sample_index": report.violation.sample_index,
            "s": report.violation.s,
            "translation": list(report.violation.translation),
            "zone_index": report.violation.zone_index,
        }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        status = "pass" if report.passed else "FAIL"
        clearance_text = (
            f"{report.min_clearance:.6f}" if math.isfinite(report.min_clearance) else "inf"
        )
        print(f"validate: {status} (min clearance {clearance_text} m over "
              f"{report.samples_checked} samples)")
        if report.violation is not None:
            v = report.violation
            print(f"  first violation: edge {v.edge_index}, sample {v.sample_index}, "
                  f"s={v.s:.4f}, zone {v.zone_index}")
    return EXIT_OK if report.passed else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqplan",
        description="Plan collision-free 6-DOF pose paths with a dual-quaternion RRT*.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-scenario", help="generate a random scenario file")
    gen.add_argument("--out", required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--count", type=int, default=8)
    gen.add_argument("--radius-min", type=float, default=6.0)
    gen.add_argument("--radius-max", type=float, default=14.0)
    gen.add_argument("--bounds-min", type=float, nargs=3, default=[0.0, 0.0, 0.0],
                     metavar=("X", "Y", "Z"))
    gen.add_argument("--bounds-max", type=float, nargs=3, default=[100.0, 100.0, 100.0],
                     metavar=("X", "Y", "Z"))
    gen.add_argument("--start", type=float, nargs=3, default=[8.0, 8.0, 8.0],
                     metavar=("X", "Y", "Z"))
    gen.add_argument("--goal", type=float, nargs=3, default=[92.0, 92.0, 92.0],
                     metavar=("X", "Y", "Z"))
    gen.add_argument("--goal-rotation-z", type=float, default=0.0,
                     help="goal rotation about +z in radians (start stays identity)")
    gen.add_argument("--name", default="generated")
    gen.add_argument("--json", action="store_true")
    gen.set_defaults(func=cmd_gen_scenario)

    plan_cmd = sub.add_parser("plan", help="plan a path on a scenario")
    _add_planner_flags(plan_cmd)
    plan_cmd.add_argument("--mode", choices=sorted(_CLI_MODES), default="dq")
    plan_cmd.add_argument("--out", default=None, help="path export file to write")
    plan_cmd.set_defaults(func=cmd_plan)

    compare_cmd = sub.add_parser(
        "compare", help="run both modes with one shared seed and configuration"
    )
    _add_planner_flags(compare_cmd)
    compare_cmd.add_argument("--out", default=None,
                             help="prefix for <prefix>.{dq,se3}.path.json and <prefix>.compare.json")
    compare_cmd.set_defaults(func=cmd_compare)

    val = sub.add_parser("validate", help="re-check a path export against its scenario")
    val.add_argument("--path", required=True)
    val.add_argument("--scenario", required=True)
    val.add_argument("--refine", type=int, default=10)
    val.add_argument("--json", action="store_true")
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
