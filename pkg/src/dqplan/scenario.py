"""Scenario definition, deterministic generation, and JSON serialization.

Two file kinds are produced, both UTF-8 JSON with ``schema_version: 1``
(documented in docs/formats.md):

* ``*.scenario.json`` — bounds, start/goal poses, keep-out zones;
* ``*.path.json`` — a planned path densified per edge, with the scenario
  obstacles embedded and an optional tree snapshot.

Quaternions serialize as ``[w, x, y, z]`` and dual quaternions as the
real part followed by the dual part. Floats are written with Python's
shortest exact decimal representation, so every round trip is lossless.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path as FilePath

from .collision import KeepOutZone, ObstacleSet, point_clear
from .dualquat import (
    DualQuaternion,
    Pose,
    Quaternion,
    Vec3,
    dq_from_pose,
    dq_to_pose,
    dq_translation,
    quat_from_axis_angle,
    quat_geodesic,
    sclerp_many,
    slerp,
)
from .errors import (
    GenerationFailedError,
    InvalidScenarioError,
    ParseError,
    SchemaVersionMismatchError,
)
from .planner import MODE_SE3, PlannedPath
from .posespace import MetricWeights, SteerConfig, WorkspaceBounds
from .rng import RngStream

SCHEMA_VERSION = 1
ENDPOINT_MARGIN = 1.0  # extra clearance (m) kept around start/goal during generation
DEFAULT_EXPORT_RESOLUTION = 10


@dataclass(frozen=True)
class Scenario:
    """A planning problem: workspace, endpoints, obstacles, and provenance.

    Structural validity (types, radii > 0) is enforced on construction;
    endpoint clearance and containment are checked by
    :meth:`require_valid`, which the planner calls, so deliberately broken
    scenarios can still be built for testing.
    """

    bounds: WorkspaceBounds
    start: Pose
    goal: Pose
    obstacles: ObstacleSet
    name: str = "unnamed"
    obstacle_seed: int | None = None

    def require_valid(self) -> None:
        """Raise InvalidScenarioError unless both endpoints are inside the
        bounds and strictly clear of every keep-out zone."""
        for label, pose in (("start", self.start), ("goal", self.goal)):
            if not self.bounds.contains(pose.translation):
                raise InvalidScenarioError(f"{label} translation {pose.translation} outside bounds")
            if not point_clear(pose.translation, self.obstacles):
                raise InvalidScenarioError(f"{label} translation {pose.translation} violates a keep-out zone")


def generate_scenario(
    seed: int,
    count: int,
    bounds: WorkspaceBounds,
    radius_range: tuple[float, float],
    start: Pose,
    goal: Pose,
    name: str = "generated",
) -> Scenario:
    """Place ``count`` spheres uniformly in the bounds, radii uniform in
    ``radius_range``, re-drawing any sphere that comes within its radius
    plus a 1 m margin of the start or goal translation.

    Deterministic in ``seed``: each attempt consumes exactly four draws
    (center x, y, z, then radius).

    Raises:
        GenerationFailedError: if a sphere cannot be placed in 1000 attempts.
        InvalidScenarioError: if start or goal lies outside the bounds.
        ValueError: for a negative count or an invalid radius range.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    lo_r, hi_r = float(radius_range[0]), float(radius_range[1])
    if not 0.0 < lo_r <= hi_r:
        raise ValueError(f"invalid radius range ({lo_r}, {hi_r})")
    for label, pose in (("start", start), ("goal", goal)):
        if not bounds.contains(pose.translation):
            raise InvalidScenarioError(f"{label} translation {pose.translation} outside bounds")

    rng = RngStream(seed)
    zones: list[KeepOutZone] = []
    for index in range(count):
        for _ in range(1000):
            cx = rng.uniform_in(bounds.min_corner[0], bounds.max_corner[0])
            cy = rng.uniform_in(bounds.min_corner[1], bounds.max_corner[1])
            cz = rng.uniform_in(bounds.min_corner[2], bounds.max_corner[2])
            radius = rng.uniform_in(lo_r, hi_r)
            center = (cx, cy, cz)
            keep_out = radius + ENDPOINT_MARGIN
            if math.dist(center, start.translation) <= keep_out:
                continue
            if math.dist(center, goal.translation) <= keep_out:
                continue
            zones.append(KeepOutZone(center, radius))
            break
        else:
            raise GenerationFailedError(
                f"could not place sphere {index} clear of the endpoints in 1000 attempts"
            )
    scenario = Scenario(bounds, start, goal, ObstacleSet(tuple(zones)), name, int(seed))
    scenario.require_valid()
    return scenario


def demo_scenario() -> Scenario:
    """The built-in comparison scenario: identity start orientation, goal
    rotated pi/2 about z, eight seeded spheres in a 100 m cube."""
    bounds = WorkspaceBounds((0.0, 0.0, 0.0), (100.0, 100.0, 100.0))
    start = Pose(Quaternion(1.0, 0.0, 0.0, 0.0), (8.0, 8.0, 8.0))
    goal = Pose(quat_from_axis_angle((0.0, 0.0, 1.0), math.pi / 2.0), (92.0, 92.0, 92.0))
    return generate_scenario(
        seed=42,
        count=8,
        bounds=bounds,
        radius_range=(6.0, 14.0),
        start=start,
        goal=goal,
        name="demo",
    )


# ---------------------------------------------------------------------------
# dict <-> dataclass conversion
# ---------------------------------------------------------------------------

def _quat_list(q: Quaternion) -> list[float]:
    return [q.w, q.x, q.y, q.z]


def _dq_list(q: DualQuaternion) -> list[float]:
    return _quat_list(q.real) + _quat_list(q.dual)


def _pose_dict(p: Pose) -> dict:
    return {"rotation": _quat_list(p.rotation), "translation": list(p.translation)}


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "scenario",
        "name": s.name,
        "bounds": {
            "min_corner": list(s.bounds.min_corner),
            "max_corner": list(s.bounds.max_corner),
        },
        "start": _pose_dict(s.start),
        "goal": _pose_dict(s.goal),
        "obstacles": [{"center": list(z.center), "radius": z.radius} for z in s.obstacles.zones],
        "obstacle_seed": s.obstacle_seed,
    }


def scenario_hash(s: Scenario) -> str:
    """SHA-256 over the canonical (sorted, compact) scenario JSON."""
    canonical = json.dumps(scenario_to_dict(s), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ParseError(f"{where}: missing required field {key!r}")
    return mapping[key]


def _vec3_from(value, where: str) -> Vec3:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ParseError(f"{where}: expected a 3-element array")
    try:
        return tuple(float(v) for v in value)  # type: ignore[return-value]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: non-numeric component ({exc})") from exc


def _quat_from(value, where: str) -> Quaternion:
    if not isinstance(value, (list, tuple)) or len(value) != 4:
        raise ParseError(f"{where}: expected a 4-element [w, x, y, z] array")
    try:
        return Quaternion(*(float(v) for v in value))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: non-numeric component ({exc})") from exc


def _pose_from(value, where: str) -> Pose:
    if not isinstance(value, dict):
        raise ParseError(f"{where}: expected an object")
    return Pose(
        _quat_from(_require(value, "rotation", where), f"{where}.rotation"),
        _vec3_from(_require(value, "translation", where), f"{where}.translation"),
    )


def _check_schema_version(data: dict, where: str) -> None:
    version = _require(data, "schema_version", where)
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatchError(
            f"{where}: schema_version {version!r} unsupported (expected {SCHEMA_VERSION})"
        )


def _obstacles_from(value, where: str) -> ObstacleSet:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected an array of zones")
    zones = []
    for i, entry in enumerate(value):
        zone_where = f"{where}[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{zone_where}: expected an object")
        center = _vec3_from(_require(entry, "center", zone_where), f"{zone_where}.center")
        radius = _require(entry, "radius", zone_where)
        try:
            zones.append(KeepOutZone(center, radius))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{zone_where}: {exc}") from exc
    return ObstacleSet(tuple(zones))


def scenario_from_dict(data: dict) -> Scenario:
    where = "scenario"
    _check_schema_version(data, where)
    if data.get("kind") != "scenario":
        raise ParseError(f"{where}: kind must be 'scenario', got {data.get('kind')!r}")
    bounds_data = _require(data, "bounds", where)
    bounds = WorkspaceBounds(
        _vec3_from(_require(bounds_data, "min_corner", "bounds"), "bounds.min_corner"),
        _vec3_from(_require(bounds_data, "max_corner", "bounds"), "bounds.max_corner"),
    )
    seed = data.get("obstacle_seed")
    if seed is not None and not isinstance(seed, int):
        raise ParseError("scenario.obstacle_seed: expected an integer or null")
    return Scenario(
        bounds=bounds,
        start=_pose_from(_require(data, "start", where), "start"),
        goal=_pose_from(_require(data, "goal", where), "goal"),
        obstacles=_obstacles_from(_require(data, "obstacles", where), "obstacles"),
        name=str(data.get("name", "unnamed")),
        obstacle_seed=seed,
    )


def _load_json(source) -> dict:
    path = FilePath(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return data


def save_scenario(s: Scenario, destination) -> None:
    FilePath(destination).write_text(
        json.dumps(scenario_to_dict(s), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_scenario(source) -> Scenario:
    return scenario_from_dict(_load_json(source))


# ---------------------------------------------------------------------------
# path export
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathSample:
    """One densified sample of an exported path."""

    sample_index: int
    edge_index: int
    s: float
    translation: Vec3
    rotation: Quaternion
    dual_quaternion: DualQuaternion


def densify_path(path: PlannedPath, resolution: int) -> list[PathSample]:
    """Interpolate every edge with the path's own steering interpolant.

    Each edge contributes ``resolution`` samples at s = j/resolution,
    j = 0..resolution-1; the stored final pose closes the list, for a
    total of ``resolution * num_edges + 1`` samples.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    samples: list[PathSample] = []
    params = [j / resolution for j in range(resolution)]
    for edge_index in range(len(path.poses) - 1):
        a = path.poses[edge_index]
        b = path.poses[edge_index + 1]
        if path.mode == MODE_SE3:
            pose_a, pose_b = dq_to_pose(a), dq_to_pose(b)
            ta, tb = pose_a.translation, pose_b.translation
            qs = []
            for s in params:
                translation = (
                    ta[0] + s * (tb[0] - ta[0]),
                    ta[1] + s * (tb[1] - ta[1]),
                    ta[2] + s * (tb[2] - ta[2]),
                )
                qs.append(dq_from_pose(Pose(slerp(pose_a.rotation, pose_b.rotation, s), translation)))
        else:
            qs = sclerp_many(a, b, params)
        for s, q in zip(params, qs):
            pose = dq_to_pose(q)
            samples.append(
                PathSample(len(samples), edge_index, s, pose.translation, pose.rotation, q)
            )
    final = path.poses[-1]
    final_pose = dq_to_pose(final)
    samples.append(
        PathSample(
            len(samples),
            max(0, len(path.poses) - 2),
            1.0,
            final_pose.translation,
            final_pose.rotation,
            final,
        )
    )
    return samples


def rotation_increment_stats(samples: list[PathSample]) -> tuple[float, float]:
    """(mean, max) of the quaternion geodesic between consecutive samples."""
    if len(samples) < 2:
        return 0.0, 0.0
    increments = [
        quat_geodesic(a.rotation, b.rotation) for a, b in zip(samples, samples[1:])
    ]
    return sum(increments) / len(increments), max(increments)


def path_export_dict(path: PlannedPath, resolution: int = DEFAULT_EXPORT_RESOLUTION) -> dict:
    """Build the export document for a planned path (schema_version 1)."""
    if path.scenario is None:
        raise ValueError("path carries no scenario; cannot embed obstacles")
    samples = densify_path(path, resolution)
    tree_edges = None
    if path.tree_snapshot is not None:
        translations = [dq_translation(dq) for dq, _parent in path.tree_snapshot]
        tree_edges = [
            {
                "parent_translation": list(translations[parent]),
                "child_translation": list(translations[child]),
            }
            for child, (_dq, parent) in enumerate(path.tree_snapshot)
            if parent is not None
        ]
    scenario = path.scenario
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "path",
        "mode": path.mode,
        "rotation_mode": path.rotation_mode,
        "seed": path.seed,
        "scenario_name": scenario.name,
        "scenario_hash": scenario_hash(scenario),
        "bounds": {
            "min_corner": list(scenario.bounds.min_corner),
            "max_corner": list(scenario.bounds.max_corner),
        },
        "obstacles": [
            {"center": list(z.center), "radius": z.radius} for z in scenario.obstacles.zones
        ],
        "weights": {"w_t": path.weights.w_t, "w_r": path.weights.w_r},
        "steer": {"step_max": path.step.step_max, "collision_step": path.step.collision_step},
        "resolution": resolution,
        "cost": path.cost,
        "iterations_used": path.iterations_used,
        "nodes_in_tree": path.nodes_in_tree,
        "best_cost_trace": [[it, cost] for it, cost in path.best_cost_trace],
        "edge_rotation_angles": list(path.edge_rotation_angles),
        "waypoints": [
            {
                "rotation": _quat_list(dq.real),
                "translation": list(dq_to_pose(dq).translation),
                "dual_quaternion": _dq_list(dq),
            }
            for dq in path.poses
        ],
        "samples": [
            {
                "sample_index": smp.sample_index,
                "edge_index": smp.edge_index,
                "s": smp.s,
                "translation": list(smp.translation),
                "rotation": _quat_list(smp.rotation),
                "dual_quaternion": _dq_list(smp.dual_quaternion),
            }
            for smp in samples
        ],
        "tree": tree_edges,
    }


def export_path(
    path: PlannedPath,
    resolution: int = DEFAULT_EXPORT_RESOLUTION,
    destination=None,
) -> None:
    """Write the path export JSON to ``destination``."""
    if destination is None:
        raise ValueError("destination is required")
    doc = path_export_dict(path, resolution)
    FilePath(destination).write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


@dataclass(frozen=True)
class PathExport:
    """Parsed contents of a ``*.path.json`` file (see docs/formats.md)."""

    mode: str
    rotation_mode: str
    seed: int
    scenario_name: str
    scenario_hash: str
    bounds: WorkspaceBounds
    obstacles: ObstacleSet
    weights: dict
    steer: dict
    resolution: int
    cost: float
    iterations_used: int
    nodes_in_tree: int
    best_cost_trace: tuple[tuple[int, float], ...]
    edge_rotation_angles: tuple[float, ...]
    waypoints: tuple[DualQuaternion, ...]
    samples: tuple[PathSample, ...]
    tree: tuple[tuple[Vec3, Vec3], ...] | None

    def to_planned_path(self) -> PlannedPath:
        """Rebuild a PlannedPath (without scenario) for re-validation."""
        return PlannedPath(
            poses=self.waypoints,
            cost=self.cost,
            iterations_used=self.iterations_used,
            nodes_in_tree=self.nodes_in_tree,
            best_cost_trace=self.best_cost_trace,
            mode=self.mode,
            rotation_mode=self.rotation_mode,
            weights=MetricWeights(self.weights["w_t"], self.weights["w_r"]),
            step=SteerConfig(self.steer["step_max"], self.steer["collision_step"]),
            seed=self.seed,
        )


def _dq_from_list(value, where: str) -> DualQuaternion:
    if not isinstance(value, (list, tuple)) or len(value) != 8:
        raise ParseError(f"{where}: expected 8 scalars (real then dual part)")
    return DualQuaternion(
        _quat_from(value[:4], f"{where}[:4]"), _quat_from(value[4:], f"{where}[4:]")
    )


def load_path_export(source) -> PathExport:
    data = _load_json(source)
    where = "path"
    _check_schema_version(data, where)
    if data.get("kind") != "path":
        raise ParseError(f"{where}: kind must be 'path', got {data.get('kind')!r}")
    bounds_data = _require(data, "bounds", where)
    bounds = WorkspaceBounds(
        _vec3_from(_require(bounds_data, "min_corner", "bounds"), "bounds.min_corner"),
        _vec3_from(_require(bounds_data, "max_corner", "bounds"), "bounds.max_corner"),
    )
    samples = []
    for i, entry in enumerate(_require(data, "samples", where)):
        sample_where = f"samples[{i}]"
        samples.append(
            PathSample(
                sample_index=int(_require(entry, "sample_index", sample_where)),
                edge_index=int(_require(entry, "edge_index", sample_where)),
                s=float(_require(entry, "s", sample_where)),
                translation=_vec3_from(_require(entry, "translation", sample_where), sample_where),
                rotation=_quat_from(_require(entry, "rotation", sample_where), sample_where),
                dual_quaternion=_dq_from_list(
                    _require(entry, "dual_quaternion", sample_where), sample_where
                ),
            )
        )
    waypoints = tuple(
        _dq_from_list(_require(entry, "dual_quaternion", f"waypoints[{i}]"), f"waypoints[{i}]")
        for i, entry in enumerate(_require(data, "waypoints", where))
    )
    tree_data = data.get("tree")
    tree = None
    if tree_data is not None:
        tree = tuple(
            (
                _vec3_from(_require(entry, "parent_translation", f"tree[{i}]"), f"tree[{i}]"),
                _vec3_from(_require(entry, "child_translation", f"tree[{i}]"), f"tree[{i}]"),
            )
            for i, entry in enumerate(tree_data)
        )
    return PathExport(
        mode=str(_require(data, "mode", where)),
        rotation_mode=str(_require(data, "rotation_mode", where)),
        seed=int(_require(data, "seed", where)),
        scenario_name=str(data.get("scenario_name", "unnamed")),
        scenario_hash=str(_require(data, "scenario_hash", where)),
        bounds=bounds,
        obstacles=_obstacles_from(_require(data, "obstacles", where), "obstacles"),
        weights=_require(data, "weights", where),
        steer=_require(data, "steer", where),
        resolution=int(_require(data, "resolution", where)),
        cost=float(_require(data, "cost", where)),
        iterations_used=int(_require(data, "iterations_used", where)),
        nodes_in_tree=int(_require(data, "nodes_in_tree", where)),
        best_cost_trace=tuple(
            (int(it), float(c)) for it, c in _require(data, "best_cost_trace", where)
        ),
        edge_rotation_angles=tuple(
            float(v) for v in _require(data, "edge_rotation_angles", where)
        ),
        waypoints=waypoints,
        samples=tuple(samples),
        tree=tree,
    )
