"""Keep-out-zone clearance checks for points, interpolated edges, and paths.

The chaser is treated as a point: only the translation component of a
pose is tested, with a strict inequality |t - c| > r per zone (touching a
sphere surface counts as a violation). Margins, if wanted, belong in the
zone radii of the scenario file.

``point_clear`` is the single clearance predicate in the package; the
edge checks and :func:`validate_path` apply it sample by sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Iterable

import numpy as np

from .dualquat import DualQuaternion, Pose, Vec3, dq_to_pose, dq_translation, sclerp_many
from .errors import EmptyPathError
from .posespace import MetricWeights, SteerConfig, pose_distance, pose_distance_se3

if TYPE_CHECKING:  # imported for annotations only; no runtime cycle
    from .planner import PlannedPath


@dataclass(frozen=True)
class KeepOutZone:
    """Spherical obstacle with center (m) and radius (m, > 0)."""

    center: Vec3
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0.0:
            raise ValueError(f"keep-out zone radius must be > 0, got {self.radius}")


@dataclass(frozen=True)
class ObstacleSet:
    """Ordered collection of keep-out zones; may be empty."""

    zones: tuple[KeepOutZone, ...]
    _centers: np.ndarray = field(init=False, repr=False, compare=False)
    _radii: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        zones = tuple(self.zones)
        object.__setattr__(self, "zones", zones)
        centers = np.array([z.center for z in zones], dtype=float).reshape(len(zones), 3)
        radii = np.array([z.radius for z in zones], dtype=float)
        centers.setflags(write=False)
        radii.setflags(write=False)
        object.__setattr__(self, "_centers", centers)
        object.__setattr__(self, "_radii", radii)

    def __len__(self) -> int:
        return len(self.zones)


EMPTY_OBSTACLES = ObstacleSet(())


def clearance(t: Vec3, obs: ObstacleSet) -> tuple[float, int]:
    """Signed clearance min_k(|t - c_k| - r_k) and the index of the nearest
    zone surface; (inf, -1) for an empty obstacle set."""
    if len(obs) == 0:
        return math.inf, -1
    diff = obs._centers - np.asarray(t, dtype=float)
    gaps = np.sqrt(np.einsum("ij,ij->i", diff, diff)) - obs._radii
    idx = int(np.argmin(gaps))
    return float(gaps[idx]), idx


def point_clear(t: Vec3, obs: ObstacleSet) -> bool:
    """True iff the strict inequality |t - c_k| > r_k holds for every zone."""
    if len(obs) == 0:
        return True
    return clearance(t, obs)[0] > 0.0


def edge_sample_count(distance: float, collision_step: float) -> int:
    """Number of interpolation intervals N for an edge; samples are i/N,
    i = 0..N, so an edge is always checked at N+1 >= 3 poses."""
    return max(2, math.ceil(distance / collision_step))


def _dq_edge_translations(a: DualQuaternion, b: DualQuaternion, params: Iterable[float]) -> list[Vec3]:
    return [dq_translation(q) for q in sclerp_many(a, b, params)]


def _se3_edge_translations(a: Pose, b: Pose, params: Iterable[float]) -> list[Vec3]:
    ta, tb = a.translation, b.translation
    return [
        (
            ta[0] + s * (tb[0] - ta[0]),
            ta[1] + s * (tb[1] - ta[1]),
            ta[2] + s * (tb[2] - ta[2]),
        )
        for s in params
    ]


def edge_clear_dq(
    a: DualQuaternion,
    b: DualQuaternion,
    obs: ObstacleSet,
    cfg: SteerConfig,
    w: MetricWeights,
) -> bool:
    """Check the screw path from a to b, discretized at the collision step."""
    n = edge_sample_count(pose_distance(a, b, w), cfg.collision_step)
    translations = _dq_edge_translations(a, b, [i / n for i in range(n + 1)])
    return all(point_clear(t, obs) for t in translations)


def edge_clear_se3(
    a: Pose,
    b: Pose,
    obs: ObstacleSet,
    cfg: SteerConfig,
    w: MetricWeights,
) -> bool:
    """Check the linear+SLERP path from a to b with the same sampling rule.

    Rotation does not affect clearance for a point chaser, so only the
    linearly interpolated translations are tested.
    """
    n = edge_sample_count(pose_distance_se3(a, b, w), cfg.collision_step)
    translations = _se3_edge_translations(a, b, [i / n for i in range(n + 1)])
    return all(point_clear(t, obs) for t in translations)


@dataclass(frozen=True)
class Violation:
    """Location of the first clearance violation found during validation."""

    edge_index: int
    sample_index: int
    s: float
    translation: Vec3
    zone_index: int


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    min_clearance: float
    violation: Violation | None
    samples_checked: int


def validate_path(path: "PlannedPath", obs: ObstacleSet, refine: int = 10) -> ValidationReport:
    """Re-check every edge of a planned path at a refined discretization.

    Each edge is re-sampled at ``refine`` times its planning-time sample
    count, so the planning-time samples are a subset of the validation
    samples and a violation seen at planning resolution cannot vanish
    under refinement.

    Args:
        path: planner output (carries its mode, weights, and steer config).
        obs: obstacle set to validate against.
        refine: discretization multiplier, >= 1.

    Raises:
        EmptyPathError: if the path has fewer than two poses.
    """
    if refine < 1:
        raise ValueError(f"refine must be >= 1, got {refine}")
    if len(path.poses) < 2:
        raise EmptyPathError(f"path has {len(path.poses)} pose(s); need at least 2")

    min_gap = math.inf
    violation: Violation | None = None
    samples_checked = 0
    for edge_index in range(len(path.poses) - 1):
        a = path.poses[edge_index]
        b = path.poses[edge_index + 1]
        n = refine * edge_sample_count(pose_distance(a, b, path.weights), path.step.collision_step)
        params = [i / n for i in range(n + 1)]
        if path.mode == "se3_baseline":
            translations = _se3_edge_translations(dq_to_pose(a), dq_to_pose(b), params)
        else:
            translations = _dq_edge_translations(a, b, params)
        for sample_index, t in enumerate(translations):
            samples_checked += 1
            gap, zone_index = clearance(t, obs)
            if gap < min_gap:
                min_gap = gap
            if violation is None and not gap > 0.0:
                violation = Violation(edge_index, sample_index, params[sample_index], t, zone_index)
    return ValidationReport(violation is None, min_gap, violation, samples_checked)


EdgeClearFn = Callable[[DualQuaternion, DualQuaternion], bool]
