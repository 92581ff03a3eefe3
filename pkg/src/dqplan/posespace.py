"""Pose sampling, the weighted pose metric, and the two steering laws.

The metric is ``w_t * |t_a - t_b| + w_r * arccos(|q_a . q_b|)``. Note the
rotation term is the quaternion geodesic, i.e. half the relative rotation
angle, so ``w_r`` weights half-angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dualquat import (
    DEFAULT_TOLERANCES,
    DualQuaternion,
    IDENTITY_QUATERNION,
    Pose,
    Quaternion,
    Vec3,
    dq_from_pose,
    dq_translation,
    quat_geodesic,
    sclerp,
    slerp,
)
from .errors import InvalidBoundsError
from .rng import RngStream

ROTATION_FULL = "full"
ROTATION_TRANSLATION_ONLY = "translation-only"
ROTATION_MODES = (ROTATION_FULL, ROTATION_TRANSLATION_ONLY)


@dataclass(frozen=True)
class WorkspaceBounds:
    """Axis-aligned translation bounds; a zero extent per axis is allowed
    (that is how planar scenarios are configured)."""

    min_corner: Vec3
    max_corner: Vec3

    def __post_init__(self) -> None:
        lo = tuple(float(v) for v in self.min_corner)
        hi = tuple(float(v) for v in self.max_corner)
        object.__setattr__(self, "min_corner", lo)
        object.__setattr__(self, "max_corner", hi)
        for axis in range(3):
            if lo[axis] > hi[axis]:
                raise InvalidBoundsError(
                    f"min_corner[{axis}]={lo[axis]} exceeds max_corner[{axis}]={hi[axis]}"
                )

    def contains(self, t: Vec3) -> bool:
        return all(self.min_corner[i] <= t[i] <= self.max_corner[i] for i in range(3))

    def diagonal(self) -> float:
        return math.dist(self.min_corner, self.max_corner)


@dataclass(frozen=True)
class MetricWeights:
    """Translation weight (1/m) and rotation weight (1/rad); w_r = 0 gives
    translation-only planning distances."""

    w_t: float = 1.0
    w_r: float = 1.0

    def __post_init__(self) -> None:
        if not self.w_t > 0.0:
            raise ValueError(f"w_t must be > 0, got {self.w_t}")
        if self.w_r < 0.0:
            raise ValueError(f"w_r must be >= 0, got {self.w_r}")


@dataclass(frozen=True)
class SteerConfig:
    """Maximum extension per steer and the edge-discretization step, both in
    metric units."""

    step_max: float
    collision_step: float

    def __post_init__(self) -> None:
        if not 0.0 < self.collision_step <= self.step_max:
            raise ValueError(
                f"need 0 < collision_step <= step_max, got {self.collision_step} / {self.step_max}"
            )


def pose_distance(a: DualQuaternion, b: DualQuaternion, w: MetricWeights) -> float:
    """Weighted translation distance plus quaternion geodesic between poses."""
    ta = dq_translation(a)
    tb = dq_translation(b)
    return w.w_t * math.dist(ta, tb) + w.w_r * quat_geodesic(a.real, b.real)


def pose_distance_se3(a: Pose, b: Pose, w: MetricWeights) -> float:
    """Same metric evaluated directly on poses (baseline steering path)."""
    return w.w_t * math.dist(a.translation, b.translation) + w.w_r * quat_geodesic(
        a.rotation, b.rotation
    )


def random_rotation(rng: RngStream) -> Quaternion:
    """Uniform rotation from three uniform draws (subgroup algorithm).

    Draw order is u1, u2, u3; the quaternion is
    (sqrt(u1) cos 2*pi*u3, sqrt(1-u1) sin 2*pi*u2,
     sqrt(1-u1) cos 2*pi*u2, sqrt(u1) sin 2*pi*u3)
    in (w, x, y, z) order. Both hemispheres of the unit sphere are
    produced, which keeps the distribution exactly uniform on rotations.
    """
    u1 = rng.uniform()
    u2 = rng.uniform()
    u3 = rng.uniform()
    a = math.sqrt(1.0 - u1)
    b = math.sqrt(u1)
    ang1 = 2.0 * math.pi * u2
    ang2 = 2.0 * math.pi * u3
    return Quaternion(b * math.cos(ang2), a * math.sin(ang1), a * math.cos(ang1), b * math.sin(ang2))


def sample_pose(bounds: WorkspaceBounds, rng: RngStream, rotation_mode: str = ROTATION_FULL) -> DualQuaternion:
    """Sample a pose: translation uniform in bounds, rotation uniform on
    SO(3) (or identity in translation-only mode).

    Consumes exactly three draws for the translation, plus three more for
    the rotation in full mode.
    """
    if rotation_mode not in ROTATION_MODES:
        raise ValueError(f"unknown rotation_mode {rotation_mode!r}")
    tx = rng.uniform_in(bounds.min_corner[0], bounds.max_corner[0])
    ty = rng.uniform_in(bounds.min_corner[1], bounds.max_corner[1])
    tz = rng.uniform_in(bounds.min_corner[2], bounds.max_corner[2])
    if rotation_mode == ROTATION_FULL:
        rot = random_rotation(rng)
    else:
        rot = IDENTITY_QUATERNION
    return dq_from_pose(Pose(rot, (tx, ty, tz)))


def steer_dq(
    near: DualQuaternion,
    rand: DualQuaternion,
    w: MetricWeights,
    cfg: SteerConfig,
) -> DualQuaternion:
    """Advance from ``near`` toward ``rand`` along their connecting screw.

    The step fraction starts at min(1, step_max / distance). Because the
    translation of a screw is a helix, its chord can exceed the linear
    scaling of the step fraction; the fraction is then contracted until
    the result lies within step_max of ``near`` in the metric.
    """
    d = pose_distance(near, rand, w)
    if d < DEFAULT_TOLERANCES.zero_step:
        return near
    alpha = min(1.0, cfg.step_max / d)
    if alpha >= 1.0:
        return rand
    new = sclerp(near, rand, alpha)
    dist = pose_distance(near, new, w)
    for _ in range(64):
        if dist <= cfg.step_max + 1e-12:
            break
        alpha *= cfg.step_max / dist
        new = sclerp(near, rand, alpha)
        dist = pose_distance(near, new, w)
    return new


def steer_se3(near: Pose, rand: Pose, w: MetricWeights, cfg: SteerConfig) -> Pose:
    """Baseline steering: linear translation plus SLERP rotation.

    Uses the same step fraction rule as the screw steering; both metric
    terms scale linearly here, so no contraction is needed.
    """
    d = pose_distance_se3(near, rand, w)
    if d < DEFAULT_TOLERANCES.zero_step:
        return near
    alpha = min(1.0, cfg.step_max / d)
    if alpha >= 1.0:
        return rand
    t_near = near.translation
    t_rand = rand.translation
    translation = (
        t_near[0] + alpha * (t_rand[0] - t_near[0]),
        t_near[1] + alpha * (t_rand[1] - t_near[1]),
        t_near[2] + alpha * (t_rand[2] - t_near[2]),
    )
    return Pose(slerp(near.rotation, rand.rotation, alpha), translation)
