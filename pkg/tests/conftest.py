"""Shared oracle helpers for the test suite.

The matrix oracles below are written from the standard closed forms, not
by calling the package, so the dual quaternion algebra is checked against
an independent representation of the same rigid motions.
"""

from __future__ import annotations

import math

import numpy as np

from dqplan import DualQuaternion, Pose, Quaternion, dq_from_pose


def quat_to_matrix(q: Quaternion) -> np.ndarray:
    """3x3 rotation matrix of a unit quaternion (independent oracle)."""
    w, x, y, z = q.w, q.x, q.y, q.z
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def pose_to_hmat(pose: Pose) -> np.ndarray:
    """4x4 homogeneous matrix of a pose (independent oracle)."""
    h = np.eye(4)
    h[:3, :3] = quat_to_matrix(pose.rotation)
    h[:3, 3] = pose.translation
    return h


def random_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return Quaternion(*v)


def random_pose(rng: np.random.Generator, extent: float = 10.0) -> Pose:
    return Pose(random_unit_quaternion(rng), tuple(rng.uniform(-extent, extent, size=3)))


def random_unit_dq(rng: np.random.Generator, extent: float = 10.0) -> DualQuaternion:
    return dq_from_pose(random_pose(rng, extent))


def perpendicular_unit(rng: np.random.Generator, k: tuple) -> tuple:
    """A unit vector perpendicular to k (via cross product, so the dot
    product is zero to machine precision)."""
    k = np.asarray(k)
    v = np.cross(rng.normal(size=3), k)
    n = np.linalg.norm(v)
    if n < 1e-6:
        return perpendicular_unit(rng, tuple(k))
    return tuple(v / n)


def angle_of_rotation(q: Quaternion) -> float:
    """Rotation angle of a unit quaternion in [0, pi]."""
    return 2.0 * math.atan2(math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z), abs(q.w))
