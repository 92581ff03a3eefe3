"""Quaternion, dual quaternion, and screw-motion algebra.

Conventions used throughout the package:

* quaternions are scalar-first ``(w, x, y, z)``;
* a unit dual quaternion ``(real, dual)`` stores the rotation in its real
  part and the translation ``t`` through ``dual = 0.5 * [0, t] * real``;
* any rigid displacement is also a screw: a rotation ``theta`` about a
  line (direction ``k``, moment ``m = p x k`` for a point ``p`` on the
  line) plus a translation ``d`` along that same line (Chasles' theorem).

Every function here is pure and every value immutable, so the module is
safe to use from concurrent planner instances without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NearZeroNormError, NonUnitDualQuaternionError, NonUnitRotationError

Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by the algebra routines.

    Pass a modified instance to the routines that accept one to tighten or
    loosen the checks in a single place.
    """

    unit_norm: float = 1e-9            # unit-quaternion / unit-dq property checks
    near_zero_norm: float = 1e-12      # below this a quaternion cannot be normalized
    rotation_unit: float = 1e-6        # accepted input deviation for constructors
    dq_unit: float = 1e-6              # accepted input deviation for dq_to_pose
    screw_theta_eps: float = 1e-8      # below this the rotation angle counts as zero
    screw_translation_eps: float = 1e-12  # below this a zero-rotation dq is identity
    zero_step: float = 1e-12           # steering guard for coincident poses


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Scalar-first quaternion. Rotations are represented by unit norm."""

    w: float
    x: float
    y: float
    z: float


@dataclass(frozen=True, slots=True)
class DualQuaternion:
    """Unit dual quaternion: unit real part, dual part with real.dual = 0."""

    real: Quaternion
    dual: Quaternion


@dataclass(frozen=True, slots=True)
class Pose:
    """Rigid transformation as a unit rotation quaternion plus translation (m)."""

    rotation: Quaternion
    translation: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "translation", _as_vec3(self.translation))


@dataclass(frozen=True, slots=True)
class ScrewParameters:
    """Screw form of a displacement: rotate theta about a line, slide d along it.

    ``axis_direction`` is unit length whenever the screw is non-degenerate,
    ``axis_moment`` is perpendicular to it, ``theta`` lies in [0, pi] and
    ``pitch_d`` is the signed translation along the axis (m).
    """

    axis_direction: Vec3
    axis_moment: Vec3
    theta: float
    pitch_d: float

    def __post_init__(self) -> None:
        k = _as_vec3(self.axis_direction)
        m = _as_vec3(self.axis_moment)
        object.__setattr__(self, "axis_direction", k)
        object.__setattr__(self, "axis_moment", m)
        tol = DEFAULT_TOLERANCES
        if self.theta > tol.screw_theta_eps or abs(self.pitch_d) > tol.screw_translation_eps:
            if abs(_norm3(k) - 1.0) > 1e-9:
                raise ValueError("screw axis_direction must be unit length")
            if abs(_dot3(k, m)) > 1e-9:
                raise ValueError("screw axis_moment must be perpendicular to the axis")


IDENTITY_QUATERNION = Quaternion(1.0, 0.0, 0.0, 0.0)
ZERO_QUATERNION = Quaternion(0.0, 0.0, 0.0, 0.0)
IDENTITY_DQ = DualQuaternion(IDENTITY_QUATERNION, ZERO_QUATERNION)


def _as_vec3(v) -> Vec3:
    x, y, z = v
    return (float(x), float(y), float(z))


def _dot3(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _norm3(v: Vec3) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _sub3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _scale3(v: Vec3, c: float) -> Vec3:
    return (c * v[0], c * v[1], c * v[2])


# ---------------------------------------------------------------------------
# quaternion operations
# ---------------------------------------------------------------------------

def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product a*b."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def quat_conjugate(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def quat_dot(a: Quaternion, b: Quaternion) -> float:
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z


def quat_norm(q: Quaternion) -> float:
    return math.sqrt(quat_dot(q, q))


def quat_negate(q: Quaternion) -> Quaternion:
    return Quaternion(-q.w, -q.x, -q.y, -q.z)


def quat_scale(q: Quaternion, c: float) -> Quaternion:
    return Quaternion(c * q.w, c * q.x, c * q.y, c * q.z)


def quat_add(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion(a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z)


def quat_normalize(q: Quaternion, tol: Tolerances = DEFAULT_TOLERANCES) -> Quaternion:
    """Scale q to unit norm.

    Raises:
        NearZeroNormError: if the norm is at or below ``tol.near_zero_norm``.
    """
    n = quat_norm(q)
    if n <= tol.near_zero_norm:
        raise NearZeroNormError(f"cannot normalize quaternion with norm {n!r}")
    return Quaternion(q.w / n, q.x / n, q.y / n, q.z / n)


def quat_geodesic(a: Quaternion, b: Quaternion) -> float:
    """Geodesic distance arccos(|a.b|) in [0, pi/2], sign-invariant.

    Note this is half the relative rotation angle: a pi rotation between a
    and b yields pi/2. Evaluated through the chord length
    2 asin(min(|a-b|, |a+b|) / 2), which equals arccos(|a.b|) for unit
    inputs but stays exact where arccos loses precision (|a.b| near 1).
    """
    dw, dx, dy, dz = a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z
    sw, sx, sy, sz = a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z
    chord = math.sqrt(min(dw * dw + dx * dx + dy * dy + dz * dz,
                          sw * sw + sx * sx + sy * sy + sz * sz))
    return 2.0 * math.asin(min(1.0, 0.5 * chord))


def quat_rotate(q: Quaternion, v: Vec3) -> Vec3:
    """Rotate vector v by unit quaternion q (computes q [0,v] q*)."""
    p = quat_mul(quat_mul(q, Quaternion(0.0, v[0], v[1], v[2])), quat_conjugate(q))
    return (p.x, p.y, p.z)


def quat_from_axis_angle(axis: Vec3, angle: float) -> Quaternion:
    """Unit quaternion rotating by ``angle`` radians about a unit ``axis``."""
    half = 0.5 * angle
    s = math.sin(half)
    return Quaternion(math.cos(half), s * axis[0], s * axis[1], s * axis[2])


def slerp(a: Quaternion, b: Quaternion, s: float) -> Quaternion:
    """Spherical linear interpolation along the shortest great-circle arc.

    ``b`` is sign-flipped when a.b < 0 so the arc is the short one; for
    nearly parallel inputs the result falls back to normalized lerp.
    """
    dot = quat_dot(a, b)
    if dot < 0.0:
        b = quat_negate(b)
        dot = -dot
    if s == 0.0:
        return a
    if s == 1.0:
        return b
    if dot > 1.0 - 1e-10:
        blended = quat_add(quat_scale(a, 1.0 - s), quat_scale(b, s))
        return quat_normalize(blended)
    theta = math.acos(min(1.0, dot))
    sin_theta = math.sin(theta)
    ca = math.sin((1.0 - s) * theta) / sin_theta
    cb = math.sin(s * theta) / sin_theta
    return quat_add(quat_scale(a, ca), quat_scale(b, cb))


# ---------------------------------------------------------------------------
# dual quaternion operations
# ---------------------------------------------------------------------------

def dq_mul(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion:
    """Dual quaternion product (a_r b_r, a_r b_d + a_d b_r); composes poses."""
    return DualQuaternion(
        quat_mul(a.real, b.real),
        quat_add(quat_mul(a.real, b.dual), quat_mul(a.dual, b.real)),
    )


def dq_conjugate(q: DualQuaternion) -> DualQuaternion:
    """Quaternion-conjugate of both parts; the inverse for unit inputs."""
    return DualQuaternion(quat_conjugate(q.real), quat_conjugate(q.dual))


def dq_negate(q: DualQuaternion) -> DualQuaternion:
    return DualQuaternion(quat_negate(q.real), quat_negate(q.dual))


def dq_unit_error(q: DualQuaternion) -> tuple[float, float]:
    """Deviations from the two unit constraints: (|norm(real)-1|, |real.dual|)."""
    return abs(quat_norm(q.real) - 1.0), abs(quat_dot(q.real, q.dual))


def dq_from_pose(p: Pose, tol: Tolerances = DEFAULT_TOLERANCES) -> DualQuaternion:
    """Encode a pose: real = rotation, dual = 0.5 [0, t] * rotation.

    Raises:
        NonUnitRotationError: if the rotation norm deviates from 1 by more
            than ``tol.rotation_unit``.
    """
    err = abs(quat_norm(p.rotation) - 1.0)
    if err > tol.rotation_unit:
        raise NonUnitRotationError(f"pose rotation deviates from unit norm by {err:.3e}")
    t = p.translation
    dual = quat_scale(quat_mul(Quaternion(0.0, t[0], t[1], t[2]), p.rotation), 0.5)
    return DualQuaternion(p.rotation, dual)


def dq_translation(q: DualQuaternion) -> Vec3:
    """Translation encoded by q: vector part of 2 * dual * real^*."""
    p = quat_mul(q.dual, quat_conjugate(q.real))
    return (2.0 * p.x, 2.0 * p.y, 2.0 * p.z)


def dq_to_pose(q: DualQuaternion, tol: Tolerances = DEFAULT_TOLERANCES) -> Pose:
    """Decode a unit dual quaternion back to (rotation, translation).

    The rotation quaternion is returned as stored; q and -q decode to the
    same rigid transformation (rotation equal up to sign).

    Raises:
        NonUnitDualQuaternionError: if either unit constraint is violated
            by more than ``tol.dq_unit``.
    """
    norm_err, dot_err = dq_unit_error(q)
    if norm_err > tol.dq_unit or dot_err > tol.dq_unit:
        raise NonUnitDualQuaternionError(
            f"unit constraints violated: |norm-1|={norm_err:.3e}, |real.dual|={dot_err:.3e}"
        )
    return Pose(q.real, dq_translation(q))


def dq_from_rotation_translation(rotation: Quaternion, translation) -> DualQuaternion:
    """Shorthand for dq_from_pose(Pose(rotation, translation))."""
    return dq_from_pose(Pose(rotation, translation))


# ---------------------------------------------------------------------------
# screw form
# ---------------------------------------------------------------------------

def screw_decompose(q: DualQuaternion, tol: Tolerances = DEFAULT_TOLERANCES) -> ScrewParameters:
    """Extract (axis, moment, theta, d) from a unit dual quaternion.

    The input sign is canonicalized (real.w >= 0) before extraction so the
    returned angle lies in [0, pi]: of the two dual quaternions encoding
    the displacement, the one describing the shorter screw is used.

    Degenerate branches: a near-zero rotation with near-zero translation
    yields the identity screw (axis (0,0,1) by convention); a near-zero
    rotation with finite translation yields a pure-translation screw along
    the displacement.
    """
    if q.real.w < 0.0:
        q = dq_negate(q)
    w = q.real.w
    v: Vec3 = (q.real.x, q.real.y, q.real.z)
    sin_half = _norm3(v)
    theta = 2.0 * math.atan2(sin_half, w)
    if theta < tol.screw_theta_eps:
        t = dq_translation(q)
        t_norm = _norm3(t)
        if t_norm < tol.screw_translation_eps:
            return ScrewParameters((0.0, 0.0, 1.0), (0.0, 0.0, 0.0), 0.0, 0.0)
        return ScrewParameters(_scale3(t, 1.0 / t_norm), (0.0, 0.0, 0.0), 0.0, t_norm)
    k = _scale3(v, 1.0 / sin_half)
    d = -2.0 * q.dual.w / sin_half
    vd: Vec3 = (q.dual.x, q.dual.y, q.dual.z)
    half_d_cos = 0.5 * d * w
    m = (
        (vd[0] - half_d_cos * k[0]) / sin_half,
        (vd[1] - half_d_cos * k[1]) / sin_half,
        (vd[2] - half_d_cos * k[2]) / sin_half,
    )
    return ScrewParameters(k, m, theta, d)


def screw_compose(s: ScrewParameters) -> DualQuaternion:
    """Build the unit dual quaternion cos(theta_hat/2) + k_hat sin(theta_hat/2).

    Expands the dual angle theta_hat = theta + eps*d and dual axis
    k_hat = k + eps*m into real and dual quaternion parts.
    """
    half_theta = 0.5 * s.theta
    half_d = 0.5 * s.pitch_d
    c = math.cos(half_theta)
    sn = math.sin(half_theta)
    k = s.axis_direction
    m = s.axis_moment
    real = Quaternion(c, sn * k[0], sn * k[1], sn * k[2])
    dual = Quaternion(
        -half_d * sn,
        m[0] * sn + half_d * c * k[0],
        m[1] * sn + half_d * c * k[1],
        m[2] * sn + half_d * c * k[2],
    )
    return DualQuaternion(real, dual)


def dq_pow(q: DualQuaternion, s: float, tol: Tolerances = DEFAULT_TOLERANCES) -> DualQuaternion:
    """Screw power q^s: scale the screw angle and pitch by s, recompose.

    Computed through decomposition rather than a series expansion, which
    stays exact for pure translations and well conditioned near theta = 0
    and theta = pi.
    """
    screw = screw_decompose(q, tol)
    return screw_compose(
        ScrewParameters(screw.axis_direction, screw.axis_moment, s * screw.theta, s * screw.pitch_d)
    )


def sclerp(q1: DualQuaternion, q2: DualQuaternion, s: float) -> DualQuaternion:
    """Screw linear interpolation q1 * (q1^-1 q2)^s.

    Traces the constant-screw motion between the poses; endpoints are
    reproduced exactly up to dual quaternion sign.
    """
    rel = dq_mul(dq_conjugate(q1), q2)
    return dq_mul(q1, dq_pow(rel, s))


def sclerp_many(q1: DualQuaternion, q2: DualQuaternion, params) -> list[DualQuaternion]:
    """sclerp at several interpolation parameters, decomposing the screw once.

    Bitwise identical to calling :func:`sclerp` per parameter.
    """
    rel = dq_mul(dq_conjugate(q1), q2)
    screw = screw_decompose(rel)
    out = []
    for s in params:
        step = screw_compose(
            ScrewParameters(screw.axis_direction, screw.axis_moment, s * screw.theta, s * screw.pitch_d)
        )
        out.append(dq_mul(q1, step))
    return out
