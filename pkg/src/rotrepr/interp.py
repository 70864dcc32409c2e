"""Interpolation between rotations (and Fisher parameter blending).

Six rotation-path families share one Interpolator front-end used by the
benchmark: slerp, nlerp, the matrix geodesic, linear blending of rotation
vectors, linear blending of 6D coordinates, and component-wise linear
Euler angles. fisher-blend interpolates the natural-parameter matrix of a
matrix Fisher distribution and exposes the mode path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .core import (
    EulerAngles,
    RotationMatrix,
    RotationVector,
    SixD,
    UnitQuaternion,
    wrap_angle,
)
from .compose import matrix_mul
from .convert import (
    euler_to_matrix,
    exp_map,
    log_map,
    matrix_to_euler,
    matrix_to_quat,
    matrix_to_sixd,
    quat_to_matrix,
    sixd_to_matrix,
)
from .errors import DegenerateInputError
from .probdist import MatrixFisher, fisher_mode

NLERP_FALLBACK = 0.001  # quaternion-sphere angle below which slerp -> nlerp


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def _hemisphere(q1: UnitQuaternion, q2: UnitQuaternion):
    """Negate q2 onto q1's hemisphere; returns (q2', dot >= 0)."""
    d = q1.dot(q2)
    if d < 0.0:
        return -q2, -d
    return q2, d


def _nlerp_pair(q1: UnitQuaternion, q2: UnitQuaternion, t: float) -> UnitQuaternion:
    if q1 == q2:
        return q1  # keep constant paths exactly constant
    w = (1.0 - t) * q1.w + t * q2.w
    x = (1.0 - t) * q1.x + t * q2.x
    y = (1.0 - t) * q1.y + t * q2.y
    z = (1.0 - t) * q1.z + t * q2.z
    n = math.sqrt(w * w + x * x + y * y + z * z)
    if n < 1e-15:
        raise DegenerateInputError(
            "nlerp blend vanished (exactly antipodal endpoints)")
    return UnitQuaternion(w / n, x / n, y / n, z / n)


def slerp(q1: UnitQuaternion, q2: UnitQuaternion, t: float) -> UnitQuaternion:
    """Constant-speed geodesic between unit quaternions.

    q2 is negated first when q1.q2 < 0 so the short arc is taken; below
    an arc of 0.001 rad on the quaternion sphere the sin weights are
    ill-conditioned and nlerp is returned instead (identical to slerp at
    that separation to well below 1e-12).
    """
    q2c, d = _hemisphere(q1, q2)
    d = _clamp(d, -1.0, 1.0)
    upsilon = math.acos(d)
    if upsilon < NLERP_FALLBACK:
        return _nlerp_pair(q1, q2c, t)
    s = math.sin(upsilon)
    w1 = math.sin((1.0 - t) * upsilon) / s
    w2 = math.sin(t * upsilon) / s
    out = UnitQuaternion(
        w1 * q1.w + w2 * q2c.w,
        w1 * q1.x + w2 * q2c.x,
        w1 * q1.y + w2 * q2c.y,
        w1 * q1.z + w2 * q2c.z,
    )
    n = out.norm()
    return UnitQuaternion(out.w / n, out.x / n, out.y / n, out.z / n)


def nlerp(q1: UnitQuaternion, q2: UnitQuaternion, t: float) -> UnitQuaternion:
    """Normalized linear blend on the hemisphere-corrected pair.

    Agrees with slerp to O(upsilon^3) (max deviation ~0.032 upsilon^3 rad
    in rotation space), hence indistinguishable at small separations.
    """
    q2c, _ = _hemisphere(q1, q2)
    return _nlerp_pair(q1, q2c, t)


def matrix_geodesic(r1: RotationMatrix, r2: RotationMatrix, t: float) -> RotationMatrix:
    """R(t) = R1 exp(t log(R1^T R2)): the shortest path on SO(3)."""
    rel = log_map(matrix_mul(r1.transpose(), r2))
    step = exp_map(RotationVector((rel.v[0] * t, rel.v[1] * t, rel.v[2] * t)))
    return matrix_mul(r1, step)


def linear_rotation_vector(v1: RotationVector, v2: RotationVector,
                           t: float) -> RotationMatrix:
    """exp of the affine blend (1-t) v1 + t v2; geodesic only when the
    endpoints' rotation vectors are parallel."""
    blend = RotationVector((
        (1.0 - t) * v1.v[0] + t * v2.v[0],
        (1.0 - t) * v1.v[1] + t * v2.v[1],
        (1.0 - t) * v1.v[2] + t * v2.v[2],
    ))
    return exp_map(blend)


def linear_sixd(s1: SixD, s2: SixD, t: float) -> RotationMatrix:
    """Affine blend of both 6D columns followed by Gram-Schmidt."""
    blend = SixD(
        ((1.0 - t) * s1.a1[0] + t * s2.a1[0],
         (1.0 - t) * s1.a1[1] + t * s2.a1[1],
         (1.0 - t) * s1.a1[2] + t * s2.a1[2]),
        ((1.0 - t) * s1.a2[0] + t * s2.a2[0],
         (1.0 - t) * s1.a2[1] + t * s2.a2[1],
         (1.0 - t) * s1.a2[2] + t * s2.a2[2]),
    )
    try:
        return sixd_to_matrix(blend)
    except DegenerateInputError as exc:
        raise DegenerateInputError(f"6D blend degenerate at t={t!r}: {exc}") from exc


def linear_euler(e1: EulerAngles, e2: EulerAngles, t: float) -> EulerAngles:
    """Component-wise linear ZYX/XYZ angles, each travelling its shorter
    arc. Not a geodesic; behaves badly near the gimbal band by design."""
    if e1.convention != e2.convention:
        raise DegenerateInputError("euler endpoints use different conventions")
    da = wrap_angle(e2.alpha - e1.alpha)
    db = wrap_angle(e2.beta - e1.beta)
    dg = wrap_angle(e2.gamma - e1.gamma)
    return EulerAngles(e1.alpha + t * da, e1.beta + t * db, e1.gamma + t * dg,
                       e1.convention)


def fisher_blend(f1: MatrixFisher, f2: MatrixFisher, t: float) -> MatrixFisher:
    """Affine blend of the natural-parameter matrices."""
    return MatrixFisher((1.0 - t) * f1.f + t * f2.f)


SLERP = "slerp"
NLERP = "nlerp"
MATRIX_GEODESIC = "matrix-geodesic"
LINEAR_ROTATION_VECTOR = "linear-rotation-vector"
LINEAR_SIXD = "linear-sixd"
LINEAR_EULER = "linear-euler"
FISHER_BLEND = "fisher-blend"

INTERPOLATION_METHODS = (SLERP, NLERP, MATRIX_GEODESIC, LINEAR_ROTATION_VECTOR,
                         LINEAR_SIXD, LINEAR_EULER, FISHER_BLEND)


@dataclass(frozen=True)
class Interpolator:
    """Uniform front-end over one interpolation family.

    eval(t) always yields a rotation matrix (for fisher-blend, the mode
    of the blended distribution); eval_native(t) yields the method's own
    representation. Endpoint evaluation is exact.
    """

    method: str
    start: Any = field(repr=False)
    end: Any = field(repr=False)

    def eval_native(self, t: float):
        if self.method == SLERP:
            return slerp(self.start, self.end, t)
        if self.method == NLERP:
            return nlerp(self.start, self.end, t)
        if self.method == MATRIX_GEODESIC:
            return matrix_geodesic(self.start, self.end, t)
        if self.method == LINEAR_ROTATION_VECTOR:
            return linear_rotation_vector(self.start, self.end, t)
        if self.method == LINEAR_SIXD:
            return linear_sixd(self.start, self.end, t)
        if self.method == LINEAR_EULER:
            return linear_euler(self.start, self.end, t)
        if self.method == FISHER_BLEND:
            return fisher_blend(self.start, self.end, t)
        raise DegenerateInputError(f"unknown interpolation method {self.method!r}")

    def eval(self, t: float) -> RotationMatrix:
        value = self.eval_native(t)
        if isinstance(value, RotationMatrix):
            return value
        if isinstance(value, UnitQuaternion):
            return quat_to_matrix(value)
        if isinstance(value, EulerAngles):
            return euler_to_matrix(value)
        if isinstance(value, MatrixFisher):
            return fisher_mode(value)
        raise DegenerateInputError(
            f"cannot map {type(value).__name__} to a rotation matrix")


def make_interpolator(method: str, start, end) -> Interpolator:
    """Build an Interpolator from rotation-matrix endpoints (or
    MatrixFisher endpoints for fisher-blend), converting to the method's
    native representation once up front."""
    if method == FISHER_BLEND:
        if not (isinstance(start, MatrixFisher) and isinstance(end, MatrixFisher)):
            raise DegenerateInputError(
                "fisher-blend endpoints must be MatrixFisher parameters")
        return Interpolator(method, start, end)
    if not (isinstance(start, RotationMatrix) and isinstance(end, RotationMatrix)):
        raise DegenerateInputError(
            f"{method} endpoints must be RotationMatrix values")
    if method in (SLERP, NLERP):
        return Interpolator(method, matrix_to_quat(start), matrix_to_quat(end))
    if method == MATRIX_GEODESIC:
        return Interpolator(method, start, end)
    if method == LINEAR_ROTATION_VECTOR:
        return Interpolator(method, log_map(start), log_map(end))
    if method == LINEAR_SIXD:
        return Interpolator(method, matrix_to_sixd(start), matrix_to_sixd(end))
    if method == LINEAR_EULER:
        return Interpolator(method, matrix_to_euler(start), matrix_to_euler(end))
    raise DegenerateInputError(f"unknown interpolation method {method!r}")
