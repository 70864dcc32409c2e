"""Composition, inversion, and identity for every representation.

Quaternions and matrices compose natively; Euler angles and 6D route
through the matrix hub, axis-angle and rotation vectors through the
quaternion hub. Quaternion products are renormalized unconditionally;
matrix products are re-orthogonalized only when the orthogonality
residual actually exceeds the validity tolerance, so long composition
chains remain a meaningful drift experiment.
"""

from __future__ import annotations

import math

from .core import (
    ORTHONORMALITY_TOL,
    AxisAngle,
    RotationMatrix,
    RotationVector,
    UnitQuaternion,
    mat_mul_rows,
    orthogonality_residual,
    project_to_so3,
)
from .convert import (
    AXIS_ANGLE,
    EULER_XYZ,
    EULER_ZYX,
    MATRIX,
    QUAT,
    ROTVEC,
    SIXD,
    Representation,
    euler_to_matrix,
    matrix_to_euler,
    matrix_to_sixd,
    sixd_to_matrix,
    tag_of,
)
from .errors import DegenerateInputError


def quat_mul(p: UnitQuaternion, q: UnitQuaternion) -> UnitQuaternion:
    """Hamilton product pq, renormalized.

    pq = p0 q0 - p.q + p0 q + q0 p + p x q; composing rotations so that
    quat_to_matrix(pq) = quat_to_matrix(p) quat_to_matrix(q).
    """
    w = p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z
    x = p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y
    y = p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x
    z = p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w
    n = math.sqrt(w * w + x * x + y * y + z * z)
    return UnitQuaternion(w / n, x / n, y / n, z / n)


def quat_conjugate(q: UnitQuaternion) -> UnitQuaternion:
    """q* negates the vector part; for unit q this is also the inverse."""
    return UnitQuaternion(q.w, -q.x, -q.y, -q.z)


def quat_inverse(q: UnitQuaternion) -> UnitQuaternion:
    """Inverse of a unit quaternion: its conjugate."""
    return quat_conjugate(q)


def matrix_mul(r1: RotationMatrix, r2: RotationMatrix) -> RotationMatrix:
    """3x3 product, re-orthogonalized only on drift past the tolerance."""
    rows = mat_mul_rows(r1.rows, r2.rows)
    if orthogonality_residual(rows) > ORTHONORMALITY_TOL:
        return project_to_so3(rows)
    return RotationMatrix(rows)


# Scalar quaternion-hub kernels for the axis-angle and rotation-vector
# routes: same conversions as the object-level spokes, but staying on
# component tuples so composition does not allocate intermediates.


def _quat_components_from_axis_angle(ux, uy, uz, theta):
    half = 0.5 * theta
    if -1e-4 < theta < 1e-4:
        s = half - theta * theta * theta / 48.0
    else:
        s = math.sin(half)
    return math.cos(half), ux * s, uy * s, uz * s


def _quat_components_from_rotvec(vx, vy, vz):
    # sin(theta/2)/theta folds the axis normalization into the scale
    theta = math.sqrt(vx * vx + vy * vy + vz * vz)
    if theta < 1e-4:
        scale = 0.5 - theta * theta / 48.0
    else:
        scale = math.sin(0.5 * theta) / theta
    return math.cos(0.5 * theta), vx * scale, vy * scale, vz * scale


def _hamilton_axis_angle(u1, t1, u2, t2):
    """Compose two axis-angle pairs on the quaternion hub; returns the
    canonical (axis, angle) of the renormalized product."""
    w1, x1, y1, z1 = _quat_components_from_axis_angle(u1[0], u1[1], u1[2], t1)
    w2, x2, y2, z2 = _quat_components_from_axis_angle(u2[0], u2[1], u2[2], t2)
    w = w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2
    x = w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2
    y = w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2
    z = w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2
    n = math.sqrt(w * w + x * x + y * y + z * z)
    if w < 0.0:
        n = -n
    w, x, y, z = w / n, x / n, y / n, z / n
    theta = 2.0 * math.acos(min(w, 1.0))
    vn = math.sqrt(x * x + y * y + z * z)
    if theta <= 1e-12 or vn == 0.0:
        return (0.0, 0.0, 1.0), theta
    return (x / vn, y / vn, z / vn), theta


def compose_in(tag: str, x1: Representation, x2: Representation) -> Representation:
    """Compose two rotations natively or via the representation's hub,
    returning the same representation."""
    actual = (tag_of(x1), tag_of(x2))
    if actual != (tag, tag):
        raise DegenerateInputError(
            f"compose_in({tag!r}) got operands tagged {actual}")
    if tag == QUAT:
        return quat_mul(x1, x2)
    if tag == MATRIX:
        return matrix_mul(x1, x2)
    if tag == AXIS_ANGLE:
        axis, theta = _hamilton_axis_angle(x1.axis, x1.angle, x2.axis, x2.angle)
        return AxisAngle(axis, theta)
    if tag == ROTVEC:
        v1, v2 = x1.v, x2.v
        w1, x1_, y1, z1 = _quat_components_from_rotvec(v1[0], v1[1], v1[2])
        w2, x2_, y2, z2 = _quat_components_from_rotvec(v2[0], v2[1], v2[2])
        w = w1 * w2 - x1_ * x2_ - y1 * y2 - z1 * z2
        x = w1 * x2_ + x1_ * w2 + y1 * z2 - z1 * y2
        y = w1 * y2 - x1_ * z2 + y1 * w2 + z1 * x2_
        z = w1 * z2 + x1_ * y2 - y1 * x2_ + z1 * w2
        n = math.sqrt(w * w + x * x + y * y + z * z)
        if w < 0.0:
            n = -n
        w = w / n
        theta = 2.0 * math.acos(min(w, 1.0))
        vn = math.sqrt(x * x + y * y + z * z)
        if theta <= 1e-12 or vn == 0.0:
            return RotationVector((0.0, 0.0, 0.0))
        k = theta / vn if n > 0.0 else -theta / vn
        return RotationVector((x * k, y * k, z * k))
    if tag in (EULER_ZYX, EULER_XYZ):
        r = matrix_mul(euler_to_matrix(x1), euler_to_matrix(x2))
        return matrix_to_euler(r, x1.convention)
    if tag == SIXD:
        r = matrix_mul(sixd_to_matrix(x1), sixd_to_matrix(x2))
        return matrix_to_sixd(r)
    raise DegenerateInputError(f"unknown representation tag {tag!r}")
