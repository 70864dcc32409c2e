"""Conversions between all rotation representations.

Layout is hub-and-spoke: the unit quaternion is the primary hub and the
rotation matrix the secondary one; every other representation has direct
spokes to one hub, and convert() routes along the fewest hops. Small- and
near-pi-angle branches follow fixed thresholds chosen so each branch
agrees with the unbranched formula to better than 1e-12 relative at the
seam.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    DEFAULT_AXIS,
    DETERMINANT_TOL,
    ORTHONORMALITY_TOL,
    TINY_ANGLE,
    AxisAngle,
    EulerAngles,
    EulerConvention,
    RotationMatrix,
    RotationVector,
    SixD,
    UnitQuaternion,
    Vec3,
    norm3,
    validity_residuals,
)
from .errors import (
    DegenerateInputError,
    InvalidRotationError,
    UnsupportedConventionError,
)

SMALL_ANGLE = 1e-4        # forward-map Taylor branches
LOG_SMALL = 1e-7          # log map near identity
LOG_NEAR_PI = math.pi - 1e-6
GIMBAL_COS_BETA = 1e-7    # Euler extraction fold band
GRAM_SCHMIDT_TOL = 1e-12

_ZYX_DEFAULT = EulerConvention("ZYX")


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


# ---------------------------------------------------------------------------
# axis-angle <-> quaternion


def axis_angle_to_quat(aa: AxisAngle) -> UnitQuaternion:
    """q = (cos(theta/2), u sin(theta/2)) with a Taylor branch for tiny
    angles: sin(theta/2) ~ theta/2 - theta^3/48."""
    theta = aa.angle
    half = 0.5 * theta
    if theta < SMALL_ANGLE:
        s = half - theta * theta * theta / 48.0
    else:
        s = math.sin(half)
    w = math.cos(half)
    x = aa.axis[0] * s
    y = aa.axis[1] * s
    z = aa.axis[2] * s
    n = math.sqrt(w * w + x * x + y * y + z * z)
    return UnitQuaternion(w / n, x / n, y / n, z / n)


def quat_to_axis_angle(q: UnitQuaternion) -> AxisAngle:
    """theta = 2 arccos(|w|) after canonicalization; axis is the
    normalized vector part, defaulting to +z below 1e-12 rad."""
    w, x, y, z = q.w, q.x, q.y, q.z
    n = math.sqrt(w * w + x * x + y * y + z * z)
    if n < 1e-300:
        raise DegenerateInputError("zero quaternion cannot be normalized")
    if w < 0.0 or (w == 0.0 and _first_nonzero_negative(x, y, z)):
        n = -n
    w, x, y, z = w / n, x / n, y / n, z / n
    theta = 2.0 * math.acos(_clamp(w, 0.0, 1.0))
    vn = math.sqrt(x * x + y * y + z * z)
    if theta <= TINY_ANGLE or vn == 0.0:
        return AxisAngle(DEFAULT_AXIS, theta)
    return AxisAngle((x / vn, y / vn, z / vn), theta)


def _first_nonzero_negative(x: float, y: float, z: float) -> bool:
    for c in (x, y, z):
        if c > 0.0:
            return False
        if c < 0.0:
            return True
    return False


# ---------------------------------------------------------------------------
# axis-angle / rotation vector <-> matrix


def axis_angle_to_matrix(aa: AxisAngle) -> RotationMatrix:
    """Rodrigues: R = I + sin(theta) [u]x + (1 - cos(theta)) [u]x^2."""
    ux, uy, uz = aa.axis
    c = math.cos(aa.angle)
    s = math.sin(aa.angle)
    omc = 1.0 - c
    return RotationMatrix((
        (c + ux * ux * omc, ux * uy * omc - uz * s, ux * uz * omc + uy * s),
        (uy * ux * omc + uz * s, c + uy * uy * omc, uy * uz * omc - ux * s),
        (uz * ux * omc - uy * s, uz * uy * omc + ux * s, c + uz * uz * omc),
    ))


def exp_map(v: RotationVector) -> RotationMatrix:
    """Matrix exponential of [v]x via Rodrigues coefficients.

    For theta < 1e-4 the coefficients sin(theta)/theta and
    (1 - cos(theta))/theta^2 are replaced by 2-term Taylor series, so the
    map is exact at v = 0 and smooth through the seam.
    """
    vx, vy, vz = v.v
    theta2 = vx * vx + vy * vy + vz * vz
    theta = math.sqrt(theta2)
    if theta < SMALL_ANGLE:
        a = 1.0 - theta2 / 6.0
        b = 0.5 - theta2 / 24.0
    else:
        a = math.sin(theta) / theta
        b = (1.0 - math.cos(theta)) / theta2
    # I + a [v]x + b [v]x^2 expanded entry-wise
    return RotationMatrix((
        (1.0 - b * (vy * vy + vz * vz), b * vx * vy - a * vz, b * vx * vz + a * vy),
        (b * vx * vy + a * vz, 1.0 - b * (vx * vx + vz * vz), b * vy * vz - a * vx),
        (b * vx * vz - a * vy, b * vy * vz + a * vx, 1.0 - b * (vx * vx + vy * vy)),
    ))


def log_map(r: RotationMatrix) -> RotationVector:
    """Rotation vector of r, canonical chart (norm <= pi).

    Three branches keep the map accurate over all of SO(3):

    * theta < 1e-7: v = vee((R - R^T) / 2), exact to O(theta^3);
    * theta > pi - 1e-6: the axis comes from the dominant diagonal of the
      symmetrized (R + I)/2 (the skew part is discarded so it cannot
      contaminate the axis), the angle from pi - arcsin(||vee||), and the
      sign from the skew part when it is nonzero. At theta = pi the sign
      is genuinely ambiguous and either choice reproduces the matrix;
    * otherwise the textbook v = theta / (2 sin(theta)) vee(R - R^T),
      with sin(theta) read off the skew part itself (||vee|| = |sin
      theta|) and theta = atan2(sin, cos). Re-evaluating sin(arccos(c))
      instead would amplify the arccos rounding by 1/sin^2(theta) near
      pi, costing ~1e-8 rad already at theta = pi - 1e-4.
    """
    m = r.rows
    orth, det_res = validity_residuals(m)
    if orth > ORTHONORMALITY_TOL or det_res > DETERMINANT_TOL:
        raise InvalidRotationError(
            "log_map input is not a rotation "
            f"(orthogonality residual {orth:.3e}, "
            f"determinant residual {det_res:.3e})")
    c = _clamp((m[0][0] + m[1][1] + m[2][2] - 1.0) * 0.5, -1.0, 1.0)
    wx = (m[2][1] - m[1][2]) * 0.5
    wy = (m[0][2] - m[2][0]) * 0.5
    wz = (m[1][0] - m[0][1]) * 0.5
    s = math.sqrt(wx * wx + wy * wy + wz * wz)
    theta = math.atan2(s, c)
    if theta < LOG_SMALL:
        return RotationVector((wx, wy, wz))
    if theta > LOG_NEAR_PI:
        return RotationVector(_log_near_pi(m, (wx, wy, wz)))
    k = theta / s
    return RotationVector((k * wx, k * wy, k * wz))


def _log_near_pi(m, skew: Vec3) -> Vec3:
    # B = (sym(R) + I)/2 = h I + (1 - h) u u^T with h = (1 + cos theta)/2.
    b01 = (m[0][1] + m[1][0]) * 0.25
    b02 = (m[0][2] + m[2][0]) * 0.25
    b12 = (m[1][2] + m[2][1]) * 0.25
    d0 = (m[0][0] + 1.0) * 0.5
    d1 = (m[1][1] + 1.0) * 0.5
    d2 = (m[2][2] + 1.0) * 0.5
    c = _clamp((m[0][0] + m[1][1] + m[2][2] - 1.0) * 0.5, -1.0, 1.0)
    h = (1.0 + c) * 0.5
    denom = 1.0 - h
    diag = (d0, d1, d2)
    off = ((None, b01, b02), (b01, None, b12), (b02, b12, None))
    i = max(range(3), key=lambda k: diag[k])
    ui = math.sqrt(max((diag[i] - h) / denom, 0.0))
    if ui == 0.0:
        ui = 1.0  # fully degenerate numerically; pick an axis entry
    u = [0.0, 0.0, 0.0]
    u[i] = ui
    for j in range(3):
        if j != i:
            u[j] = off[i][j] / (denom * ui)
    un = math.sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2])
    u = [u[0] / un, u[1] / un, u[2] / un]
    s = norm3(skew)  # |sin theta|
    if s > 0.0 and (u[0] * skew[0] + u[1] * skew[1] + u[2] * skew[2]) < 0.0:
        u = [-u[0], -u[1], -u[2]]
    theta = math.pi - math.asin(_clamp(s, 0.0, 1.0))
    return (theta * u[0], theta * u[1], theta * u[2])


def canonicalize_rotation_vector(v: RotationVector) -> RotationVector:
    """Wrap into the canonical chart ||v|| <= pi."""
    theta = v.norm()
    if theta <= math.pi or theta == 0.0:
        return v
    wrapped = math.fmod(theta, 2.0 * math.pi)
    if wrapped > math.pi:
        wrapped -= 2.0 * math.pi
    scale = wrapped / theta
    return RotationVector((v.v[0] * scale, v.v[1] * scale, v.v[2] * scale))


def axis_angle_to_rotation_vector(aa: AxisAngle) -> RotationVector:
    return RotationVector((aa.axis[0] * aa.angle, aa.axis[1] * aa.angle,
                           aa.axis[2] * aa.angle))


def rotation_vector_to_axis_angle(v: RotationVector) -> AxisAngle:
    theta = v.norm()
    if theta <= TINY_ANGLE:
        return AxisAngle(DEFAULT_AXIS, theta)
    return AxisAngle((v.v[0] / theta, v.v[1] / theta, v.v[2] / theta), theta)


# ---------------------------------------------------------------------------
# quaternion <-> matrix


def quat_to_matrix(q: UnitQuaternion) -> RotationMatrix:
    """R = (w^2 - |v|^2) I + 2 v v^T + 2 w [v]x.

    Every entry is a sum of two-component products, so R(q) and R(-q) are
    bit-for-bit identical. The quaternion is renormalized internally;
    a zero quaternion is degenerate input.
    """
    n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    if n2 < 1e-300:
        raise DegenerateInputError("zero quaternion does not define a rotation")
    n = math.sqrt(n2)
    w, x, y, z = q.w / n, q.x / n, q.y / n, q.z / n
    a = w * w - (x * x + y * y + z * z)
    return RotationMatrix((
        (a + 2.0 * x * x, 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)),
        (2.0 * (x * y + w * z), a + 2.0 * y * y, 2.0 * (y * z - w * x)),
        (2.0 * (x * z - w * y), 2.0 * (y * z + w * x), a + 2.0 * z * z),
    ))


def matrix_to_quat(r: RotationMatrix) -> UnitQuaternion:
    """Shoemake extraction: the trace branch when tr(R) > 0, otherwise
    the branch of the largest diagonal entry. Output is canonicalized."""
    m = r.rows
    orth, det_res = validity_residuals(m)
    if orth > ORTHONORMALITY_TOL or det_res > DETERMINANT_TOL:
        raise InvalidRotationError(
            "matrix_to_quat input is not a rotation "
            f"(orthogonality residual {orth:.3e}, "
            f"determinant residual {det_res:.3e})")
    tr = m[0][0] + m[1][1] + m[2][2]
    if tr > 0.0:
        s = math.sqrt(tr + 1.0) * 2.0  # 4 w
        w = 0.25 * s
        x = (m[2][1] - m[1][2]) / s
        y = (m[0][2] - m[2][0]) / s
        z = (m[1][0] - m[0][1]) / s
    elif m[0][0] > m[1][1] and m[0][0] > m[2][2]:
        s = math.sqrt(1.0 + m[0][0] - m[1][1] - m[2][2]) * 2.0  # 4 x
        w = (m[2][1] - m[1][2]) / s
        x = 0.25 * s
        y = (m[0][1] + m[1][0]) / s
        z = (m[0][2] + m[2][0]) / s
    elif m[1][1] > m[2][2]:
        s = math.sqrt(1.0 + m[1][1] - m[0][0] - m[2][2]) * 2.0  # 4 y
        w = (m[0][2] - m[2][0]) / s
        x = (m[0][1] + m[1][0]) / s
        y = 0.25 * s
        z = (m[1][2] + m[2][1]) / s
    else:
        s = math.sqrt(1.0 + m[2][2] - m[0][0] - m[1][1]) * 2.0  # 4 z
        w = (m[1][0] - m[0][1]) / s
        x = (m[0][2] + m[2][0]) / s
        y = (m[1][2] + m[2][1]) / s
        z = 0.25 * s
    n = math.sqrt(w * w + x * x + y * y + z * z)
    if w < 0.0 or (w == 0.0 and _first_nonzero_negative(x, y, z)):
        n = -n
    return UnitQuaternion(w / n, x / n, y / n, z / n)


# ---------------------------------------------------------------------------
# Euler <-> matrix


def _elementary(axis: str, angle: float):
    c = math.cos(angle)
    s = math.sin(angle)
    if axis == "X":
        return ((1.0, 0.0, 0.0), (0.0, c, -s), (0.0, s, c))
    if axis == "Y":
        return ((c, 0.0, s), (0.0, 1.0, 0.0), (-s, 0.0, c))
    return ((c, -s, 0.0), (s, c, 0.0), (0.0, 0.0, 1.0))


def _elementary_mul_left(axis: str, angle: float, m):
    """R_axis(angle) @ m, exploiting the elementary sparsity (12 mults)."""
    c = math.cos(angle)
    s = math.sin(angle)
    r0, r1, r2 = m
    if axis == "X":
        return (r0,
                (c * r1[0] - s * r2[0], c * r1[1] - s * r2[1], c * r1[2] - s * r2[2]),
                (s * r1[0] + c * r2[0], s * r1[1] + c * r2[1], s * r1[2] + c * r2[2]))
    if axis == "Y":
        return ((c * r0[0] + s * r2[0], c * r0[1] + s * r2[1], c * r0[2] + s * r2[2]),
                r1,
                (-s * r0[0] + c * r2[0], -s * r0[1] + c * r2[1], -s * r0[2] + c * r2[2]))
    return ((c * r0[0] - s * r1[0], c * r0[1] - s * r1[1], c * r0[2] - s * r1[2]),
            (s * r0[0] + c * r1[0], s * r0[1] + c * r1[1], s * r0[2] + c * r1[2]),
            r2)


def euler_to_matrix(e: EulerAngles) -> RotationMatrix:
    """Compose elementary rotations per the convention.

    Intrinsic conventions multiply in name order (ZYX with (a, b, g) is
    Rz(a) Ry(b) Rx(g)); extrinsic conventions are the reversed product.
    The two conventions with extraction support use the symbolically
    expanded product; the rest compose the elementary factors directly.
    """
    conv = e.convention
    if conv is _ZYX_DEFAULT or (conv.intrinsic and conv.axes == "ZYX"):
        ca, sa = math.cos(e.alpha), math.sin(e.alpha)
        cb, sb = math.cos(e.beta), math.sin(e.beta)
        cg, sg = math.cos(e.gamma), math.sin(e.gamma)
        return RotationMatrix((
            (ca * cb, ca * sb * sg - sa * cg, ca * sb * cg + sa * sg),
            (sa * cb, sa * sb * sg + ca * cg, sa * sb * cg - ca * sg),
            (-sb, cb * sg, cb * cg),
        ))
    if conv.intrinsic and conv.axes == "XYZ":
        ca, sa = math.cos(e.alpha), math.sin(e.alpha)
        cb, sb = math.cos(e.beta), math.sin(e.beta)
        cg, sg = math.cos(e.gamma), math.sin(e.gamma)
        return RotationMatrix((
            (cb * cg, -cb * sg, sb),
            (ca * sg + sa * sb * cg, ca * cg - sa * sb * sg, -sa * cb),
            (sa * sg - ca * sb * cg, sa * cg + ca * sb * sg, ca * cb),
        ))
    axes = conv.axes
    angles = e.as_tuple()
    order = (0, 1, 2) if conv.intrinsic else (2, 1, 0)
    rows = _elementary(axes[order[2]], angles[order[2]])
    rows = _elementary_mul_left(axes[order[1]], angles[order[1]], rows)
    rows = _elementary_mul_left(axes[order[0]], angles[order[0]], rows)
    return RotationMatrix(rows)


def matrix_to_euler(r: RotationMatrix,
                    convention: EulerConvention | None = None) -> EulerAngles:
    """Extract intrinsic ZYX or XYZ angles.

    Away from the gimbal band the formulas are the atan2 forms of the
    standard arcsin/atan2 extraction (beta uses atan2(sin, cos) for
    stability right at the band edge). Inside the band (|cos beta| <
    1e-7) gamma is set to zero and the remaining free rotation is folded
    into alpha; the fold is exact at beta = +-pi/2 and reproduces the
    matrix to O(|cos beta|) elsewhere in the band. All other conventions
    raise UnsupportedConventionError.
    """
    if convention is None:
        convention = _ZYX_DEFAULT
    if convention is not _ZYX_DEFAULT and (
            not convention.intrinsic or convention.axes not in ("ZYX", "XYZ")):
        raise UnsupportedConventionError(
            f"Euler extraction supports intrinsic ZYX and XYZ only, "
            f"got {convention.tag}")
    m = r.rows
    if convention.axes == "ZYX":
        sb = _clamp(-m[2][0], -1.0, 1.0)
        cb = math.hypot(m[0][0], m[1][0])
        beta = math.atan2(sb, cb)
        if cb < GIMBAL_COS_BETA:
            alpha = math.atan2(-m[0][1], m[1][1])
            gamma = 0.0
        else:
            alpha = math.atan2(m[1][0], m[0][0])
            gamma = math.atan2(m[2][1], m[2][2])
    else:
        sb = _clamp(m[0][2], -1.0, 1.0)
        cb = math.hypot(m[0][0], m[0][1])
        beta = math.atan2(sb, cb)
        if cb < GIMBAL_COS_BETA:
            gamma = 0.0
            if sb > 0.0:
                alpha = math.atan2(m[1][0], m[1][1])
            else:
                alpha = math.atan2(-m[1][0], m[1][1])
        else:
            alpha = math.atan2(-m[1][2], m[2][2])
            gamma = math.atan2(-m[0][1], m[0][0])
    return EulerAngles(alpha, beta, gamma, convention)


# ---------------------------------------------------------------------------
# 6D <-> matrix


def sixd_to_matrix(s: SixD) -> RotationMatrix:
    """Gram-Schmidt recovery: b1 = a1/|a1|, b2 = normalized rejection of
    a2 from b1, b3 = b1 x b2, assembled as columns."""
    a1 = np.asarray(s.a1, dtype=float)
    a2 = np.asarray(s.a2, dtype=float)
    n1 = float(np.linalg.norm(a1))
    if n1 <= GRAM_SCHMIDT_TOL:
        raise DegenerateInputError("6D first column is numerically zero")
    b1 = a1 / n1
    rej = a2 - float(np.dot(b1, a2)) * b1
    n2 = float(np.linalg.norm(rej))
    if n2 <= GRAM_SCHMIDT_TOL:
        raise DegenerateInputError(
            "6D columns are parallel; Gram-Schmidt is ill-posed")
    b2 = rej / n2
    b3 = np.cross(b1, b2)
    return RotationMatrix((
        (float(b1[0]), float(b2[0]), float(b3[0])),
        (float(b1[1]), float(b2[1]), float(b3[1])),
        (float(b1[2]), float(b2[2]), float(b3[2])),
    ))


def matrix_to_sixd(r: RotationMatrix) -> SixD:
    """First two columns of the rotation."""
    return SixD(r.column(0), r.column(1))


# ---------------------------------------------------------------------------
# generic dispatch

QUAT = "quat"
MATRIX = "matrix"
EULER_ZYX = "euler-zyx"
EULER_XYZ = "euler-xyz"
AXIS_ANGLE = "axis-angle"
ROTVEC = "rotvec"
SIXD = "sixd"

REPRESENTATION_TAGS = (QUAT, MATRIX, EULER_ZYX, EULER_XYZ, AXIS_ANGLE, ROTVEC, SIXD)

Representation = (UnitQuaternion | RotationMatrix | EulerAngles | AxisAngle
                  | RotationVector | SixD)


_TAG_BY_TYPE = {
    UnitQuaternion: QUAT,
    RotationMatrix: MATRIX,
    AxisAngle: AXIS_ANGLE,
    RotationVector: ROTVEC,
    SixD: SIXD,
}


def tag_of(value: Representation) -> str:
    tag = _TAG_BY_TYPE.get(type(value))
    if tag is not None:
        return tag
    if isinstance(value, EulerAngles):
        if value.convention.intrinsic and value.convention.axes == "ZYX":
            return EULER_ZYX
        if value.convention.intrinsic and value.convention.axes == "XYZ":
            return EULER_XYZ
        return f"euler-{value.convention.tag}"
    raise DegenerateInputError(f"not a rotation representation: {value!r}")


def to_matrix(value: Representation) -> RotationMatrix:
    """Direct spoke from any representation to the matrix hub."""
    if isinstance(value, RotationMatrix):
        return value
    if isinstance(value, UnitQuaternion):
        return quat_to_matrix(value)
    if isinstance(value, AxisAngle):
        return axis_angle_to_matrix(value)
    if isinstance(value, RotationVector):
        return exp_map(value)
    if isinstance(value, EulerAngles):
        return euler_to_matrix(value)
    if isinstance(value, SixD):
        return sixd_to_matrix(value)
    raise DegenerateInputError(f"not a rotation representation: {value!r}")


def to_quat(value: Representation) -> UnitQuaternion:
    """Route to the quaternion hub along the fewest hops."""
    if isinstance(value, UnitQuaternion):
        return value
    if isinstance(value, AxisAngle):
        return axis_angle_to_quat(value)
    if isinstance(value, RotationVector):
        return axis_angle_to_quat(rotation_vector_to_axis_angle(value))
    return matrix_to_quat(to_matrix(value))


def _from_quat(q: UnitQuaternion, dst: str) -> Representation:
    if dst == QUAT:
        return q
    if dst == AXIS_ANGLE:
        return quat_to_axis_angle(q)
    if dst == ROTVEC:
        return axis_angle_to_rotation_vector(quat_to_axis_angle(q))
    return _from_matrix(quat_to_matrix(q), dst)


def _from_matrix(r: RotationMatrix, dst: str) -> Representation:
    if dst == MATRIX:
        return r
    if dst == EULER_ZYX:
        return matrix_to_euler(r, EulerConvention("ZYX"))
    if dst == EULER_XYZ:
        return matrix_to_euler(r, EulerConvention("XYZ"))
    if dst == SIXD:
        return matrix_to_sixd(r)
    if dst == QUAT:
        return matrix_to_quat(r)
    if dst == AXIS_ANGLE:
        return quat_to_axis_angle(matrix_to_quat(r))
    if dst == ROTVEC:
        return log_map(r)
    raise DegenerateInputError(f"unknown destination representation {dst!r}")


_QUAT_FAMILY = (QUAT, AXIS_ANGLE, ROTVEC)
_MATRIX_FAMILY = (MATRIX, EULER_ZYX, EULER_XYZ, SIXD)


def convert(value: Representation, dst: str) -> Representation:
    """Convert between representations via the nearest hub.

    Axis-angle and rotation vector interconvert directly; members of the
    quaternion family route via the quaternion, the others via the
    matrix.
    """
    if dst not in REPRESENTATION_TAGS:
        raise DegenerateInputError(f"unknown destination representation {dst!r}")
    src = tag_of(value)
    if src == dst:
        return value
    if src == AXIS_ANGLE and dst == ROTVEC:
        return axis_angle_to_rotation_vector(value)
    if src == ROTVEC and dst == AXIS_ANGLE:
        return rotation_vector_to_axis_angle(value)
    if src in _QUAT_FAMILY:
        return _from_quat(to_quat(value), dst)
    return _from_matrix(to_matrix(value), dst)
