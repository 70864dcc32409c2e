"""Rotation value types and core SO(3) operations.

Conventions used across the package:

* quaternions are scalar-first (w, x, y, z) and unit norm;
* rotation matrices are 3x3, row-major, orthonormal with det +1, and act
  on column vectors (p' = R p);
* all angles are radians.

The small value types are immutable plain-float dataclasses, safe to
share between threads. numpy enters only where a matrix factorization is
genuinely needed (SVD projection).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .rng import Rng

Vec3 = tuple[float, float, float]

ORTHONORMALITY_TOL = 1e-9
DETERMINANT_TOL = 1e-9
TINY_ANGLE = 1e-12
DEFAULT_AXIS: Vec3 = (0.0, 0.0, 1.0)

# ---------------------------------------------------------------------------
# small vector helpers


def dot3(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm3(a: Vec3) -> float:
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


def normalize3(a: Vec3) -> Vec3:
    n = norm3(a)
    if n == 0.0:
        raise DegenerateInputError("cannot normalize a zero 3-vector")
    return (a[0] / n, a[1] / n, a[2] / n)


def wrap_angle(a: float) -> float:
    """Wrap to the canonical interval (-pi, pi]."""
    a = math.fmod(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    elif a > math.pi:
        a -= 2.0 * math.pi
    return a


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class UnitQuaternion:
    """Scalar-first unit quaternion w + xi + yj + zk."""

    w: float
    x: float
    y: float
    z: float

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x
                         + self.y * self.y + self.z * self.z)

    def normalized(self) -> "UnitQuaternion":
        n = self.norm()
        if n < 1e-300:
            raise DegenerateInputError("zero quaternion cannot be normalized")
        return UnitQuaternion(self.w / n, self.x / n, self.y / n, self.z / n)

    def dot(self, other: "UnitQuaternion") -> float:
        return (self.w * other.w + self.x * other.x
                + self.y * other.y + self.z * other.z)

    def __neg__(self) -> "UnitQuaternion":
        return UnitQuaternion(-self.w, -self.x, -self.y, -self.z)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def vector(self) -> Vec3:
        return (self.x, self.y, self.z)

    @staticmethod
    def identity() -> "UnitQuaternion":
        return UnitQuaternion(1.0, 0.0, 0.0, 0.0)


Row3 = tuple[float, float, float]


@dataclass(frozen=True)
class RotationMatrix:
    """3x3 rotation matrix stored as a tuple of row tuples."""

    rows: tuple[Row3, Row3, Row3]

    @staticmethod
    def from_rows(rows) -> "RotationMatrix":
        r = tuple(tuple(float(v) for v in row) for row in rows)
        if len(r) != 3 or any(len(row) != 3 for row in r):
            raise DegenerateInputError("a rotation matrix needs 3x3 entries")
        return RotationMatrix(r)  # type: ignore[arg-type]

    @staticmethod
    def from_array(arr) -> "RotationMatrix":
        a = np.asarray(arr, dtype=float)
        if a.shape != (3, 3):
            raise DegenerateInputError(f"expected shape (3, 3), got {a.shape}")
        return RotationMatrix.from_rows(a.tolist())

    @staticmethod
    def identity() -> "RotationMatrix":
        return RotationMatrix(((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)))

    def trace(self) -> float:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def transpose(self) -> "RotationMatrix":
        r = self.rows
        return RotationMatrix((
            (r[0][0], r[1][0], r[2][0]),
            (r[0][1], r[1][1], r[2][1]),
            (r[0][2], r[1][2], r[2][2]),
        ))

    def apply(self, p: Vec3) -> Vec3:
        r = self.rows
        return (
            r[0][0] * p[0] + r[0][1] * p[1] + r[0][2] * p[2],
            r[1][0] * p[0] + r[1][1] * p[1] + r[1][2] * p[2],
            r[2][0] * p[0] + r[2][1] * p[1] + r[2][2] * p[2],
        )

    def column(self, j: int) -> Vec3:
        r = self.rows
        return (r[0][j], r[1][j], r[2][j])

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)

    def as_flat(self) -> tuple[float, ...]:
        return self.rows[0] + self.rows[1] + self.rows[2]


def mat_mul_rows(a: tuple[Row3, Row3, Row3], b: tuple[Row3, Row3, Row3]):
    """Plain 3x3 product on row tuples (27 mult / 18 add)."""
    out = []
    for i in range(3):
        ai = a[i]
        out.append((
            ai[0] * b[0][0] + ai[1] * b[1][0] + ai[2] * b[2][0],
            ai[0] * b[0][1] + ai[1] * b[1][1] + ai[2] * b[2][1],
            ai[0] * b[0][2] + ai[1] * b[1][2] + ai[2] * b[2][2],
        ))
    return (out[0], out[1], out[2])


_VALID_AXES = {"XYZ", "XZY", "YXZ", "YZX", "ZXY", "ZYX",
               "XYX", "XZX", "YXY", "YZY", "ZXZ", "ZYZ"}


@dataclass(frozen=True)
class EulerConvention:
    """Ordered axis triple plus intrinsic/extrinsic flag.

    Intrinsic conventions compose in name order: axes "ZYX" with angles
    (alpha, beta, gamma) build Rz(alpha) Ry(beta) Rx(gamma). Extrinsic is
    the reversed product.
    """

    axes: str
    intrinsic: bool = True

    def __post_init__(self):
        if self.axes not in _VALID_AXES:
            raise DegenerateInputError(
                f"unknown Euler axis sequence {self.axes!r}; "
                f"expected one of {sorted(_VALID_AXES)}")

    @property
    def tag(self) -> str:
        return f"{self.axes.lower()}-{'intrinsic' if self.intrinsic else 'extrinsic'}"


ZYX = EulerConvention("ZYX")
XYZ = EulerConvention("XYZ")


@dataclass(frozen=True)
class EulerAngles:
    """Angle triple in radians under a named convention."""

    alpha: float
    beta: float
    gamma: float
    convention: EulerConvention = ZYX

    def as_tuple(self) -> Vec3:
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class AxisAngle:
    """Unit rotation axis and angle in [0, pi].

    The axis is by convention (0, 0, 1) when the angle is below 1e-12.
    """

    axis: Vec3
    angle: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.axis[0], self.axis[1], self.axis[2], self.angle)


@dataclass(frozen=True)
class RotationVector:
    """Exponential-map coordinates v = theta * axis."""

    v: Vec3

    def norm(self) -> float:
        return norm3(self.v)

    def as_tuple(self) -> Vec3:
        return self.v


@dataclass(frozen=True)
class SixD:
    """Continuous 6D representation: two (unconstrained) 3-vectors that
    Gram-Schmidt into the first two columns of a rotation."""

    a1: Vec3
    a2: Vec3

    def as_tuple(self) -> tuple[float, ...]:
        return self.a1 + self.a2


# ---------------------------------------------------------------------------
# operations


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of the rotation-matrix check with both residuals."""

    ok: bool
    orthogonality_residual: float
    determinant_residual: float

    def __bool__(self) -> bool:
        return self.ok


def _as_rows(m) -> tuple[Row3, Row3, Row3]:
    if isinstance(m, RotationMatrix):
        return m.rows
    return RotationMatrix.from_rows(np.asarray(m, dtype=float).tolist()).rows


def orthogonality_residual(r) -> float:
    """||R^T R - I||_F computed from column dot products."""
    (a, b, c), (d, e, f), (g, h, i) = r
    g00 = a * a + d * d + g * g - 1.0
    g11 = b * b + e * e + h * h - 1.0
    g22 = c * c + f * f + i * i - 1.0
    g01 = a * b + d * e + g * h
    g02 = a * c + d * f + g * i
    g12 = b * c + e * f + h * i
    return math.sqrt(g00 * g00 + g11 * g11 + g22 * g22
                     + 2.0 * (g01 * g01 + g02 * g02 + g12 * g12))


def validity_residuals(r) -> tuple[float, float]:
    """(orthogonality residual, determinant residual) of row tuples.

    The allocation-free core of validate(), for hot paths that only
    need the numbers.
    """
    orth = orthogonality_residual(r)
    det = (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
           - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
           + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))
    return orth, abs(det - 1.0)


def validate(m) -> ValidationResult:
    """Check ||R^T R - I||_F <= 1e-9 and |det R - 1| <= 1e-9.

    Pure predicate on any 3x3 array; returns both residuals.
    """
    orth, det_res = validity_residuals(_as_rows(m))
    return ValidationResult(
        orth <= ORTHONORMALITY_TOL and det_res <= DETERMINANT_TOL, orth, det_res)


def project_to_so3(m) -> RotationMatrix:
    """Closest rotation in the Frobenius sense via SVD.

    Returns U diag(1, 1, det(UV^T)) V^T; the determinant correction keeps
    the result in SO(3) rather than O(3). Raises DegenerateInputError for
    rank-deficient input (smallest singular value below 1e-12).
    """
    a = np.asarray(m.rows if isinstance(m, RotationMatrix) else m, dtype=float)
    if a.shape != (3, 3):
        raise DegenerateInputError(f"expected shape (3, 3), got {a.shape}")
    u, sigma, vt = np.linalg.svd(a)
    if sigma[-1] < 1e-12:
        raise DegenerateInputError(
            f"matrix is rank-deficient (singular values {sigma.tolist()})")
    d = float(np.linalg.det(u @ vt))
    sign = 1.0 if d >= 0.0 else -1.0
    r = (u * np.array([1.0, 1.0, sign])) @ vt
    return RotationMatrix.from_array(r)


def geodesic_distance(r1: RotationMatrix, r2: RotationMatrix) -> float:
    """Rotation angle of R1^T R2: arccos((tr(R1^T R2) - 1) / 2), clamped.

    Symmetric, and exactly zero iff the operands are equal (the trace of
    R^T R rounds below 3 for about half of all rotations, which the
    arccos would otherwise report as ~2e-8). The arccos form loses
    precision below ~1e-8 rad in general; use relative_angle() when
    resolving tiny distances.
    """
    a, b = r1.rows, r2.rows
    if a == b:
        return 0.0
    tr = 0.0
    for i in range(3):
        tr += a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i]
    return math.acos(_clamp((tr - 1.0) * 0.5, -1.0, 1.0))


def relative_angle(r1: RotationMatrix, r2: RotationMatrix) -> float:
    """Angle of R1^T R2 computed as atan2(sin, cos).

    sin comes from the skew part and cos from the trace, so the result
    keeps full precision at both ends of [0, pi], unlike the plain arccos
    form. This is the measuring stick for all reconstruction-error
    metrics.
    """
    a, b = r1.rows, r2.rows
    q = mat_mul_rows((
        (a[0][0], a[1][0], a[2][0]),
        (a[0][1], a[1][1], a[2][1]),
        (a[0][2], a[1][2], a[2][2]),
    ), b)
    c = (q[0][0] + q[1][1] + q[2][2] - 1.0) * 0.5
    sx = (q[2][1] - q[1][2]) * 0.5
    sy = (q[0][2] - q[2][0]) * 0.5
    sz = (q[1][0] - q[0][1]) * 0.5
    s = math.sqrt(sx * sx + sy * sy + sz * sz)
    return math.atan2(s, c)


def sample_uniform(rng: Rng) -> UnitQuaternion:
    """Haar-uniform rotation as a normalized 4-normal quaternion."""
    while True:
        w, x, y, z = rng.normal(), rng.normal(), rng.normal(), rng.normal()
        n = math.sqrt(w * w + x * x + y * y + z * z)
        if n > 0.0:
            return UnitQuaternion(w / n, x / n, y / n, z / n)


def rotate_vector(q: UnitQuaternion, p: Vec3) -> Vec3:
    """Apply the rotation carried by q to p (sandwich product q p q*)."""
    v = (q.x, q.y, q.z)
    t = cross3(v, p)
    t = (2.0 * t[0], 2.0 * t[1], 2.0 * t[2])
    u = cross3(v, t)
    return (
        p[0] + q.w * t[0] + u[0],
        p[1] + q.w * t[1] + u[1],
        p[2] + q.w * t[2] + u[2],
    )


def canonicalize(q: UnitQuaternion) -> UnitQuaternion:
    """Canonical sign: w > 0; ties (w == 0) broken by the first nonzero
    vector component being positive."""
    if q.w > 0.0:
        return q
    if q.w < 0.0:
        return -q
    for c in (q.x, q.y, q.z):
        if c > 0.0:
            return q
        if c < 0.0:
            return -q
    return q
