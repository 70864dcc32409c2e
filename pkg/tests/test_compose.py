import math

import pytest

from rotrepr import (
    AxisAngle,
    EulerAngles,
    RotationMatrix,
    RotationVector,
    UnitQuaternion,
    compose_in,
    matrix_mul,
    quat_conjugate,
    quat_inverse,
    quat_mul,
    relative_angle,
    rotate_vector,
    validate,
)
from rotrepr.convert import (
    axis_angle_to_matrix,
    convert,
    quat_to_matrix,
    tag_of,
)
from rotrepr.errors import DegenerateInputError

from conftest import frobenius, haar_matrix, haar_quat

SQ2 = math.sqrt(0.5)


# ---------------------------------------------------------------------------
# quaternion product


def test_quat_mul_identity_element(rng):
    q = haar_quat(rng)
    out = quat_mul(q, UnitQuaternion.identity())
    assert out.as_tuple() == pytest.approx(q.as_tuple(), abs=1e-15)


def test_quat_mul_ij_equals_k():
    i = UnitQuaternion(0.0, 1.0, 0.0, 0.0)
    j = UnitQuaternion(0.0, 0.0, 1.0, 0.0)
    k = UnitQuaternion(0.0, 0.0, 0.0, 1.0)
    assert quat_mul(i, j) == k
    assert quat_mul(j, i).as_tuple() == pytest.approx((0, 0, 0, -1), abs=1e-15)


def test_quat_mul_matches_matrix_route(rng):
    for _ in range(200):
        p, q = haar_quat(rng), haar_quat(rng)
        lhs = quat_to_matrix(quat_mul(p, q))
        rhs = matrix_mul(quat_to_matrix(p), quat_to_matrix(q))
        assert frobenius(lhs, rhs) < 1e-13


def test_quat_mul_associative(rng):
    for _ in range(100):
        a, b, c = haar_quat(rng), haar_quat(rng), haar_quat(rng)
        lhs = quat_mul(quat_mul(a, b), c)
        rhs = quat_mul(a, quat_mul(b, c))
        assert relative_angle(quat_to_matrix(lhs), quat_to_matrix(rhs)) < 1e-12


def test_quat_conjugate_and_inverse(rng):
    q = UnitQuaternion(SQ2, 0.0, 0.0, SQ2)
    assert quat_conjugate(q) == UnitQuaternion(SQ2, 0.0, 0.0, -SQ2)
    for _ in range(50):
        q = haar_quat(rng)
        prod = quat_mul(q, quat_inverse(q))
        assert prod.as_tuple() == pytest.approx((1, 0, 0, 0), abs=1e-15)
        p = (rng.normal(), rng.normal(), rng.normal())
        back = rotate_vector(quat_conjugate(q), rotate_vector(q, p))
        assert back == pytest.approx(p, abs=1e-12)


# ---------------------------------------------------------------------------
# matrix product


def test_matrix_mul_identity(rng):
    r = haar_matrix(rng)
    assert frobenius(matrix_mul(r, RotationMatrix.identity()), r) == 0.0


def test_matrix_mul_abelian_subgroup():
    def rz(a):
        return axis_angle_to_matrix(AxisAngle((0.0, 0.0, 1.0), a))
    got = matrix_mul(rz(0.7), rz(0.9))
    assert frobenius(got, rz(1.6)) < 1e-13


def test_matrix_mul_chain_drift(rng):
    r = RotationMatrix.identity()
    for _ in range(10000):
        r = matrix_mul(r, haar_matrix(rng))
    assert validate(r).orthogonality_residual < 1e-9


# ---------------------------------------------------------------------------
# compose_in


def test_compose_euler_shared_axis():
    e1 = EulerAngles(0.1, 0.0, 0.0)
    e2 = EulerAngles(0.2, 0.0, 0.0)
    out = compose_in("euler-zyx", e1, e2)
    assert out.as_tuple() == pytest.approx((0.3, 0.0, 0.0), abs=1e-12)


def test_compose_rotvec_shared_axis_adds():
    v1 = RotationVector((0.0, 0.0, 1.0))
    out = compose_in("rotvec", v1, v1)
    assert out.v == pytest.approx((0.0, 0.0, 2.0), abs=1e-12)


def test_compose_sixd_matches_matrix_reference(rng):
    for _ in range(50):
        r1, r2 = haar_matrix(rng), haar_matrix(rng)
        s1, s2 = convert(r1, "sixd"), convert(r2, "sixd")
        composed = compose_in("sixd", s1, s2)
        reference = matrix_mul(r1, r2)
        assert relative_angle(convert(composed, "matrix"), reference) < 1e-9


def test_compose_tag_mismatch():
    with pytest.raises(DegenerateInputError):
        compose_in("quat", UnitQuaternion.identity(), RotationMatrix.identity())


@pytest.mark.parametrize("tag", ["quat", "matrix", "euler-zyx", "axis-angle",
                                 "rotvec", "sixd"])
def test_compose_matches_matrix_route_everywhere(tag, rng):
    for _ in range(50):
        r1, r2 = haar_matrix(rng), haar_matrix(rng)
        x1, x2 = convert(r1, tag), convert(r2, tag)
        composed = compose_in(tag, x1, x2)
        assert tag_of(composed) == tag
        reference = matrix_mul(r1, r2)
        assert relative_angle(convert(composed, "matrix"), reference) < 1e-9


@pytest.mark.parametrize("tag", ["quat", "matrix", "euler-zyx", "axis-angle",
                                 "rotvec", "sixd"])
def test_compose_associativity_all_representations(tag, rng):
    # 500 sampled triples spread across the six representations
    for _ in range(84):
        ms = [haar_matrix(rng) for _ in range(3)]
        a, b, c = (convert(m, tag) for m in ms)
        lhs = compose_in(tag, compose_in(tag, a, b), c)
        rhs = compose_in(tag, a, compose_in(tag, b, c))
        assert relative_angle(convert(lhs, "matrix"),
                              convert(rhs, "matrix")) < 1e-12


def test_cross_representation_consistency(rng):
    # converting then composing equals composing then converting
    tags = ["quat", "matrix", "euler-zyx", "axis-angle", "rotvec", "sixd"]
    for _ in range(20):
        r1, r2 = haar_matrix(rng), haar_matrix(rng)
        reference = matrix_mul(r1, r2)
        for src in tags:
            composed = compose_in(src, convert(r1, src), convert(r2, src))
            for dst in tags:
                moved = convert(composed, dst)
                assert relative_angle(convert(moved, "matrix"),
                                      reference) < 1e-9


def test_quat_identity_inverse_laws(rng):
    for _ in range(100):
        q = haar_quat(rng)
        e = quat_mul(quat_inverse(q), q)
        assert relative_angle(quat_to_matrix(e),
                              RotationMatrix.identity()) < 1e-12
        r = haar_matrix(rng)
        assert relative_angle(matrix_mul(r.transpose(), r),
                              RotationMatrix.identity()) < 1e-12
