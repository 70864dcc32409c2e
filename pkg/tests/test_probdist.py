import numpy as np
import pytest

from rotrepr import (
    Bingham,
    DegeneracyError,
    DegenerateInputError,
    MatrixFisher,
    NonUniqueModeError,
    RotationMatrix,
    UnitQuaternion,
    bingham_log_density_unnorm,
    bingham_mode,
    fisher_concentration,
    fisher_log_density_unnorm,
    fisher_mode,
    validate,
)
from conftest import haar_matrix, haar_quat


# ---------------------------------------------------------------------------
# matrix Fisher


def test_fisher_density_zero_parameter(rng):
    d = MatrixFisher(np.zeros((3, 3)))
    for _ in range(10):
        assert fisher_log_density_unnorm(d, haar_matrix(rng)) == 0.0


def test_fisher_density_scaled_identity(rng):
    d = MatrixFisher(3.0 * np.eye(3))
    ident = RotationMatrix.identity()
    assert fisher_log_density_unnorm(d, ident) == pytest.approx(9.0)
    for _ in range(50):
        r = haar_matrix(rng)
        assert fisher_log_density_unnorm(d, r) == pytest.approx(3.0 * r.trace())
        assert fisher_log_density_unnorm(d, r) <= 9.0 + 1e-12


def test_fisher_mode_identity():
    assert fisher_mode(MatrixFisher(5.0 * np.eye(3))) == RotationMatrix.identity()


def test_fisher_mode_recovers_construction(rng):
    for _ in range(100):
        r0 = haar_matrix(rng)
        mode = fisher_mode(MatrixFisher(5.0 * r0.as_array()))
        from rotrepr import relative_angle
        assert relative_angle(mode, r0) < 1e-12


def test_fisher_mode_det_correction_dominates(rng):
    d = MatrixFisher(np.diag([1.0, 1.0, -1.0]))
    mode = fisher_mode(d)
    assert validate(mode).ok
    best = fisher_log_density_unnorm(d, mode)
    for _ in range(10000):
        assert fisher_log_density_unnorm(d, haar_matrix(rng)) <= best + 1e-9


def test_fisher_mode_dominance_random_parameter(rng):
    f = np.array([[rng.normal() for _ in range(3)] for _ in range(3)])
    d = MatrixFisher(f)
    best = fisher_log_density_unnorm(d, fisher_mode(d))
    for _ in range(10000):
        assert fisher_log_density_unnorm(d, haar_matrix(rng)) <= best + 1e-9


def test_fisher_mode_rank_deficient_reports_rank():
    with pytest.raises(DegeneracyError, match="rank 2"):
        fisher_mode(MatrixFisher(np.diag([3.0, 2.0, 0.0])))


def test_fisher_concentration_examples(rng):
    assert fisher_concentration(MatrixFisher(np.diag([3.0, 2.0, 1.0]))) == \
        pytest.approx((3.0, 2.0, 1.0))
    assert fisher_concentration(MatrixFisher(np.zeros((3, 3)))) == (0.0, 0.0, 0.0)
    r0 = haar_matrix(rng)
    assert fisher_concentration(MatrixFisher(5.0 * r0.as_array())) == \
        pytest.approx((5.0, 5.0, 5.0))


def test_fisher_left_invariance(rng):
    # tr((QF)^T (QR)) = tr(F^T R)
    for _ in range(50):
        f = np.array([[rng.normal() for _ in range(3)] for _ in range(3)])
        q = haar_matrix(rng).as_array()
        r = haar_matrix(rng)
        lhs = fisher_log_density_unnorm(
            MatrixFisher(q @ f), RotationMatrix.from_array(q @ r.as_array()))
        rhs = fisher_log_density_unnorm(MatrixFisher(f), r)
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_fisher_mode_scale_invariance(rng):
    from rotrepr import relative_angle
    for lam in (0.5, 2.0, 10.0):
        f = np.array([[rng.normal() for _ in range(3)] for _ in range(3)])
        assert relative_angle(fisher_mode(MatrixFisher(f)),
                              fisher_mode(MatrixFisher(lam * f))) < 1e-12


def test_fisher_rejects_nonfinite():
    with pytest.raises(DegenerateInputError):
        MatrixFisher(np.full((3, 3), np.nan))


# ---------------------------------------------------------------------------
# Bingham


def _bingham(rng=None, m=None, z=(0.0, -1.0, -2.0, -3.0)):
    if m is None:
        m = np.eye(4)
    return Bingham(m, z)


def _random_orthogonal4(rng):
    a = np.array([[rng.normal() for _ in range(4)] for _ in range(4)])
    q, _ = np.linalg.qr(a)
    return q


def test_bingham_antipodal_symmetry_exact(rng):
    b = _bingham(m=_random_orthogonal4(rng))
    for _ in range(10000):
        q = haar_quat(rng)
        assert bingham_log_density_unnorm(b, q) == \
            bingham_log_density_unnorm(b, -q)


def test_bingham_axis_values():
    b = _bingham()
    assert bingham_log_density_unnorm(b, UnitQuaternion(1, 0, 0, 0)) == 0.0
    assert bingham_log_density_unnorm(b, UnitQuaternion(0, 0, 0, 1)) == \
        pytest.approx(-3.0)


def test_bingham_mode_examples():
    assert bingham_mode(_bingham()) == UnitQuaternion(1.0, 0.0, 0.0, 0.0)
    m = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 0.0],
    ])  # first column (0,0,0,1)
    b = Bingham(m, (0.0, -1.0, -1.0, -1.0))
    assert bingham_mode(b) == UnitQuaternion(0.0, 0.0, 0.0, 1.0)


def test_bingham_mode_dominance(rng):
    b = _bingham(m=_random_orthogonal4(rng), z=(0.0, -0.5, -2.0, -7.0))
    best = bingham_log_density_unnorm(b, bingham_mode(b))
    for _ in range(10000):
        q = haar_quat(rng)
        assert bingham_log_density_unnorm(b, q) <= best + 1e-9


def test_bingham_mode_tie_is_non_unique():
    with pytest.raises(NonUniqueModeError):
        bingham_mode(_bingham(z=(0.0, 0.0, -1.0, -2.0)))


def test_bingham_parameter_validation():
    with pytest.raises(DegenerateInputError):
        Bingham(np.eye(4) * 2.0, (0.0, -1.0, -2.0, -3.0))  # not orthogonal
    with pytest.raises(DegenerateInputError):
        Bingham(np.eye(4), (1.0, -1.0, -2.0, -3.0))  # z0 != 0
    with pytest.raises(DegenerateInputError):
        Bingham(np.eye(4), (0.0, -2.0, -1.0, -3.0))  # not sorted
