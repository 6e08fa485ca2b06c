"""Empirical growth-index estimation and end-to-end equivalence verification.

Two estimators live here:

* the log-quotient index tau_hat(x) = log U(x) / log(x), which converges to
  the growth index exactly for the class of functions pinched between
  x**(tau-eps) and x**(tau+eps) for every eps > 0, together with the
  finite-grid trajectory diagnostic for that pinching;
* a least-squares fit of log|log f| against log(lambda) over the tail of a
  geometric sweep, recovering the transform-side exponent and coefficient.

`verify_equivalence` ties the machinery together: sweep the transform over a
geometric psi grid, compare against the closed-form predictions, fit the
exponent, and map the fit back to the primal parameters.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadRange,
    DegenerateWindow,
    DomainError,
    InconsistentInputs,
    InsufficientSpan,
    SignChange,
    TauberError,
    ValidationError,
)
from .params import UnifiedParams, dual_exponent, recover_primal
from .targets import TargetFunction
from .transform import TransformSample, predict_log_f, sample_at_psi

__all__ = [
    "EvalGrid",
    "make_grid",
    "AsymptoticFit",
    "fit_exponent",
    "CkIndexResult",
    "ck_index",
    "TrendVerdict",
    "EpsilonCheck",
    "ClassMDiagnostic",
    "class_m_check",
    "ToleranceProfile",
    "CheckResult",
    "EquivalenceReport",
    "evaluate_sweep",
    "verify_equivalence",
]

_MIN_GRID_POINTS = 8


@dataclass(frozen=True)
class EvalGrid:
    """Strictly increasing geometric psi grid with at least 8 points."""

    psi_values: tuple[float, ...]

    def __post_init__(self):
        v = np.asarray(self.psi_values)
        if v.size < _MIN_GRID_POINTS:
            raise BadRange(f"grid needs >= {_MIN_GRID_POINTS} points, got {v.size}")
        if v[0] < 1.0 or np.any(np.diff(v) <= 0.0):
            raise BadRange("psi values must be strictly increasing and >= 1")
        ratios = v[1:] / v[:-1]
        if np.max(ratios) - np.min(ratios) > 1e-12 * np.max(ratios):
            raise BadRange("psi values must be geometrically spaced")

    def __len__(self) -> int:
        return len(self.psi_values)

    @property
    def ratio(self) -> float:
        return self.psi_values[1] / self.psi_values[0]


def make_grid(psi_min: float, psi_max: float, n: int) -> EvalGrid:
    """n geometric points from psi_min to psi_max inclusive, psi_min >= 1."""
    if n < _MIN_GRID_POINTS:
        raise BadRange(f"n must be >= {_MIN_GRID_POINTS}, got {n}")
    if not (1.0 <= psi_min < psi_max):
        raise BadRange(
            f"need 1 <= psi_min < psi_max, got psi_min={psi_min:g}, psi_max={psi_max:g}"
        )
    points = np.exp(np.linspace(math.log(psi_min), math.log(psi_max), n))
    points[0], points[-1] = psi_min, psi_max
    return EvalGrid(tuple(float(p) for p in points))


@dataclass(frozen=True)
class AsymptoticFit:
    """Estimated transform-side exponent and coefficient.

    residual is the maximum absolute deviation of the fitted line from
    log|log f| over the tail window [window[0], window[1]) in sample indices.
    """

    exponent_hat: float
    coefficient_hat: float
    residual: float
    window: tuple[int, int]


def fit_exponent(samples: list[TransformSample]) -> AsymptoticFit:
    """Least-squares exponent of log f ~ coeff * lambda**exponent on the tail.

    Fits log|log f| against log(lambda=s) over the last half of the samples
    (samples ordered along the sweep).  The sign of log f is reattached to the
    coefficient, which is the tail mean of log_f / lambda**exponent_hat.

    Raises:
        DegenerateWindow: fewer than 8 samples or window too small.
        SignChange: log f changes sign or vanishes inside the window.
    """
    n = len(samples)
    if n < _MIN_GRID_POINTS:
        raise DegenerateWindow(f"need >= {_MIN_GRID_POINTS} samples, got {n}")
    start = n - n // 2
    window = samples[start:]
    if len(window) < 2:
        raise DegenerateWindow("tail window must contain at least 2 samples")
    log_f = np.asarray([t.log_f for t in window])
    if np.any(log_f == 0.0) or np.any(np.isnan(log_f)):
        raise SignChange("log f vanishes inside the fit window")
    signs = np.sign(log_f)
    if np.any(signs != signs[0]):
        raise SignChange("log f changes sign inside the fit window")
    lam = np.asarray([t.s for t in window])
    x = np.log(lam)
    if np.ptp(x) == 0.0:
        raise DegenerateWindow("lambda constant across the fit window")
    y = np.log(np.abs(log_f))
    xc = x - x.mean()
    slope = float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))
    intercept = float(y.mean() - slope * x.mean())
    residual = float(np.max(np.abs(y - (intercept + slope * x))))
    coefficient = float(np.mean(log_f / lam**slope))
    return AsymptoticFit(
        exponent_hat=slope,
        coefficient_hat=coefficient,
        residual=residual,
        window=(start, n),
    )


@dataclass(frozen=True)
class CkIndexResult:
    """Pointwise log-quotient index estimates with a convergence summary."""

    points: tuple[tuple[float, float], ...]
    tau_at_top: float
    spread_last_quarter: float


def ck_index(samples: list[tuple[float, float]]) -> CkIndexResult:
    """tau_hat(x) = log(U(x)) / log(x) for samples (x > 1, U > 0).

    The summary reports tau_hat at the largest x and the spread (max - min)
    over the last quarter of the samples, samples taken in increasing x.
    """
    if not samples:
        raise DomainError("need at least one sample")
    points = []
    for x, u in samples:
        if not x > 1.0:
            raise DomainError(f"x must be > 1, got {x:g}")
        if not u > 0.0:
            raise DomainError(f"U must be > 0, got {u:g}")
        points.append((float(x), math.log(u) / math.log(x)))
    points.sort(key=lambda p: p[0])
    taus = [t for _, t in points]
    quarter = max(1, len(points) // 4)
    tail = taus[-quarter:]
    return CkIndexResult(
        points=tuple(points),
        tau_at_top=taus[-1],
        spread_last_quarter=max(tail) - min(tail),
    )


class TrendVerdict(enum.Enum):
    TENDS_TO_ZERO = "tends-to-zero"
    TENDS_TO_INFINITY = "tends-to-infinity"
    INCONCLUSIVE = "inconclusive"


# Deterministic finite-grid limit rule: a trajectory "tends to zero" when its
# last quarter is strictly decreasing and the final value has dropped below
# 1e-2 of the first value; mirrored for "tends to infinity".
_TREND_FACTOR_LOG = math.log(100.0)


def _trend_verdict(log_traj: np.ndarray) -> TrendVerdict:
    quarter = max(2, len(log_traj) // 4)
    tail = log_traj[-quarter:]
    decreasing = bool(np.all(np.diff(tail) < 0.0))
    increasing = bool(np.all(np.diff(tail) > 0.0))
    drop = log_traj[0] - log_traj[-1]
    if decreasing and drop > _TREND_FACTOR_LOG:
        return TrendVerdict.TENDS_TO_ZERO
    if increasing and -drop > _TREND_FACTOR_LOG:
        return TrendVerdict.TENDS_TO_INFINITY
    return TrendVerdict.INCONCLUSIVE


@dataclass(frozen=True)
class EpsilonCheck:
    """Trajectories U/x**(tau+eps) and U/x**(tau-eps) with their verdicts."""

    epsilon: float
    upper_log_trajectory: tuple[float, ...]
    lower_log_trajectory: tuple[float, ...]
    upper_verdict: TrendVerdict
    lower_verdict: TrendVerdict

    @property
    def passed(self) -> bool:
        return (
            self.upper_verdict is TrendVerdict.TENDS_TO_ZERO
            and self.lower_verdict is TrendVerdict.TENDS_TO_INFINITY
        )


@dataclass(frozen=True)
class ClassMDiagnostic:
    """Index diagnostic: is U consistent with pinching index tau?"""

    tau: float
    tau_sequence: tuple[tuple[float, float], ...]
    epsilon_checks: tuple[EpsilonCheck, ...]

    @property
    def consistent(self) -> bool:
        return all(chk.passed for chk in self.epsilon_checks)


_MIN_SPAN_DECADES = 3.0


def class_m_check(
    samples: list[tuple[float, float]],
    tau: float,
    epsilons: tuple[float, ...] = (0.5, 1.0),
) -> ClassMDiagnostic:
    """Finite-grid check of U(x)/x**(tau+eps) -> 0 and U(x)/x**(tau-eps) -> inf.

    Requires at least 8 samples spanning at least 3 decades in x.  Verdicts
    follow the deterministic trend rule, so results are reproducible.
    """
    if len(samples) < _MIN_GRID_POINTS:
        raise InsufficientSpan(f"need >= {_MIN_GRID_POINTS} samples, got {len(samples)}")
    ck = ck_index(samples)  # also validates x > 1, U > 0
    order = sorted(range(len(samples)), key=lambda i: samples[i][0])
    xs = np.asarray([samples[i][0] for i in order], dtype=float)
    us = np.asarray([samples[i][1] for i in order], dtype=float)
    if xs[-1] / xs[0] < 10.0**_MIN_SPAN_DECADES:
        raise InsufficientSpan(
            f"samples span {math.log10(xs[-1] / xs[0]):.2f} decades, need >= "
            f"{_MIN_SPAN_DECADES:g}"
        )
    log_u = np.log(us)
    log_x = np.log(xs)
    checks = []
    for eps in epsilons:
        if not eps > 0.0:
            raise ValidationError("epsilons must be positive")
        upper = log_u - (tau + eps) * log_x
        lower = log_u - (tau - eps) * log_x
        checks.append(
            EpsilonCheck(
                epsilon=float(eps),
                upper_log_trajectory=tuple(float(v) for v in upper),
                lower_log_trajectory=tuple(float(v) for v in lower),
                upper_verdict=_trend_verdict(upper),
                lower_verdict=_trend_verdict(lower),
            )
        )
    return ClassMDiagnostic(
        tau=float(tau),
        tau_sequence=ck.points,
        epsilon_checks=tuple(checks),
    )


@dataclass(frozen=True)
class ToleranceProfile:
    """Pass/fail thresholds for the equivalence verification runs.

    ratio bounds apply to |log f / (d*psi) - 1| at psi_mid and at the grid
    top; corrected_abs_top bounds |log f - corrected prediction| in nats at
    the top; exponent/inverse bounds are relative gaps of the fitted exponent
    and of the recovered primal parameters.
    """

    psi_mid: float = 100.0
    ratio_rtol_mid: float = 0.07
    ratio_rtol_top: float = 0.015
    corrected_abs_top: float = 0.2
    exponent_rtol: float = 0.03
    inverse_rtol: float = 0.10
    require_monotone: bool = True
    quad_tol: float = 1e-8


@dataclass(frozen=True)
class CheckResult:
    """One named verification check; limit is None for informational rows."""

    name: str
    value: float
    limit: float | None
    passed: bool | None


@dataclass(frozen=True)
class EquivalenceReport:
    """Everything a verification run produced, including partial results."""

    params: UnifiedParams
    target_label: str
    grid: EvalGrid
    profile: ToleranceProfile
    samples: tuple[TransformSample, ...]
    predictions_leading: tuple[float, ...]
    predictions_corrected: tuple[float, ...]
    ratios: tuple[float, ...]
    mid_sample: TransformSample | None
    fit: AsymptoticFit | None
    a_hat: float | None
    b_hat: float | None
    checks: tuple[CheckResult, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.passed is not None) and not any(
            c.passed is None and c.limit is not None for c in self.checks
        )


def evaluate_sweep(
    p: UnifiedParams,
    t: TargetFunction,
    grid: EvalGrid,
    quad_tol: float = 1e-8,
) -> list[TransformSample]:
    """log f across the psi grid (each point an independent pure evaluation)."""
    return [sample_at_psi(p, t, psi, tol=quad_tol) for psi in grid.psi_values]


def _target_matches(p: UnifiedParams, t: TargetFunction) -> bool:
    b = t.power_exponent
    a = getattr(t, "a", None)
    return b is not None and a is not None and a == p.a and b == p.b


def verify_equivalence(
    p: UnifiedParams,
    t: TargetFunction,
    grid: EvalGrid,
    profile: ToleranceProfile = ToleranceProfile(),
) -> EquivalenceReport:
    """Sweep, fit, and check the two-sided equivalence numerically.

    Forward direction: the sweep's log f must track d*psi within the profile's
    ratio bounds and approach it monotonically; the fitted exponent must match
    b/(1-b).  Inverse direction: mapping (coefficient_hat, exponent_hat, c)
    back through the stationary-point inversion must recover (a, b).

    The report always carries the full sample table; failed stages are
    recorded as failed checks instead of raising.
    """
    if not _target_matches(p, t):
        raise InconsistentInputs(
            "target log-amplitude is not the validated (a, b) power"
        )
    samples = evaluate_sweep(p, t, grid, quad_tol=profile.quad_tol)
    lead = tuple(predict_log_f(p, s.psi, "leading") for s in samples)
    corr = tuple(predict_log_f(p, s.psi, "corrected") for s in samples)
    ratios = tuple(s.log_f / ld for s, ld in zip(samples, lead))
    notes: list[str] = []
    if not all(s.tol_met for s in samples):
        notes.append("quadrature tolerance not met on some samples")

    checks: list[CheckResult] = []
    mid_sample = None
    psi_lo, psi_hi = grid.psi_values[0], grid.psi_values[-1]
    if psi_lo <= profile.psi_mid <= psi_hi:
        mid_sample = sample_at_psi(p, t, profile.psi_mid, tol=profile.quad_tol)
        mid_ratio = mid_sample.log_f / (p.d * profile.psi_mid)
        checks.append(
            CheckResult(
                name=f"ratio_dev_at_psi_{profile.psi_mid:g}",
                value=abs(mid_ratio - 1.0),
                limit=profile.ratio_rtol_mid,
                passed=abs(mid_ratio - 1.0) <= profile.ratio_rtol_mid,
            )
        )
    else:
        notes.append(f"psi_mid={profile.psi_mid:g} outside grid; mid check skipped")

    top_dev = abs(ratios[-1] - 1.0)
    checks.append(
        CheckResult(
            name=f"ratio_dev_at_psi_{psi_hi:g}",
            value=top_dev,
            limit=profile.ratio_rtol_top,
            passed=top_dev <= profile.ratio_rtol_top,
        )
    )
    corr_gap = abs(samples[-1].log_f - corr[-1])
    checks.append(
        CheckResult(
            name="corrected_gap_at_top",
            value=corr_gap,
            limit=profile.corrected_abs_top,
            passed=corr_gap <= profile.corrected_abs_top,
        )
    )
    if profile.require_monotone:
        half = len(samples) - len(samples) // 2
        devs = np.abs(np.asarray(ratios[half - 1 :]) - 1.0)
        monotone = bool(np.all(np.diff(devs) < 0.0))
        checks.append(
            CheckResult(
                name="monotone_ratio_last_half",
                value=float(np.max(np.diff(devs))) if len(devs) > 1 else 0.0,
                limit=0.0,
                passed=monotone,
            )
        )

    fit = None
    a_hat = b_hat = None
    try:
        fit = fit_exponent(samples)
    except TauberError as exc:
        notes.append(f"fit failed: {exc}")
        checks.append(CheckResult("exponent_rel_gap", math.nan, profile.exponent_rtol, False))
    if fit is not None:
        target_exp = dual_exponent(p.b)
        exp_gap = abs(fit.exponent_hat - target_exp) / abs(target_exp)
        checks.append(
            CheckResult(
                name="exponent_rel_gap",
                value=exp_gap,
                limit=profile.exponent_rtol,
                passed=exp_gap <= profile.exponent_rtol,
            )
        )
        coeff_gap = abs(fit.coefficient_hat - p.d) / abs(p.d)
        checks.append(CheckResult("coefficient_rel_gap", coeff_gap, None, None))
        try:
            a_hat, b_hat = recover_primal(fit.coefficient_hat, fit.exponent_hat, p.c)
            a_gap = abs(a_hat - p.a) / abs(p.a)
            b_gap = abs(b_hat - p.b) / abs(p.b)
            checks.append(
                CheckResult(
                    "inverse_a_rel_gap",
                    a_gap,
                    profile.inverse_rtol,
                    a_gap <= profile.inverse_rtol,
                )
            )
            checks.append(
                CheckResult(
                    "inverse_b_rel_gap",
                    b_gap,
                    profile.inverse_rtol,
                    b_gap <= profile.inverse_rtol,
                )
            )
        except TauberError as exc:
            notes.append(f"inverse map failed: {exc}")
            checks.append(CheckResult("inverse_a_rel_gap", math.nan, profile.inverse_rtol, False))

    return EquivalenceReport(
        params=p,
        target_label=t.label(),
        grid=grid,
        profile=profile,
        samples=tuple(samples),
        predictions_leading=lead,
        predictions_corrected=corr,
        ratios=ratios,
        mid_sample=mid_sample,
        fit=fit,
        a_hat=a_hat,
        b_hat=b_hat,
        checks=tuple(checks),
        notes=tuple(notes),
    )
