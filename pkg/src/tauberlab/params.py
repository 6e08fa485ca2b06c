"""Admissible parameters, the dual coefficient, and saddle analysis.

The central object is the parameter vector (a, b, c, offset) describing a
log-power asymptotic ``log P(x) ~ a*x**b`` (as ``x**b -> inf``) together with
the exponential-kernel transform

    f(s) = offset + int_0^inf P(u*s) * exp(c*u) du.

Admissibility requires the two sign conditions

    a*b*(b-1) < 0   and   a*b*c < 0,

which leave exactly three regimes:

    0 < b < 1   =>  a > 0, c < 0, d > 0   (Kohlbecker type)
    b > 1       =>  a < 0, c > 0, d > 0   (Kasahara type)
    b < 0       =>  a < 0, c < 0, d < 0   (de Bruijn type)

Under these conditions the concave saddle function

    h(x) = a*x**b + c*x - d,   x > 0,

has a unique positive maximizer x_peak = (-c/(a*b))**(1/(b-1)) and the dual
coefficient d is fixed by h(x_peak) = 0, i.e. d = a*x_peak**b + c*x_peak,
equivalently d = a*(1-b)*(-c/(a*b))**(b/(b-1)).  On the transform side
``log f(lam) ~ d * lam**(b/(1-b))`` in the regime psi = lam**(b/(1-b)) -> inf.

All functions are pure and all containers frozen, so values can be shared
freely between threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateExponent,
    DomainError,
    InconsistentInputs,
    NumericOverflow,
    OffsetNotAllowed,
    SignConditionViolated,
    ValidationError,
    ZeroRate,
)

__all__ = [
    "Regime",
    "UnifiedParams",
    "SaddlePoint",
    "validate",
    "compute_d",
    "d_variants",
    "saddle_analysis",
    "dual_exponent",
    "primal_exponent",
    "recover_primal",
    "h_eval",
    "s_for_psi",
    "psi_for_s",
    "MAX_ABS_EXPONENT",
    "COEFF_MIN",
    "COEFF_MAX",
]

# Guardrails keeping x_peak and d inside double range; outside we raise
# NumericOverflow instead of returning silent infinities.
MAX_ABS_EXPONENT = 64.0
COEFF_MIN = 1e-8
COEFF_MAX = 1e8


class Regime(enum.Enum):
    """Which classical exponential-type theorem a parameter vector realizes."""

    KOHLBECKER = "kohlbecker"
    DE_BRUIJN = "de-bruijn"
    KASAHARA = "kasahara"


@dataclass(frozen=True)
class UnifiedParams:
    """Validated parameter vector with derived dual quantities.

    Construct through :func:`validate`; direct construction skips every check.

    Attributes:
        a: coefficient of the primal log-power asymptotic.
        b: primal growth exponent, b not in {0, 1}.
        c: transform kernel rate, c != 0.
        offset: additive constant of the transform (0 whenever d < 0).
        d: dual coefficient on the transform side.
        dual_exp: dual exponent b/(1-b).
        regime: regime tag determined by b.
    """

    a: float
    b: float
    c: float
    offset: float
    d: float
    dual_exp: float
    regime: Regime


@dataclass(frozen=True)
class SaddlePoint:
    """Maximizer data of the saddle function h.

    h attains its maximum at ``x_peak`` with value ``h_at_max`` (zero up to
    roundoff by construction of d) and strictly negative ``curvature``
    h''(x_peak) = a*b*(b-1)*x_peak**(b-2).
    """

    x_peak: float
    h_at_max: float
    curvature: float


def _require_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValidationError(f"{name} must be finite, got {v!r}")


def _check_admissible(a: float, b: float, c: float) -> None:
    """Raise unless (a, b, c) satisfies both sign conditions and guardrails."""
    _require_finite(a=a, b=b, c=c)
    if b == 0.0 or b == 1.0:
        raise DegenerateExponent(f"exponent b must avoid {{0, 1}}, got b={b:g}")
    if c == 0.0:
        raise ZeroRate("transform rate c must be nonzero")
    if abs(b) > MAX_ABS_EXPONENT:
        raise NumericOverflow(
            f"|b| = {abs(b):g} exceeds the supported range {MAX_ABS_EXPONENT:g}"
        )
    for name, v in (("a", a), ("c", c)):
        if not (COEFF_MIN <= abs(v) <= COEFF_MAX):
            raise NumericOverflow(
                f"|{name}| = {abs(v):g} outside supported range "
                f"[{COEFF_MIN:g}, {COEFF_MAX:g}]"
            )
    concavity = a * b * (b - 1.0)
    if not concavity < 0.0:
        raise SignConditionViolated("a*b*(b-1)", concavity, a, b, c)
    kernel_sign = a * b * c
    if not kernel_sign < 0.0:
        raise SignConditionViolated("a*b*c", kernel_sign, a, b, c)


def _x_peak(a: float, b: float, c: float) -> float:
    # -c/(a*b) > 0 is guaranteed by a*b*c < 0.
    base = -c / (a * b)
    x = base ** (1.0 / (b - 1.0))
    if not (math.isfinite(x) and x > 0.0):
        raise NumericOverflow(
            f"saddle location (-c/(a*b))**(1/(b-1)) not representable "
            f"(a={a:g}, b={b:g}, c={c:g})"
        )
    return x


def compute_d(a: float, b: float, c: float) -> float:
    """Dual coefficient d = a*(1-b)*(-c/(a*b))**(b/(b-1)).

    This is the form consistent with the classical coefficient identities and
    with the value form d = a*x_peak**b + c*x_peak; see :func:`d_variants`
    for the audit of the alternative reading with reciprocal base.
    """
    _check_admissible(a, b, c)
    base = -c / (a * b)
    d = a * (1.0 - b) * base ** (b / (b - 1.0))
    if not math.isfinite(d) or d == 0.0:
        raise NumericOverflow(
            f"dual coefficient not representable for (a={a:g}, b={b:g}, c={c:g})"
        )
    return d


def d_variants(a: float, b: float, c: float) -> tuple[float, float]:
    """Audit pair (d_stated, d_consistent) of the two dual-coefficient readings.

    Both share the prefactor a*(1-b) and the same base magnitude -a*b/c > 0 but
    differ in which exponent is applied:

        d_stated     = a*(1-b) * (-a*b/c)**(b/(b-1))
        d_consistent = a*(1-b) * (-a*b/c)**(b/(1-b))

    The two coincide exactly when |-a*b/c| = 1.  ``d_consistent`` equals
    :func:`compute_d` and is the variant certified by the quadrature engine.
    """
    _check_admissible(a, b, c)
    base = -(a * b) / c
    pref = a * (1.0 - b)
    stated = pref * base ** (b / (b - 1.0))
    consistent = pref * base ** (b / (1.0 - b))
    if not (math.isfinite(stated) and math.isfinite(consistent)):
        raise NumericOverflow(
            f"dual-coefficient variants overflow for (a={a:g}, b={b:g}, c={c:g})"
        )
    return stated, consistent


def _regime_for(b: float) -> Regime:
    if 0.0 < b < 1.0:
        return Regime.KOHLBECKER
    if b > 1.0:
        return Regime.KASAHARA
    return Regime.DE_BRUIJN


def validate(a: float, b: float, c: float, offset: float = 0.0) -> UnifiedParams:
    """Validate (a, b, c, offset) and derive d, the dual exponent and regime.

    Raises:
        DegenerateExponent: b in {0, 1}.
        ZeroRate: c = 0.
        SignConditionViolated: a*b*(b-1) >= 0 or a*b*c >= 0.
        NumericOverflow: magnitudes outside the guardrails, or derived
            quantities not representable.
        OffsetNotAllowed: offset != 0 while d < 0.
    """
    _check_admissible(a, b, c)
    _require_finite(offset=offset)
    d = compute_d(a, b, c)
    if d < 0.0 and offset != 0.0:
        raise OffsetNotAllowed(
            f"additive offset must be 0 when d < 0 (d={d:g}, offset={offset:g})"
        )
    return UnifiedParams(
        a=float(a),
        b=float(b),
        c=float(c),
        offset=float(offset),
        d=d,
        dual_exp=dual_exponent(b),
        regime=_regime_for(b),
    )


# Relative tolerances for the closed-form saddle identities; roughly 100x unit
# roundoff under the condition numbers allowed by the guardrails.
_H_AT_MAX_RTOL = 1e-10
_H_GRID_RTOL = 1e-12
_SADDLE_GRID_DECADES = 2.0
_SADDLE_GRID_POINTS = 64


def saddle_analysis(p: UnifiedParams) -> SaddlePoint:
    """Closed-form saddle data of h, with a numerical non-positivity sweep.

    Checks that h(x_peak) vanishes within 1e-10*|d|, that the curvature is
    strictly negative, and that h <= 1e-12*|d| on 64 log-spaced points in
    [x_peak/100, 100*x_peak].
    """
    x_peak = _x_peak(p.a, p.b, p.c)
    h_at_max = p.a * x_peak**p.b + p.c * x_peak - p.d
    curvature = p.a * p.b * (p.b - 1.0) * x_peak ** (p.b - 2.0)
    scale = abs(p.d)
    if not math.isfinite(curvature) or curvature >= 0.0:
        raise NumericOverflow(
            f"saddle curvature {curvature!r} not strictly negative; parameters "
            f"are outside the numerically trustworthy range"
        )
    if abs(h_at_max) > _H_AT_MAX_RTOL * scale:
        raise NumericOverflow(
            f"h(x_peak) = {h_at_max:g} exceeds {_H_AT_MAX_RTOL:g}*|d|; closed "
            f"forms drowned by roundoff"
        )
    grid = x_peak * np.logspace(
        -_SADDLE_GRID_DECADES, _SADDLE_GRID_DECADES, _SADDLE_GRID_POINTS
    )
    h_values = p.a * grid**p.b + p.c * grid - p.d
    if np.any(h_values > _H_GRID_RTOL * scale):
        worst = float(np.max(h_values))
        raise NumericOverflow(
            f"h exceeds {_H_GRID_RTOL:g}*|d| on the sample grid (max {worst:g})"
        )
    return SaddlePoint(x_peak=x_peak, h_at_max=h_at_max, curvature=curvature)


def dual_exponent(b: float) -> float:
    """Map the primal exponent b to the transform-side exponent b/(1-b)."""
    _require_finite(b=b)
    if b == 0.0 or b == 1.0:
        raise DegenerateExponent(f"dual exponent undefined for b={b:g}")
    return b / (1.0 - b)


def primal_exponent(e: float) -> float:
    """Inverse of :func:`dual_exponent`: e/(1+e)."""
    _require_finite(e=e)
    if e == -1.0:
        raise DegenerateExponent("primal exponent undefined for e=-1")
    return e / (1.0 + e)


def recover_primal(d: float, e: float, c: float) -> tuple[float, float]:
    """Invert (d, dual exponent e, rate c) back to the primal pair (a, b).

    Uses b = e/(1+e), the positive stationary point v0 = d*b/(c*(b-1)) and
    a = (d - c*v0)/v0**b.  Round-trips with :func:`compute_d` and
    :func:`dual_exponent` to about 1e-9 relative.

    Raises:
        InconsistentInputs: v0 <= 0 or the recovered triple fails validation.
    """
    _require_finite(d=d, e=e, c=c)
    b = primal_exponent(e)
    if b == 0.0 or b == 1.0:
        raise InconsistentInputs(f"recovered exponent b={b:g} is degenerate")
    v0 = d * b / (c * (b - 1.0))
    if not (math.isfinite(v0) and v0 > 0.0):
        raise InconsistentInputs(
            f"stationary point v0 = d*b/(c*(b-1)) = {v0!r} must be positive"
        )
    a = (d - c * v0) / v0**b
    try:
        _check_admissible(a, b, c)
    except ValidationError as exc:
        raise InconsistentInputs(
            f"recovered triple (a={a:g}, b={b:g}, c={c:g}) inadmissible: {exc}"
        ) from exc
    return a, b


def h_eval(p: UnifiedParams, x):
    """Evaluate h(x) = a*x**b + c*x - d for x > 0 (scalar or array)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError("h is defined for finite x > 0 only")
    values = p.a * arr**p.b + p.c * arr - p.d
    return float(values) if np.isscalar(x) or arr.ndim == 0 else values


def s_for_psi(b: float, psi: float) -> float:
    """Transform argument s corresponding to the regime variable psi."""
    if psi <= 0.0:
        raise DomainError("psi must be positive")
    return psi ** ((1.0 - b) / b)


def psi_for_s(b: float, s: float) -> float:
    """Regime variable psi = s**(b/(1-b)) for transform argument s."""
    if s <= 0.0:
        raise DomainError("s must be positive")
    return s ** (b / (1.0 - b))
