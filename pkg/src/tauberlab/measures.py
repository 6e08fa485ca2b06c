"""Discrete (tabulated) measures, their exponential transforms, and fixtures.

A measure is a finite list of atoms (location, mass) with strictly increasing
nonnegative locations and strictly positive masses.  Transforms are computed
by max-shifted summation so that kernels like exp(lam*x) never overflow.

The two-column text format used for ingestion is one atom per line,
``location<TAB>mass`` (whitespace-separated also accepted), lines beginning
with '#' ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import DomainError, EmptyMeasure, MeasureFormatError, ValidationError

__all__ = [
    "TabulatedMeasure",
    "parse_measure_text",
    "load_measure",
    "measure_transform_kohlbecker",
    "measure_transform_kasahara",
    "kohlbecker_panel_bracket",
    "kasahara_panel_bracket",
    "kasahara_via_parts",
    "quantize_cumulative",
    "quantize_tail",
]


@dataclass(frozen=True)
class TabulatedMeasure:
    """Finite atomic measure on [0, inf).

    locations: strictly increasing, >= 0.
    masses: strictly positive, same length.
    """

    locations: tuple[float, ...]
    masses: tuple[float, ...]

    def __post_init__(self):
        locs = np.asarray(self.locations, dtype=float)
        mass = np.asarray(self.masses, dtype=float)
        if locs.shape != mass.shape or locs.ndim != 1:
            raise ValidationError("locations and masses must be 1-d and equal length")
        if locs.size:
            if not np.all(np.isfinite(locs)) or not np.all(np.isfinite(mass)):
                raise ValidationError("atoms must be finite")
            if locs[0] < 0.0:
                raise ValidationError("locations must be >= 0")
            if np.any(np.diff(locs) <= 0.0):
                raise ValidationError("locations must be strictly increasing")
            if np.any(mass <= 0.0):
                raise ValidationError("masses must be strictly positive")
        object.__setattr__(self, "locations", tuple(float(x) for x in locs))
        object.__setattr__(self, "masses", tuple(float(m) for m in mass))

    def __len__(self) -> int:
        return len(self.locations)

    @property
    def total_mass(self) -> float:
        return float(math.fsum(self.masses))

    def mass_above_zero(self) -> float:
        """Total mass on the open half line (0, inf)."""
        return float(
            math.fsum(m for x, m in zip(self.locations, self.masses) if x > 0.0)
        )

    def cumulative(self, x):
        """mu[0, x]: mass at locations <= x (vectorized)."""
        locs = np.asarray(self.locations)
        cum = np.concatenate([[0.0], np.cumsum(self.masses)])
        idx = np.searchsorted(locs, np.asarray(x, dtype=float), side="right")
        return cum[idx]

    def tail(self, x):
        """mu(x, inf): mass at locations strictly greater than x."""
        return self.total_mass - self.cumulative(x)


def parse_measure_text(text: str, source: str = "<string>") -> TabulatedMeasure:
    """Parse the two-column atom format; '#' lines and blank lines ignored."""
    locations: list[float] = []
    masses: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MeasureFormatError(
                f"{source}:{lineno}: expected 'location<TAB>mass', got {raw!r}"
            )
        try:
            loc, mass = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise MeasureFormatError(
                f"{source}:{lineno}: non-numeric field in {raw!r}"
            ) from exc
        if locations and loc <= locations[-1]:
            raise MeasureFormatError(
                f"{source}:{lineno}: locations must be strictly increasing"
            )
        locations.append(loc)
        masses.append(mass)
    try:
        return TabulatedMeasure(tuple(locations), tuple(masses))
    except ValidationError as exc:
        raise MeasureFormatError(f"{source}: {exc}") from exc


def load_measure(path: str | Path) -> TabulatedMeasure:
    p = Path(path)
    return parse_measure_text(p.read_text(encoding="utf-8"), source=str(p))


def _log_sum_shifted(log_terms: np.ndarray) -> float:
    """log(sum(exp(t_i))) via max shift; -inf for an empty/degenerate sum."""
    m = float(np.max(log_terms))
    if not math.isfinite(m):
        return m
    return m + math.log(float(np.sum(np.exp(log_terms - m))))


def _require_atoms(m: TabulatedMeasure) -> None:
    if len(m) == 0:
        raise EmptyMeasure("measure has no atoms")


def measure_transform_kohlbecker(m: TabulatedMeasure, lam: float) -> float:
    """log of sum_i mass_i * exp(-x_i / lam), lam > 0."""
    _require_atoms(m)
    if not lam > 0.0:
        raise DomainError("lam must be positive")
    locs = np.asarray(m.locations)
    log_terms = np.log(np.asarray(m.masses)) - locs / lam
    return _log_sum_shifted(log_terms)


def measure_transform_kasahara(m: TabulatedMeasure, lam: float) -> float:
    """log of sum_i mass_i * exp(lam * x_i), lam >= 0 (finite atom list)."""
    _require_atoms(m)
    if lam < 0.0:
        raise DomainError("lam must be >= 0")
    locs = np.asarray(m.locations)
    log_terms = np.log(np.asarray(m.masses)) + lam * locs
    return _log_sum_shifted(log_terms)


def _left_edges(m: TabulatedMeasure) -> np.ndarray:
    # Panel convention of the quantizers: atom i carries the mass of
    # (x_{i-1}, x_i]; the first panel starts at its own location (zero width)
    # when built by quantize_cumulative, at 0 when built by quantize_tail.
    locs = np.asarray(m.locations)
    return np.concatenate([[locs[0]], locs[:-1]])


def kohlbecker_panel_bracket(m: TabulatedMeasure, lam: float) -> tuple[float, float]:
    """Two-sided bracket of the true transform under right-endpoint quantization.

    The kernel exp(-x/lam) is decreasing in x, so mass placed at a panel's
    right endpoint under-weights it and mass at the left edge over-weights it:

        log_lower = direct transform,  log_upper = transform with left edges.

    Only meaningful for measures produced by :func:`quantize_cumulative`.
    """
    _require_atoms(m)
    if not lam > 0.0:
        raise DomainError("lam must be positive")
    log_mass = np.log(np.asarray(m.masses))
    lower = _log_sum_shifted(log_mass - np.asarray(m.locations) / lam)
    upper = _log_sum_shifted(log_mass - _left_edges(m) / lam)
    return lower, upper


def kasahara_panel_bracket(m: TabulatedMeasure, lam: float) -> tuple[float, float]:
    """Bracket mirror of :func:`kohlbecker_panel_bracket` for kernel exp(lam*x).

    The kernel is increasing, so right-endpoint placement over-weights:
    log_lower uses left edges, log_upper is the direct transform.
    """
    _require_atoms(m)
    if lam < 0.0:
        raise DomainError("lam must be >= 0")
    log_mass = np.log(np.asarray(m.masses))
    lower = _log_sum_shifted(log_mass + lam * _left_edges(m))
    upper = _log_sum_shifted(log_mass + lam * np.asarray(m.locations))
    return lower, upper


def kasahara_via_parts(m: TabulatedMeasure, lam: float) -> float:
    """log M(lam) through the integration-by-parts route.

    Evaluates mu(0,inf) + int_0^inf e^x * mu(x/lam, inf) dx with the integral
    done exactly on the step tail function, panel by panel in shifted log
    space.  For measures with no atom at 0 this equals the direct transform
    up to roundoff; it exercises an independent summation path.
    """
    _require_atoms(m)
    if lam < 0.0:
        raise DomainError("lam must be >= 0")
    locs = np.asarray(m.locations)
    masses = np.asarray(m.masses)
    # Tail value on (x_{i-1}, x_i) is the mass at locations >= x_i.
    tails = np.cumsum(masses[::-1])[::-1]
    edges = np.concatenate([[0.0], locs])
    log_terms = [math.log(m.mass_above_zero())] if m.mass_above_zero() > 0 else []
    for i in range(len(locs)):
        lo, hi = lam * edges[i], lam * locs[i]
        if hi <= lo or tails[i] <= 0.0:
            continue
        # log(T_i * (e^hi - e^lo)) with the difference computed stably.
        log_terms.append(math.log(tails[i]) + hi + math.log1p(-math.exp(lo - hi)))
    if not log_terms:
        return float("-inf")
    return _log_sum_shifted(np.asarray(log_terms))


def _geometric_grid(x_min: float, x_max: float, n: int) -> np.ndarray:
    if not (0.0 < x_min < x_max):
        raise ValidationError("need 0 < x_min < x_max")
    if n < 2:
        raise ValidationError("need at least 2 grid points")
    xs = np.exp(np.linspace(math.log(x_min), math.log(x_max), n))
    xs[0], xs[-1] = x_min, x_max  # exp/log round trip fuzzes the endpoints
    return xs


def quantize_cumulative(
    fn: Callable[[float], float], x_min: float, x_max: float, n: int
) -> TabulatedMeasure:
    """Quantize a cumulative mass function F(x) = mu[0, x] onto a geometric grid.

    Produces an atom at 0 carrying F(0) (the measure's atom at the origin, if
    any) and atoms at grid points x_i carrying F(x_i) - F(x_{i-1}).  Panels
    with zero mass are dropped.
    """
    xs = _geometric_grid(x_min, x_max, n)
    values = np.asarray([float(fn(float(x))) for x in xs])
    f0 = float(fn(0.0))
    if f0 < 0.0 or np.any(np.diff(values) < 0.0) or values[0] < f0:
        raise ValidationError("cumulative function must be nondecreasing and >= 0")
    locations, masses = [], []
    if f0 > 0.0:
        locations.append(0.0)
        masses.append(f0)
    prev = f0
    for x, v in zip(xs, values):
        dm = v - prev
        prev = v
        if dm > 0.0:
            locations.append(float(x))
            masses.append(float(dm))
    return TabulatedMeasure(tuple(locations), tuple(masses))


def quantize_tail(
    fn: Callable[[float], float], x_min: float, x_max: float, n: int
) -> TabulatedMeasure:
    """Quantize a tail mass function G(x) = mu(x, inf) onto a geometric grid.

    Panels are [0, x_min], then geometric up to x_max; atom i sits at the
    panel's right endpoint with mass G(left) - G(right).  The mass G(x_max)
    beyond the grid is omitted; pick x_max large enough that the kernel makes
    it negligible for the lam range of interest.
    """
    xs = _geometric_grid(x_min, x_max, n)
    edges = np.concatenate([[0.0], xs])
    values = np.asarray([float(fn(float(x))) for x in edges])
    if np.any(values < 0.0) or np.any(np.diff(values) > 0.0):
        raise ValidationError("tail function must be nonincreasing and >= 0")
    locations, masses = [], []
    for i in range(1, len(edges)):
        dm = values[i - 1] - values[i]
        if dm > 0.0:
            locations.append(float(edges[i]))
            masses.append(float(dm))
    return TabulatedMeasure(tuple(locations), tuple(masses))
