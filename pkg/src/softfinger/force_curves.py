"""Pressure-to-pressing-force curves and the plate-gap design sweep.

The pressing force F between the locking plates comes from an external FEA
of the inflating tube and is ingested here as per-gap sampled curves
(columns d_mm, pressure_mpa, force_n). The module interpolates the curves,
converts force to holding-moment bands over a friction range, and sweeps
the gap parameter d against a two-point stiffness profile:

  soft:  at low pressure the unit must still be compliant, so the upper
         band edge must stay at or below a small moment threshold;
  grasp: at working pressure the lower band edge must exceed the moment
         the grasp requires.

The selected design is the smallest d passing both (softer low-pressure
behavior preferred). Below a curve's first sample the plates have not yet
contacted and the force is zero; above its last sample the module refuses
to extrapolate.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Mapping, Sequence

import numpy as np

from .core_types import ForceCurve, LockGeometry, SoftFingerError
from .lock_model import amplification_factor, lever_integral

BUNDLED_CURVES = Path(__file__).parent / "data" / "interlock_force_curves.csv"

# Friction range for 100% infill printed plates; band endpoints suffice
# because the holding moment is monotone in mu.
MU_RANGE = (0.4, 0.7)


class CurveFormatError(SoftFingerError):
    """Malformed curve CSV; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class CurveValidationError(SoftFingerError):
    """Parsed rows violate a curve invariant."""


class CurveRangeError(SoftFingerError):
    """Pressure above the last sampled point; extrapolation is refused."""


@dataclass(frozen=True)
class CurveSet:
    """Force curves keyed by plate gap d in mm, plus a provenance label."""

    curves: Mapping[float, ForceCurve]
    provenance: str = ""

    def __post_init__(self) -> None:
        for d, curve in self.curves.items():
            if not d > 0.0:
                raise ValueError(f"d values must be > 0, got {d!r}")
            if curve.d_mm != d:
                raise ValueError(f"curve keyed {d!r} labels itself d={curve.d_mm!r}")

    @property
    def d_values(self) -> tuple[float, ...]:
        return tuple(sorted(self.curves))

    def __getitem__(self, d_mm: float) -> ForceCurve:
        return self.curves[d_mm]


@dataclass(frozen=True)
class StiffnessProfile:
    """Two-point variable-stiffness requirement, pressures in MPa and
    moment thresholds in Nm."""

    soft_pressure: float
    soft_max_moment: float
    grasp_pressure: float
    grasp_min_moment: float

    def __post_init__(self) -> None:
        if not self.soft_pressure < self.grasp_pressure:
            raise ValueError(
                f"soft_pressure must be < grasp_pressure, got "
                f"{self.soft_pressure!r} vs {self.grasp_pressure!r}")
        if self.soft_max_moment < 0.0 or self.grasp_min_moment < 0.0:
            raise ValueError("moment thresholds must be >= 0")


def default_stiffness_profile() -> StiffnessProfile:
    """Soft below 0.75 MPa, grasp-capable at 1.5 MPa with more than 0.6 Nm.

    The 0.2 Nm soft threshold is not a measured value; it concretizes
    'sufficiently small' well below the 0.6 Nm requirement and can be
    overridden in config.
    """
    return StiffnessProfile(
        soft_pressure=0.75,
        soft_max_moment=0.2,
        grasp_pressure=1.5,
        grasp_min_moment=0.6,
    )


_REQUIRED_COLUMNS = ("d_mm", "pressure_mpa", "force_n")
_VALUE_KINDS = ("force_n", "mmax_nm")


def _parse_float(raw: str, column: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise CurveFormatError(
            f"column {column}: cannot parse {raw!r} as a number", line) from None


def load_curve_set(source: str | Path | IO[str],
                   provenance: str | None = None,
                   conversion_geometry: LockGeometry | None = None,
                   conversion_mu: float | None = None) -> CurveSet:
    """Read a curve CSV into a validated CurveSet.

    Format: UTF-8, '#' comment lines allowed, header row with columns
    d_mm, pressure_mpa, force_n and optionally value_kind. Rows may appear
    in any order; they are grouped by d_mm and sorted by pressure.

    value_kind defaults to force_n. Rows marked mmax_nm carry a holding
    moment instead of a force and need conversion_geometry (and optionally
    conversion_mu, default that geometry's mu) to back-compute the force
    through amplification * D / (a*b); without a geometry such rows raise
    CurveValidationError rather than guessing.

    Raises CurveFormatError with a line number for parse problems and
    CurveValidationError for invariant violations (duplicate pressure,
    negative force, fewer than two samples).
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        with open(path, encoding="utf-8") as handle:
            return load_curve_set(handle, provenance or path.name,
                                  conversion_geometry, conversion_mu)

    mmax_to_force: float | None = None
    if conversion_geometry is not None:
        mu = conversion_mu if conversion_mu is not None else conversion_geometry.mu
        geom = replace(conversion_geometry, mu=mu)
        mmax_to_force = (geom.a * geom.b) / (
            amplification_factor(geom.theta, geom.mu) * lever_integral(geom))

    rows: list[tuple[int, float, float, float, str]] = []
    header: list[str] | None = None
    kind_index: int | None = None
    reader = csv.reader(source)
    for line_number, record in enumerate(reader, start=1):
        if not record or record[0].lstrip().startswith("#"):
            continue
        if header is None:
            header = [cell.strip() for cell in record]
            missing = [c for c in _REQUIRED_COLUMNS if c not in header]
            if missing:
                raise CurveFormatError(
                    f"missing required column(s) {', '.join(missing)}", line_number)
            kind_index = header.index("value_kind") if "value_kind" in header else None
            continue
        if len(record) < len(header):
            raise CurveFormatError(
                f"expected {len(header)} columns, got {len(record)}", line_number)
        cells = dict(zip(header, (cell.strip() for cell in record)))
        kind = cells.get("value_kind", "force_n") or "force_n"
        if kind not in _VALUE_KINDS:
            raise CurveFormatError(
                f"value_kind must be one of {_VALUE_KINDS}, got {kind!r}", line_number)
        rows.append((
            line_number,
            _parse_float(cells["d_mm"], "d_mm", line_number),
            _parse_float(cells["pressure_mpa"], "pressure_mpa", line_number),
            _parse_float(cells["force_n"], "force_n", line_number),
            kind,
        ))

    if header is None:
        raise CurveFormatError("empty file: no header row")
    if not rows:
        raise CurveFormatError("no data rows")

    grouped: dict[float, list[tuple[int, float, float]]] = {}
    for line_number, d_mm, pressure, value, kind in rows:
        if kind == "mmax_nm":
            if mmax_to_force is None:
                raise CurveValidationError(
                    f"line {line_number}: value_kind=mmax_nm needs a conversion "
                    "geometry to back-compute force")
            value = value * mmax_to_force
        if value < 0.0:
            raise CurveValidationError(
                f"line {line_number}: negative force {value!r} "
                f"(d={d_mm}, pressure={pressure})")
        grouped.setdefault(d_mm, []).append((line_number, pressure, value))

    curves: dict[float, ForceCurve] = {}
    for d_mm, entries in grouped.items():
        entries.sort(key=lambda e: e[1])
        for (line_a, p_a, _), (line_b, p_b, _) in zip(entries, entries[1:]):
            if p_b == p_a:
                raise CurveValidationError(
                    f"line {line_b}: duplicate pressure {p_b!r} for d={d_mm} "
                    f"(first seen on line {line_a})")
        try:
            curves[d_mm] = ForceCurve(
                d_mm=d_mm, samples=tuple((p, f) for _, p, f in entries))
        except ValueError as exc:
            raise CurveValidationError(str(exc)) from None

    return CurveSet(curves=curves, provenance=provenance or "<stream>")


def bundled_curve_set() -> CurveSet:
    """The curve set shipped with the package (approximate reconstruction
    of the mechanism's FEA pressing-force results; see the file header)."""
    return load_curve_set(BUNDLED_CURVES)


def interpolate_force(curve: ForceCurve, pressure: float) -> float:
    """Pressing force at a pressure, piecewise linear between samples.

    Below the first sample the plates are not in contact and the force is
    0. Above the last sample raises CurveRangeError (no extrapolation).
    """
    if not pressure >= 0.0:
        raise ValueError(f"pressure must be >= 0, got {pressure!r}")
    pressures = curve.pressures
    if pressure < pressures[0]:
        return 0.0
    if pressure > pressures[-1]:
        raise CurveRangeError(
            f"pressure {pressure!r} MPa above last sample {pressures[-1]!r} MPa "
            f"for d={curve.d_mm}; extrapolation refused")
    return float(np.interp(pressure, pressures, curve.forces))


def m_max_band(curve: ForceCurve, geom: LockGeometry,
               mu_lo: float, mu_hi: float, pressure: float,
               rel_tol: float = 1e-9) -> tuple[float, float]:
    """Holding-moment band over a friction range at one pressure.

    The moment is monotone in mu, so the band is spanned by the endpoints:
    (lo, hi) equal max_moment at mu_lo and mu_hi. AlwaysLockedError
    propagates if mu_hi (or mu_lo) breaks the release condition.
    """
    if not mu_lo <= mu_hi:
        raise ValueError(f"mu_lo must be <= mu_hi, got {mu_lo!r} > {mu_hi!r}")
    force = interpolate_force(curve, pressure)
    amp_lo = amplification_factor(geom.theta, mu_lo)
    amp_hi = amplification_factor(geom.theta, mu_hi)
    d_integral = lever_integral(geom, rel_tol)
    scale = force * d_integral / (geom.a * geom.b)
    return scale * amp_lo, scale * amp_hi


def band_over_pressures(curve: ForceCurve, geom: LockGeometry,
                        mu_lo: float, mu_hi: float,
                        pressures: Sequence[float],
                        rel_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Band edges sampled over many pressures (for tables and plots)."""
    lo = np.empty(len(pressures))
    hi = np.empty(len(pressures))
    for i, pressure in enumerate(pressures):
        lo[i], hi[i] = m_max_band(curve, geom, mu_lo, mu_hi, pressure, rel_tol)
    return lo, hi


@dataclass(frozen=True)
class SweepRow:
    """Constraint evaluation for one plate gap. Moment edges are NaN when
    the curve does not cover the constraint pressure (counted as a fail)."""

    d_mm: float
    soft_moment_hi: float
    soft_ok: bool
    grasp_moment_lo: float
    grasp_ok: bool

    @property
    def passed(self) -> bool:
        return self.soft_ok and self.grasp_ok


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]
    selected_d_mm: float | None
    profile: StiffnessProfile

    @property
    def feasible(self) -> bool:
        return self.selected_d_mm is not None


def design_sweep(curve_set: CurveSet, geom: LockGeometry,
                 profile: StiffnessProfile,
                 mu_range: tuple[float, float] = MU_RANGE,
                 rel_tol: float = 1e-9) -> SweepReport:
    """Evaluate every plate gap against the stiffness profile and select
    the smallest d that passes both constraints.

    soft:  upper band edge at soft_pressure <= soft_max_moment
    grasp: lower band edge at grasp_pressure > grasp_min_moment

    Deterministic and independent of curve insertion order (d ascending).
    Infeasibility (no d passes) is a result, not an exception.
    """
    if not curve_set.curves:
        raise ValueError("curve set is empty")
    mu_lo, mu_hi = mu_range
    rows = []
    for d_mm in curve_set.d_values:
        curve = curve_set[d_mm]
        try:
            _, soft_hi = m_max_band(curve, geom, mu_lo, mu_hi,
                                    profile.soft_pressure, rel_tol)
            soft_ok = soft_hi <= profile.soft_max_moment
        except CurveRangeError:
            soft_hi, soft_ok = math.nan, False
        try:
            grasp_lo, _ = m_max_band(curve, geom, mu_lo, mu_hi,
                                     profile.grasp_pressure, rel_tol)
            grasp_ok = grasp_lo > profile.grasp_min_moment
        except CurveRangeError:
            grasp_lo, grasp_ok = math.nan, False
        rows.append(SweepRow(d_mm, soft_hi, soft_ok, grasp_lo, grasp_ok))

    selected = next((row.d_mm for row in rows if row.passed), None)
    return SweepReport(rows=tuple(rows), selected_d_mm=selected, profile=profile)
