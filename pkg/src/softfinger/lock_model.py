"""Quasi-static analysis of the pressure-activated self-locking joint.

Plates A and B of a joint unit interlock through protrusions whose contact
faces are inclined by theta to the pressing direction. Inflating the tube
presses the plates together with force F. An external moment M about the
joint axis loads the inclined faces tangentially; static friction resists
sliding until the tangential stress outgrows what the pressing force can
sustain, at which point the plates slip and the joint gives way.

With per-area stresses (sigma_xi, sigma_eta) resolved along the contact
face and its normal, the components along the pressing/sliding directions
are

    sigma_N = sigma_xi*sin(theta) + sigma_eta*cos(theta)
    sigma_R = sigma_xi*cos(theta) - sigma_eta*sin(theta)

a transform that is its own inverse. Assuming uniform stress over the
a x b face, force and moment balances on the plate reduce the no-slip
condition to

    M <= M_max = F * (sin(theta) + mu*cos(theta))
                   / (cos(theta) - mu*sin(theta)) * D / (a*b)

where D integrates the distance from face points to the joint axis,

    D = int_0^a int_0^b sqrt((x*cos(theta))^2 + (y + r1)^2) dy dx.

If cos(theta) - mu*sin(theta) <= 0 the denominator gain is unbounded: the
interlock holds regardless of F (always locked), which defeats variable
stiffness and is rejected at design time.

Known discrepancy, preserved as printed in the source derivation: the
stress named sigma_N enters as the friction-side resultant and sigma_R as
the normal-side one, yet the slip condition is written R <= mu*N. The
algebra that follows from it is self-consistent and is what this module
implements; the naming is not reinterpreted here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core_types import LockGeometry, SoftFingerError, validate_geometry


class AlwaysLockedError(SoftFingerError):
    """cos(theta) - mu*sin(theta) <= 0: the interlock never releases."""

    def __init__(self, theta: float, mu: float, denominator: float):
        self.theta = theta
        self.mu = mu
        self.denominator = denominator
        super().__init__(
            f"always locked: cos(theta) - mu*sin(theta) = {denominator:.6g} <= 0 "
            f"for theta={theta:.6g} rad, mu={mu:.6g}")


class QuadratureConvergenceError(SoftFingerError):
    """Lever integral refinement hit its panel cap before reaching rel_tol."""


class LockStatus(Enum):
    HOLDS = "holds"
    SLIPS = "slips"
    ALWAYS_LOCKED = "always_locked"


@dataclass(frozen=True)
class StressPair:
    """Per-area stress components in one of the two bases.

    Component order is (sigma_xi, sigma_eta) in the face-aligned basis.
    `stress_transform` maps to the pressing/sliding basis, where the same
    slots read as (sigma_N, sigma_R); applying the transform twice returns
    the original pair.
    """

    sigma_xi: float
    sigma_eta: float

    @property
    def sigma_n(self) -> float:
        return self.sigma_xi

    @property
    def sigma_r(self) -> float:
        return self.sigma_eta


@dataclass(frozen=True)
class LockAssessment:
    """Holding capacity of one engaged joint unit.

    m_max: largest external moment before slip, Nm (inf when always locked)
    amplification: (sin+mu*cos)/(cos-mu*sin) gain from pressing force to
        tangential capacity (inf when always locked)
    lever_integral: D, m^3
    status: slip verdict for the applied moment (HOLDS for a pure capacity
        computation, where the applied moment is zero)
    """

    m_max: float
    amplification: float
    lever_integral: float
    status: LockStatus


def stress_transform(pair: StressPair, theta: float) -> StressPair:
    """Rotate a stress pair between the face basis and the press/slide basis.

    The 2x2 matrix [[sin, cos], [cos, -sin]] is symmetric orthogonal, so it
    is an involution: the same call maps either direction.
    """
    if not 0.0 < theta < math.pi / 2:
        raise ValueError(f"theta must be in (0, pi/2), got {theta!r}")
    s, c = math.sin(theta), math.cos(theta)
    return StressPair(
        sigma_xi=pair.sigma_xi * s + pair.sigma_eta * c,
        sigma_eta=pair.sigma_xi * c - pair.sigma_eta * s,
    )


def distance_to_axis(x, y, theta: float, r1: float):
    """Distance from point (x, y) on the contact face to the joint axis,
    sqrt((x*cos(theta))^2 + (y + r1)^2). Accepts scalars or arrays."""
    return np.hypot(np.asarray(x) * math.cos(theta), np.asarray(y) + r1)


def _simpson_2d(geom: LockGeometry, panels: int) -> float:
    """Composite Simpson on a panels x panels tensor grid over [0,a]x[0,b]."""
    nodes = 2 * panels + 1
    xs = np.linspace(0.0, geom.a, nodes)
    ys = np.linspace(0.0, geom.b, nodes)
    w = np.ones(nodes)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    wx = w * (geom.a / panels / 6.0)
    wy = w * (geom.b / panels / 6.0)
    grid = np.hypot(xs[:, None] * math.cos(geom.theta), ys[None, :] + geom.r1)
    return float(wx @ grid @ wy)


_MAX_PANELS = 4096


def lever_integral(geom: LockGeometry, rel_tol: float = 1e-9) -> float:
    """Evaluate the lever-arm integral D over the contact face.

    Adaptive composite Simpson in both dimensions: the panel count doubles
    until two successive grids agree to rel_tol, and the Richardson
    extrapolated value of the last pair is returned (Simpson error scales
    as h^4, so the extrapolation cancels the leading term).

    rel_tol must lie in (0, 1e-3]. Raises QuadratureConvergenceError if the
    tolerance is not reached by the panel cap, and ValueError for geometry
    whose ranges are invalid (the always-locked condition involves only mu
    and does not affect D, so it is not checked here).
    """
    if not 0.0 < rel_tol <= 1e-3:
        raise ValueError(f"rel_tol must be in (0, 1e-3], got {rel_tol!r}")
    range_errors = validate_geometry(geom).range_errors()
    if range_errors:
        raise ValueError("invalid geometry: "
                         + "; ".join(v.message for v in range_errors))

    panels = 8
    previous = _simpson_2d(geom, panels)
    while panels < _MAX_PANELS:
        panels *= 2
        current = _simpson_2d(geom, panels)
        if abs(current - previous) <= rel_tol * abs(current):
            return current + (current - previous) / 15.0
        previous = current
    raise QuadratureConvergenceError(
        f"lever integral did not reach rel_tol={rel_tol:g} within "
        f"{_MAX_PANELS} panels per dimension")


def amplification_factor(theta: float, mu: float) -> float:
    """Gain from pressing force to tangential holding capacity,
    (sin(theta) + mu*cos(theta)) / (cos(theta) - mu*sin(theta)).

    Strictly increasing in both theta and mu on the valid domain. Raises
    AlwaysLockedError when the denominator is <= 0.
    """
    s, c = math.sin(theta), math.cos(theta)
    denominator = c - mu * s
    if denominator <= 0.0:
        raise AlwaysLockedError(theta, mu, denominator)
    return (s + mu * c) / denominator


def max_moment(force: float, geom: LockGeometry,
               rel_tol: float = 1e-9) -> LockAssessment:
    """Largest external moment the engaged lock withstands at pressing
    force F: M_max = F * amplification * D / (a*b).

    Linear in force, zero at zero force. Raises AlwaysLockedError when the
    geometry's mu/theta make the lock unconditional.
    """
    if not force >= 0.0:
        raise ValueError(f"force must be >= 0, got {force!r}")
    amplification = amplification_factor(geom.theta, geom.mu)
    d_integral = lever_integral(geom, rel_tol)
    m_max = force * amplification * d_integral / (geom.a * geom.b)
    return LockAssessment(
        m_max=m_max,
        amplification=amplification,
        lever_integral=d_integral,
        status=LockStatus.HOLDS,
    )


def slip_check(applied_moment: float, force: float, geom: LockGeometry,
               rel_tol: float = 1e-9) -> LockAssessment:
    """Slip verdict for an applied moment against the pressing force.

    HOLDS iff applied_moment <= m_max (closed boundary). ALWAYS_LOCKED,
    with m_max and amplification infinite, when the geometry's interlock
    cannot release; every outcome is encoded in the status, nothing raises.
    """
    if not applied_moment >= 0.0:
        raise ValueError(f"applied_moment must be >= 0, got {applied_moment!r}")
    try:
        assessment = max_moment(force, geom, rel_tol)
    except AlwaysLockedError:
        return LockAssessment(
            m_max=math.inf,
            amplification=math.inf,
            lever_integral=lever_integral(geom, rel_tol),
            status=LockStatus.ALWAYS_LOCKED,
        )
    status = (LockStatus.HOLDS if applied_moment <= assessment.m_max
              else LockStatus.SLIPS)
    return LockAssessment(
        m_max=assessment.m_max,
        amplification=assessment.amplification,
        lever_integral=assessment.lever_integral,
        status=status,
    )


def moment_to_tip_force(moment: float, lever: float) -> float:
    """Lateral fingertip force equivalent to a root moment over a lever arm."""
    if not lever > 0.0:
        raise ValueError(f"lever must be > 0, got {lever!r}")
    return moment / lever
