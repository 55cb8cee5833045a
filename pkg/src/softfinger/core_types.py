"""Shared domain types for the variable-stiffness soft finger toolkit.

The finger is a serial chain of 2-DOF joint units driven by a single
hydraulic tube. Each unit carries a pressure-activated lock: inclined
protrusions on two plates interlock when the inflating tube presses the
plates together, which stiffens the out-of-plane rotation. The types here
describe that locking interface (`LockGeometry`), the empirical pressing
force it sees (`ForceCurve`), the finger as a kinematic chain
(`FingerSpec`), and a grasp task (`GraspScenario`).

All angles are radians, lengths meters, forces newtons. Pressures are MPa
by declaration (they parameterize empirical curves and thresholds and are
never multiplied into SI force balances), and the plate-gap parameter `d`
is carried in mm because it is a catalog label for the curves, not a
quantity computed with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class SoftFingerError(Exception):
    """Base class for errors raised by this package."""


@dataclass(frozen=True)
class LockGeometry:
    """Geometry and friction of one joint unit's locking interface.

    theta: inclination angle of the interlocking protrusions, rad
    mu: static friction coefficient between the two plates
    a, b: width and height of a protrusion's contact face, m
    r1: distance from the joint axis to the contact face origin, m
    protrusion_count: number of interlocking protrusion pairs

    Instances are plain value carriers; range checks live in
    `validate_geometry` so that invalid parameter sets can be reported
    as structured results instead of constructor exceptions.
    """

    theta: float
    mu: float
    a: float
    b: float
    r1: float
    protrusion_count: int


@dataclass(frozen=True)
class Violation:
    """One failed geometry check. kind is 'range' or 'always_locked'."""

    field: str
    kind: str
    message: str


@dataclass(frozen=True)
class GeometryValidation:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def range_errors(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.kind == "range")

    def always_locked(self) -> bool:
        return any(v.kind == "always_locked" for v in self.violations)


def validate_geometry(geom: LockGeometry) -> GeometryValidation:
    """Check a lock geometry against its domain and the release condition.

    A usable variable-stiffness design needs cos(theta) - mu*sin(theta) > 0;
    otherwise the interlock holds regardless of pressing force and the joint
    can never be compliant. That failure is reported as kind
    'always_locked', distinct from plain range errors.

    Pure and deterministic; never raises.
    """
    violations: list[Violation] = []

    def bad(field_name: str, message: str, kind: str = "range") -> None:
        violations.append(Violation(field_name, kind, message))

    if not 0.0 < geom.theta < math.pi / 2:
        bad("theta", f"theta must be in (0, pi/2), got {geom.theta!r}")
    if not geom.mu > 0.0:
        bad("mu", f"mu must be > 0, got {geom.mu!r}")
    if not geom.a > 0.0:
        bad("a", f"a must be > 0, got {geom.a!r}")
    if not geom.b > 0.0:
        bad("b", f"b must be > 0, got {geom.b!r}")
    if not geom.r1 >= 0.0:
        bad("r1", f"r1 must be >= 0, got {geom.r1!r}")
    if not (isinstance(geom.protrusion_count, int) and geom.protrusion_count >= 1):
        bad("protrusion_count",
            f"protrusion_count must be an integer >= 1, got {geom.protrusion_count!r}")

    # Only meaningful once theta and mu are individually in range.
    if 0.0 < geom.theta < math.pi / 2 and geom.mu > 0.0:
        denom = math.cos(geom.theta) - geom.mu * math.sin(geom.theta)
        if denom <= 0.0:
            bad("theta",
                "cos(theta) - mu*sin(theta) = "
                f"{denom:.6g} <= 0: interlock never releases",
                kind="always_locked")

    return GeometryValidation(tuple(violations))


def default_lock_geometry() -> LockGeometry:
    """Nominal placeholder lock geometry.

    The physical protrusion dimensions are not public. These values are
    placeholders calibrated so that, together with the bundled force
    curves, the d=2.5 mm unit holds about 1.2 Nm at 1.5 MPa.
    """
    return LockGeometry(
        theta=math.radians(30.0),
        mu=0.5,
        a=4e-3,
        b=3e-3,
        r1=5e-3,
        protrusion_count=4,
    )


@dataclass(frozen=True)
class ForceCurve:
    """Interlock pressing force vs drive pressure for one plate gap d.

    samples are (pressure_mpa, force_n) pairs with strictly increasing
    pressures and non-negative forces; at least two samples.
    """

    d_mm: float
    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        samples = tuple((float(p), float(f)) for p, f in self.samples)
        object.__setattr__(self, "samples", samples)
        if not self.d_mm > 0.0:
            raise ValueError(f"d_mm must be > 0, got {self.d_mm!r}")
        if len(samples) < 2:
            raise ValueError(
                f"curve d={self.d_mm} needs at least 2 samples, got {len(samples)}")
        for i, (p, f) in enumerate(samples):
            if f < 0.0:
                raise ValueError(
                    f"curve d={self.d_mm}: negative force {f!r} at pressure {p!r}")
            if i > 0 and p <= samples[i - 1][0]:
                raise ValueError(
                    f"curve d={self.d_mm}: pressures must be strictly increasing, "
                    f"got {samples[i - 1][0]!r} then {p!r}")

    @property
    def pressures(self) -> tuple[float, ...]:
        return tuple(p for p, _ in self.samples)

    @property
    def forces(self) -> tuple[float, ...]:
        return tuple(f for _, f in self.samples)


@dataclass(frozen=True)
class FingerSpec:
    """Serial-chain description of one finger.

    total_length: finger length along its axis, m
    joint_count: number of 2-DOF joint units in the chain
    root_to_tip: lever arm from the first joint unit to the tip, m
    in_plane_limit / out_of_plane_limit: total bend limits, rad
    """

    total_length: float
    joint_count: int
    root_to_tip: float
    in_plane_limit: float
    out_of_plane_limit: float

    def __post_init__(self) -> None:
        if not self.total_length > 0.0:
            raise ValueError(f"total_length must be > 0, got {self.total_length!r}")
        if not (isinstance(self.joint_count, int) and self.joint_count >= 1):
            raise ValueError(f"joint_count must be an integer >= 1, got {self.joint_count!r}")
        if not self.root_to_tip > 0.0:
            raise ValueError(f"root_to_tip must be > 0, got {self.root_to_tip!r}")
        for name in ("in_plane_limit", "out_of_plane_limit"):
            value = getattr(self, name)
            if not 0.0 < value < math.pi:
                raise ValueError(f"{name} must be in (0, pi), got {value!r}")

    @property
    def segment_length(self) -> float:
        return self.total_length / self.joint_count


def default_finger_spec() -> FingerSpec:
    """Finger chain defaults: 193.5 mm long, 142 mm first joint to tip,
    135 deg in-plane and 115 deg out-of-plane total bend.

    joint_count=6 is a placeholder (the unit count is not public); it gives
    a 32.25 mm unit pitch matching the 32 mm finger diameter.
    """
    return FingerSpec(
        total_length=0.1935,
        joint_count=6,
        root_to_tip=0.142,
        in_plane_limit=math.radians(135.0),
        out_of_plane_limit=math.radians(115.0),
    )


@dataclass(frozen=True)
class GraspScenario:
    """A grasp-by-wrapping task.

    mass: object mass, kg (zero allowed so degenerate loads evaluate to 0)
    finger_count: fingers sharing the load
    finger_length: effective finger length L in the load model, m
    object_radius: radius of the wrapped cylinder, m
    operating_pressure: drive pressure during the grasp, MPa
    """

    mass: float
    finger_count: int
    finger_length: float
    object_radius: float
    operating_pressure: float = 1.5

    def __post_init__(self) -> None:
        if not self.mass >= 0.0:
            raise ValueError(f"mass must be >= 0, got {self.mass!r}")
        if not (isinstance(self.finger_count, int) and self.finger_count >= 2):
            raise ValueError(f"finger_count must be an integer >= 2, got {self.finger_count!r}")
        if not self.finger_length > 0.0:
            raise ValueError(f"finger_length must be > 0, got {self.finger_length!r}")
        if not self.object_radius > 0.0:
            raise ValueError(f"object_radius must be > 0, got {self.object_radius!r}")
        if not self.operating_pressure >= 0.0:
            raise ValueError(
                f"operating_pressure must be >= 0, got {self.operating_pressure!r}")


def default_grasp_scenario() -> GraspScenario:
    """The design target: 1.5 kg object, 3 fingers, 0.2 m effective length,
    wrapped at radius L/pi, driven at 1.5 MPa."""
    length = 0.2
    return GraspScenario(
        mass=1.5,
        finger_count=3,
        finger_length=length,
        object_radius=length / math.pi,
        operating_pressure=1.5,
    )
