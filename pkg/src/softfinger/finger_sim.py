"""Finger kinematics, lock state machine, and pressure dynamics.

The finger is a chain of identical 2-DOF units. Within a unit the frame
first translates along the local z axis by one segment length, then
rotates about the local y axis (in-plane bend, the actuated direction) and
about the local x axis (out-of-plane bend, the direction the lock
stiffens), in that fixed order. A straight finger therefore points along
+z with the tip at (0, 0, total_length), and each unit's joint sits at the
distal end of its segment.

The simulation is quasi-static: no inertia and no contact resolution.
In-plane angles are commanded inputs (no pressure-to-bending map is
modeled), out-of-plane angles are imposed externally while the locks are
free and held by the locks once pressure engages them. Drive pressure
follows a first-order lag with the supplied time constant. The lock gate
is stateless in pressure: engaged iff the current pressure reaches the
engagement threshold, with no hysteresis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import IO, Sequence, Union

import numpy as np

from .core_types import FingerSpec, ForceCurve, GraspScenario, LockGeometry, SoftFingerError
from .force_curves import interpolate_force
from .lock_model import AlwaysLockedError, max_moment

DEFAULT_ENGAGE_PRESSURE = 0.5  # MPa, plates first contact
DEFAULT_TAU = 0.3              # s, pressure control time constant

# Float guard for the closed joint-limit bound: sums of per-joint angles
# may exceed an exactly-attained limit by a few ulp.
_LIMIT_EPS = 1e-9


class LockState(Enum):
    FREE = "free"
    ENGAGED = "engaged"


@dataclass(frozen=True)
class JointState:
    """One unit's bend angles (rad) and lock state."""

    in_plane_angle: float
    out_of_plane_angle: float
    lock: LockState = LockState.FREE


@dataclass(frozen=True)
class PressureTrace:
    """Sampled first-order pressure response."""

    times: np.ndarray
    pressures: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        pressures = np.asarray(self.pressures, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "pressures", pressures)
        if times.shape != pressures.shape:
            raise ValueError("times and pressures must have the same shape")
        if times.size >= 2 and not np.all(np.diff(times) > 0.0):
            raise ValueError("times must be strictly increasing")
        if np.any(pressures < 0.0):
            raise ValueError("pressures must be >= 0")


@dataclass(frozen=True)
class SimState:
    """Snapshot of the finger: joint angles and locks, drive pressure (MPa),
    and the tip pose as a 4x4 homogeneous transform recomputable from the
    joints by forward kinematics."""

    joints: tuple[JointState, ...]
    pressure: float
    tip_pose: np.ndarray


def _unit_transform(segment_length: float, in_plane: float, out_of_plane: float) -> np.ndarray:
    cy, sy = math.cos(in_plane), math.sin(in_plane)
    cx, sx = math.cos(out_of_plane), math.sin(out_of_plane)
    transform = np.array([
        [cy, sy * sx, sy * cx, 0.0],
        [0.0, cx, -sx, 0.0],
        [-sy, cy * sx, cy * cx, segment_length],
        [0.0, 0.0, 0.0, 1.0],
    ])
    return transform


def forward_kinematics(spec: FingerSpec,
                       joints: Sequence[JointState]) -> list[np.ndarray]:
    """Pose of every unit frame plus the base, as 4x4 transforms.

    Returns joint_count + 1 matrices: the identity base frame, then the
    frame after each unit (translate one segment along local z, rotate
    about local y, then local x). The last entry is the tip pose.
    """
    if len(joints) != spec.joint_count:
        raise ValueError(
            f"expected {spec.joint_count} joint states, got {len(joints)}")
    poses = [np.eye(4)]
    segment = spec.segment_length
    for joint in joints:
        step = _unit_transform(segment, joint.in_plane_angle, joint.out_of_plane_angle)
        poses.append(poses[-1] @ step)
    return poses


def tip_pose(spec: FingerSpec, joints: Sequence[JointState]) -> np.ndarray:
    return forward_kinematics(spec, joints)[-1]


def make_sim_state(spec: FingerSpec, joints: Sequence[JointState],
                   pressure: float) -> SimState:
    return SimState(joints=tuple(joints), pressure=pressure,
                    tip_pose=tip_pose(spec, joints))


def straight_state(spec: FingerSpec, pressure: float = 0.0) -> SimState:
    joints = [JointState(0.0, 0.0, LockState.FREE)] * spec.joint_count
    return make_sim_state(spec, joints, pressure)


@dataclass(frozen=True)
class LimitCheck:
    ok: bool
    total_in_plane: float
    total_out_of_plane: float
    violations: tuple[str, ...]


def _crossing_joint(angles: Sequence[float], limit: float) -> int:
    cumulative = 0.0
    for index, angle in enumerate(angles):
        cumulative += abs(angle)
        if cumulative > limit + _LIMIT_EPS:
            return index
    return len(angles) - 1


def joint_limit_check(spec: FingerSpec,
                      joints: Sequence[JointState]) -> LimitCheck:
    """Check summed bend angles against the finger's total limits.

    Sums |in_plane| and |out_of_plane| over the chain; a direction violates
    when its sum exceeds the limit (closed bound, so exactly reaching the
    limit is ok). Diagnostics name the joint where the running sum crosses
    the limit.
    """
    total_in = sum(abs(j.in_plane_angle) for j in joints)
    total_out = sum(abs(j.out_of_plane_angle) for j in joints)
    violations = []
    if total_in > spec.in_plane_limit + _LIMIT_EPS:
        crossing = _crossing_joint([j.in_plane_angle for j in joints],
                                   spec.in_plane_limit)
        violations.append(
            f"in-plane total {math.degrees(total_in):.3f} deg exceeds limit "
            f"{math.degrees(spec.in_plane_limit):.3f} deg "
            f"(crossed at joint {crossing})")
    if total_out > spec.out_of_plane_limit + _LIMIT_EPS:
        crossing = _crossing_joint([j.out_of_plane_angle for j in joints],
                                   spec.out_of_plane_limit)
        violations.append(
            f"out-of-plane total {math.degrees(total_out):.3f} deg exceeds limit "
            f"{math.degrees(spec.out_of_plane_limit):.3f} deg "
            f"(crossed at joint {crossing})")
    return LimitCheck(ok=not violations, total_in_plane=total_in,
                      total_out_of_plane=total_out, violations=tuple(violations))


def wrap_pose(spec: FingerSpec,
              object_radius: float) -> tuple[list[JointState], LimitCheck]:
    """Joint targets for the wrap configuration.

    The distal half of the chain takes uniform in-plane curvature around
    the object (per-joint angle segment_length / object_radius); the
    proximal half spreads the 90 degree out-of-plane twist that points the
    wrapping plane at the object. At object_radius = L/pi the distal arc
    subtends exactly 90 degrees for an even joint count.

    Returns the joint list together with its limit check; an over-tight
    radius shows up there rather than raising.
    """
    if not object_radius > 0.0:
        raise ValueError(f"object_radius must be > 0, got {object_radius!r}")
    count = spec.joint_count
    n_distal = count // 2
    n_proximal = count - n_distal
    distal_angle = spec.segment_length / object_radius
    proximal_angle = (math.pi / 2) / n_proximal if n_proximal else 0.0
    joints = [
        JointState(in_plane_angle=0.0, out_of_plane_angle=proximal_angle)
        for _ in range(n_proximal)
    ] + [
        JointState(in_plane_angle=distal_angle, out_of_plane_angle=0.0)
        for _ in range(n_distal)
    ]
    return joints, joint_limit_check(spec, joints)


def pressure_step(reference: float, tau: float, dt: float, horizon: float,
                  initial: float = 0.0) -> PressureTrace:
    """First-order lag response sampled at dt over [0, horizon].

    Exact closed form P(t) = reference + (initial - reference)*exp(-t/tau),
    which for the default initial=0 is the step response
    reference*(1 - exp(-t/tau)). Not numeric integration.
    """
    if not tau > 0.0:
        raise ValueError(f"tau must be > 0, got {tau!r}")
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    if not horizon >= dt:
        raise ValueError(f"horizon must be >= dt, got {horizon!r} < {dt!r}")
    if reference < 0.0 or initial < 0.0:
        raise ValueError("reference and initial pressure must be >= 0")
    steps = int(math.floor(horizon / dt + 1e-12))
    times = np.arange(steps + 1) * dt
    pressures = reference + (initial - reference) * np.exp(-times / tau)
    return PressureTrace(times=times, pressures=pressures)


def rise_time_10_90(tau: float) -> float:
    """10-90% rise time of a first-order lag, tau * ln 9."""
    if not tau > 0.0:
        raise ValueError(f"tau must be > 0, got {tau!r}")
    return tau * math.log(9.0)


@dataclass(frozen=True)
class SlipEvent:
    """An engaged joint whose applied moment exceeded its capacity."""

    joint_index: int
    applied_moment: float
    m_max: float


def _moment_profile(external_moment: float, count: int) -> list[float]:
    # Lateral tip load: the root joint sees the full moment and it decays
    # linearly to zero at the tip-most joint.
    if count == 1:
        return [external_moment]
    return [external_moment * (count - 1 - j) / (count - 1) for j in range(count)]


def lock_state_update(state: SimState, curve: ForceCurve, geom: LockGeometry,
                      engage_pressure: float, external_moment: float,
                      rel_tol: float = 1e-9) -> tuple[SimState, tuple[SlipEvent, ...]]:
    """Refresh lock states from the current pressure and check for slip.

    Locks are FREE below engage_pressure and ENGAGED at or above it
    (stateless gate, no hysteresis). When engaged, each joint holds its
    out-of-plane angle up to the capacity given by the interpolated
    pressing force; the external moment is taken at the root and decays
    linearly toward the tip, so overload reports slip at the root first.
    Slip is reported per step; angles are not altered here because the
    external constraint that would drive them is not modeled.

    Always-locked geometry never slips (infinite capacity), so it engages
    silently instead of raising.
    """
    if not external_moment >= 0.0:
        raise ValueError(f"external_moment must be >= 0, got {external_moment!r}")
    if state.pressure < engage_pressure:
        joints = tuple(replace(j, lock=LockState.FREE) for j in state.joints)
        return SimState(joints, state.pressure, state.tip_pose), ()

    joints = tuple(replace(j, lock=LockState.ENGAGED) for j in state.joints)
    force = interpolate_force(curve, state.pressure)
    try:
        capacity = max_moment(force, geom, rel_tol).m_max
    except AlwaysLockedError:
        capacity = math.inf
    events = tuple(
        SlipEvent(joint_index=index, applied_moment=applied, m_max=capacity)
        for index, applied in enumerate(_moment_profile(external_moment, len(joints)))
        if applied > capacity
    )
    return SimState(joints, state.pressure, state.tip_pose), events


@dataclass(frozen=True)
class InsertTwist:
    """Impose out-of-plane angles while the locks are free. A scalar is a
    total twist split uniformly; a sequence gives per-joint targets."""

    targets: Union[float, tuple[float, ...]]


@dataclass(frozen=True)
class Pressurize:
    """Drive the pressure toward a reference for a duration."""

    reference: float
    duration: float = 2.0


@dataclass(frozen=True)
class Wrap:
    """Apply the wrap pose's in-plane angles (None: scenario radius)."""

    object_radius: float | None = None


@dataclass(frozen=True)
class Hold:
    """Apply an external root moment and check the engaged locks."""

    external_moment: float


Phase = Union[InsertTwist, Pressurize, Wrap, Hold]


class ScheduleError(SoftFingerError):
    """Malformed simulation schedule."""


class LimitViolationError(SoftFingerError):
    """A simulated state exceeded the finger's bend limits."""

    def __init__(self, check: LimitCheck, phase: str, time: float):
        self.check = check
        self.phase = phase
        self.time = time
        detail = "; ".join(check.violations)
        super().__init__(f"joint limits violated during {phase} at t={time:.3f} s: {detail}")


@dataclass(frozen=True)
class TimelineStep:
    time: float
    phase: str
    state: SimState
    events: tuple[SlipEvent, ...] = ()


def _twist_targets(targets, count: int) -> list[float]:
    if isinstance(targets, (int, float)):
        return [float(targets) / count] * count
    values = [float(t) for t in targets]
    if len(values) != count:
        raise ScheduleError(
            f"insert_twist needs {count} per-joint targets, got {len(values)}")
    return values


def simulate_grasp_sequence(spec: FingerSpec, scenario: GraspScenario,
                            curve: ForceCurve, geom: LockGeometry,
                            schedule: Sequence[Phase],
                            tau: float = DEFAULT_TAU,
                            dt: float = 0.05,
                            engage_pressure: float = DEFAULT_ENGAGE_PRESSURE,
                            rel_tol: float = 1e-9) -> list[TimelineStep]:
    """Run a quasi-static phase schedule and return the state timeline.

    Phases: InsertTwist imposes out-of-plane angles on free joints (engaged
    joints keep theirs), Pressurize follows the first-order lag and flips
    locks as the engagement threshold is crossed, Wrap commands the wrap
    pose's in-plane angles, Hold applies an external root moment and
    records slip events. Every recorded state must pass the joint limit
    check or the run aborts with LimitViolationError.

    An empty schedule yields just the initial straight state.
    """
    state = straight_state(spec)
    timeline = [TimelineStep(time=0.0, phase="init", state=state)]
    clock = 0.0

    def record(phase_name: str, new_state: SimState,
               events: tuple[SlipEvent, ...] = ()) -> None:
        check = joint_limit_check(spec, new_state.joints)
        if not check.ok:
            raise LimitViolationError(check, phase_name, clock)
        timeline.append(TimelineStep(clock, phase_name, new_state, events))

    for phase in schedule:
        if isinstance(phase, InsertTwist):
            targets = _twist_targets(phase.targets, spec.joint_count)
            joints = [
                joint if joint.lock is LockState.ENGAGED
                else replace(joint, out_of_plane_angle=target)
                for joint, target in zip(state.joints, targets)
            ]
            state = make_sim_state(spec, joints, state.pressure)
            clock = round(clock + dt, 12)
            record("insert_twist", state)
        elif isinstance(phase, Pressurize):
            trace = pressure_step(phase.reference, tau, dt, phase.duration,
                                  initial=state.pressure)
            for offset, pressure in zip(trace.times[1:], trace.pressures[1:]):
                pressurized = SimState(state.joints, float(pressure), state.tip_pose)
                state, events = lock_state_update(
                    pressurized, curve, geom, engage_pressure, 0.0, rel_tol)
                clock = round(clock + dt, 12)
                record("pressurize", state, events)
        elif isinstance(phase, Wrap):
            radius = phase.object_radius if phase.object_radius is not None \
                else scenario.object_radius
            pose, _ = wrap_pose(spec, radius)
            joints = [
                replace(joint, in_plane_angle=target.in_plane_angle)
                for joint, target in zip(state.joints, pose)
            ]
            state = make_sim_state(spec, joints, state.pressure)
            clock = round(clock + dt, 12)
            record("wrap", state)
        elif isinstance(phase, Hold):
            state, events = lock_state_update(
                state, curve, geom, engage_pressure, phase.external_moment, rel_tol)
            clock = round(clock + dt, 12)
            record("hold", state, events)
        else:
            raise ScheduleError(f"unknown phase {phase!r}")

    return timeline


def timeline_to_csv(timeline: Sequence[TimelineStep], out: IO[str]) -> None:
    """Write a timeline as CSV: time, phase, pressure, per-joint angles and
    lock states, tip position, and any slip events. Fixed 9-significant-
    digit float formatting keeps identical runs byte-identical."""
    if not timeline:
        raise ValueError("timeline is empty")
    joint_count = len(timeline[0].state.joints)
    columns = ["time_s", "phase", "pressure_mpa"]
    for index in range(joint_count):
        columns += [f"joint{index}_in_plane_rad",
                    f"joint{index}_out_of_plane_rad",
                    f"joint{index}_lock"]
    columns += ["tip_x_m", "tip_y_m", "tip_z_m", "events"]
    out.write(",".join(columns) + "\n")
    for step in timeline:
        cells = [f"{step.time:.9g}", step.phase, f"{step.state.pressure:.9g}"]
        for joint in step.state.joints:
            cells += [f"{joint.in_plane_angle:.9g}",
                      f"{joint.out_of_plane_angle:.9g}",
                      joint.lock.value]
        tip = step.state.tip_pose[:3, 3]
        cells += [f"{tip[0]:.9g}", f"{tip[1]:.9g}", f"{tip[2]:.9g}"]
        cells.append(";".join(
            f"slip@joint{e.joint_index}(M={e.applied_moment:.9g}>{e.m_max:.9g})"
            for e in step.events))
        out.write(",".join(cells) + "\n")
