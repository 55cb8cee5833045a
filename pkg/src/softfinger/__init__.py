"""Design and simulation toolkit for a pressure-activated variable-stiffness
soft finger: self-locking joint capacity, wrap-grasp load requirements,
plate-gap design sweeps, and quasi-static finger simulation."""

from .core_types import (
    FingerSpec,
    ForceCurve,
    GeometryValidation,
    GraspScenario,
    LockGeometry,
    SoftFingerError,
    Violation,
    default_finger_spec,
    default_grasp_scenario,
    default_lock_geometry,
    validate_geometry,
)
from .finger_sim import (
    Hold,
    InsertTwist,
    JointState,
    LimitCheck,
    LimitViolationError,
    LockState,
    Pressurize,
    PressureTrace,
    SimState,
    SlipEvent,
    TimelineStep,
    Wrap,
    forward_kinematics,
    joint_limit_check,
    lock_state_update,
    pressure_step,
    rise_time_10_90,
    simulate_grasp_sequence,
    timeline_to_csv,
    wrap_pose,
)
from .force_curves import (
    CurveSet,
    StiffnessProfile,
    SweepReport,
    SweepRow,
    bundled_curve_set,
    default_stiffness_profile,
    design_sweep,
    interpolate_force,
    load_curve_set,
    m_max_band,
)
from .grasp_requirements import (
    FeasibilityReport,
    GraspRequirement,
    grasp_feasible,
    grasp_requirement,
    line_load,
    required_root_moment,
    wrap_radius,
)
from .lock_model import (
    AlwaysLockedError,
    LockAssessment,
    LockStatus,
    StressPair,
    amplification_factor,
    distance_to_axis,
    lever_integral,
    max_moment,
    moment_to_tip_force,
    slip_check,
    stress_transform,
)
from .units import GRAVITY

__version__ = "0.1.0"
