"""Command-line front end.

Subcommands:
  lock      holding capacity of one joint unit (from a force or a pressure)
  grasp     wrap-grasp load requirement and feasibility
  sweep     plate-gap design sweep against a stiffness profile
  step      first-order pressure step response trace
  simulate  quasi-static twist/pressurize/wrap/hold sequence

Configuration is an INI file with sections [geometry], [scenario],
[profile], [finger] and [simulation]; units are embedded in key names
(theta_deg, a_mm, mass_kg, ...) so nothing is converted silently. Any
missing section falls back to the documented placeholder defaults. CLI
angle arguments are radians unless suffixed 'deg'.

Exit codes: 0 success; 1 analytical outcomes (always-locked geometry, no
feasible design, joint limit violation); 2 input errors (config, CSV,
arguments). Outputs carry no timestamps and use fixed 9-significant-digit
float formatting, so identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import configparser
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Sequence

from .core_types import (
    FingerSpec,
    GraspScenario,
    LockGeometry,
    SoftFingerError,
    default_finger_spec,
    default_grasp_scenario,
    default_lock_geometry,
    validate_geometry,
)
from .finger_sim import (
    DEFAULT_ENGAGE_PRESSURE,
    DEFAULT_TAU,
    Hold,
    InsertTwist,
    LimitViolationError,
    Phase,
    Pressurize,
    Wrap,
    pressure_step,
    rise_time_10_90,
    simulate_grasp_sequence,
    timeline_to_csv,
)
from .force_curves import (
    MU_RANGE,
    CurveSet,
    StiffnessProfile,
    band_over_pressures,
    bundled_curve_set,
    default_stiffness_profile,
    design_sweep,
    interpolate_force,
    load_curve_set,
)
from .grasp_requirements import (
    DESIGN_REQUIRED_MOMENT,
    grasp_feasible,
    grasp_requirement,
)
from .lock_model import (
    AlwaysLockedError,
    LockAssessment,
    LockStatus,
    max_moment,
    moment_to_tip_force,
)
from .units import deg_to_rad, mm_to_m

EXIT_OK = 0
EXIT_ANALYTIC = 1
EXIT_INPUT = 2


class ConfigError(SoftFingerError):
    """Bad config file; message carries the section.key path."""


def fmt(value: float) -> str:
    return f"{value:.9g}"


def parse_angle(text: str) -> float:
    """Angle in radians; a 'deg' suffix marks degrees."""
    text = text.strip()
    if text.lower().endswith("deg"):
        return deg_to_rad(float(text[:-3]))
    return float(text)


@dataclass(frozen=True)
class RunConfig:
    geometry: LockGeometry
    scenario: GraspScenario
    profile: StiffnessProfile
    finger: FingerSpec
    tau: float
    dt: float
    engage_pressure: float
    schedule: tuple[Phase, ...]


def _get_float(section: configparser.SectionProxy, section_name: str, key: str,
               default: float | None = None) -> float:
    if key not in section:
        if default is None:
            raise ConfigError(f"{section_name}.{key}: missing required key")
        return default
    try:
        return float(section[key])
    except ValueError:
        raise ConfigError(
            f"{section_name}.{key}: cannot parse {section[key]!r} as a number") from None


def _get_int(section: configparser.SectionProxy, section_name: str, key: str,
             default: int) -> int:
    if key not in section:
        return default
    try:
        return int(section[key])
    except ValueError:
        raise ConfigError(
            f"{section_name}.{key}: cannot parse {section[key]!r} as an integer") from None


def _parse_schedule(raw: str) -> tuple[Phase, ...]:
    phases: list[Phase] = []
    for index, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        tokens = line.split()
        name, args = tokens[0].lower(), tokens[1:]
        where = f"simulation.schedule line {index}"
        try:
            if name == "twist":
                if not args:
                    raise ConfigError(f"{where}: twist needs at least one angle")
                angles = [parse_angle(a) for a in args]
                phases.append(InsertTwist(angles[0] if len(angles) == 1
                                          else tuple(angles)))
            elif name == "pressurize":
                if len(args) not in (1, 2):
                    raise ConfigError(
                        f"{where}: pressurize takes REFERENCE_MPA [DURATION_S]")
                duration = float(args[1]) if len(args) == 2 else 2.0
                phases.append(Pressurize(float(args[0]), duration))
            elif name == "wrap":
                if len(args) > 1:
                    raise ConfigError(f"{where}: wrap takes at most [RADIUS_M]")
                phases.append(Wrap(float(args[0]) if args else None))
            elif name == "hold":
                if len(args) != 1:
                    raise ConfigError(f"{where}: hold takes MOMENT_NM")
                phases.append(Hold(float(args[0])))
            else:
                raise ConfigError(f"{where}: unknown phase {name!r}")
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    return tuple(phases)


def load_config(path: str | Path | None) -> RunConfig:
    """Parse a config file, falling back to placeholder defaults for any
    missing section or key. Raises ConfigError with section.key paths."""
    parser = configparser.ConfigParser()
    if path is not None:
        try:
            read = parser.read(path)
        except configparser.Error as exc:
            raise ConfigError(f"config parse error: {exc}") from None
        if not read:
            raise ConfigError(f"config file not found or unreadable: {path}")

    geometry = default_lock_geometry()
    if parser.has_section("geometry"):
        section = parser["geometry"]
        geometry = LockGeometry(
            theta=deg_to_rad(_get_float(section, "geometry", "theta_deg", 30.0)),
            mu=_get_float(section, "geometry", "mu", 0.5),
            a=mm_to_m(_get_float(section, "geometry", "a_mm", 4.0)),
            b=mm_to_m(_get_float(section, "geometry", "b_mm", 3.0)),
            r1=mm_to_m(_get_float(section, "geometry", "r1_mm", 5.0)),
            protrusion_count=_get_int(section, "geometry", "protrusion_count", 4),
        )

    scenario = default_grasp_scenario()
    if parser.has_section("scenario"):
        section = parser["scenario"]
        try:
            scenario = GraspScenario(
                mass=_get_float(section, "scenario", "mass_kg", 1.5),
                finger_count=_get_int(section, "scenario", "finger_count", 3),
                finger_length=_get_float(section, "scenario", "finger_length_m", 0.2),
                object_radius=_get_float(section, "scenario", "object_radius_m",
                                         0.2 / math.pi),
                operating_pressure=_get_float(section, "scenario",
                                              "operating_pressure_mpa", 1.5),
            )
        except ValueError as exc:
            raise ConfigError(f"scenario: {exc}") from None

    profile = default_stiffness_profile()
    if parser.has_section("profile"):
        section = parser["profile"]
        try:
            profile = StiffnessProfile(
                soft_pressure=_get_float(section, "profile", "soft_pressure_mpa", 0.75),
                soft_max_moment=_get_float(section, "profile", "soft_max_moment_nm", 0.2),
                grasp_pressure=_get_float(section, "profile", "grasp_pressure_mpa", 1.5),
                grasp_min_moment=_get_float(section, "profile", "grasp_min_moment_nm", 0.6),
            )
        except ValueError as exc:
            raise ConfigError(f"profile: {exc}") from None

    finger = default_finger_spec()
    if parser.has_section("finger"):
        section = parser["finger"]
        try:
            finger = FingerSpec(
                total_length=mm_to_m(_get_float(section, "finger", "total_length_mm", 193.5)),
                joint_count=_get_int(section, "finger", "joint_count", 6),
                root_to_tip=mm_to_m(_get_float(section, "finger", "root_to_tip_mm", 142.0)),
                in_plane_limit=deg_to_rad(
                    _get_float(section, "finger", "in_plane_limit_deg", 135.0)),
                out_of_plane_limit=deg_to_rad(
                    _get_float(section, "finger", "out_of_plane_limit_deg", 115.0)),
            )
        except ValueError as exc:
            raise ConfigError(f"finger: {exc}") from None

    tau, dt = DEFAULT_TAU, 0.05
    engage = DEFAULT_ENGAGE_PRESSURE
    schedule: tuple[Phase, ...] = ()
    if parser.has_section("simulation"):
        section = parser["simulation"]
        tau = _get_float(section, "simulation", "tau_s", DEFAULT_TAU)
        dt = _get_float(section, "simulation", "dt_s", 0.05)
        engage = _get_float(section, "simulation", "engage_pressure_mpa",
                            DEFAULT_ENGAGE_PRESSURE)
        schedule = _parse_schedule(section.get("schedule", ""))

    return RunConfig(geometry=geometry, scenario=scenario, profile=profile,
                     finger=finger, tau=tau, dt=dt, engage_pressure=engage,
                     schedule=schedule)


def _check_geometry_ranges(geometry: LockGeometry) -> None:
    errors = validate_geometry(geometry).range_errors()
    if errors:
        raise ConfigError(
            "geometry: " + "; ".join(v.message for v in errors))


def _emit_pairs(pairs: Sequence[tuple[str, str]], out: IO[str], format_: str) -> None:
    if format_ == "csv":
        out.write("key,value\n")
        for key, value in pairs:
            out.write(f"{key},{value}\n")
    else:
        width = max(len(key) for key, _ in pairs)
        for key, value in pairs:
            out.write(f"{key:<{width}}  {value}\n")


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _load_curves_arg(path: str) -> CurveSet:
    return load_curve_set(path)


def _select_curve(curves: CurveSet, d_mm: float):
    if d_mm not in curves.curves:
        available = ", ".join(fmt(d) for d in curves.d_values)
        raise ConfigError(f"no curve for d={fmt(d_mm)} mm (available: {available})")
    return curves[d_mm]


def cmd_lock(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    geometry = config.geometry
    _check_geometry_ranges(geometry)

    pairs: list[tuple[str, str]] = []
    if args.force is not None:
        if args.force < 0.0:
            raise ConfigError(f"--force must be >= 0, got {args.force}")
        force = args.force
        mu_range = tuple(args.mu_range) if args.mu_range else None
    elif args.pressure is not None:
        if args.curves is None or args.d is None:
            raise ConfigError("--pressure mode needs --curves FILE and --d MM")
        curve = _select_curve(_load_curves_arg(args.curves), args.d)
        force = interpolate_force(curve, args.pressure)
        pairs += [("d_mm", fmt(args.d)), ("pressure_mpa", fmt(args.pressure))]
        mu_range = tuple(args.mu_range) if args.mu_range else MU_RANGE
    else:
        raise ConfigError("one of --force or --pressure is required")

    assessment = max_moment(force, geometry)  # AlwaysLockedError -> exit 1
    pairs += [
        ("force_n", fmt(force)),
        ("amplification", fmt(assessment.amplification)),
        ("lever_integral_m3", fmt(assessment.lever_integral)),
        ("m_max_nm", fmt(assessment.m_max)),
        ("tip_force_n", fmt(moment_to_tip_force(assessment.m_max,
                                                config.finger.root_to_tip))),
    ]
    if mu_range is not None:
        lo, hi = (max_moment(force, replace(geometry, mu=mu)).m_max
                  for mu in mu_range)
        pairs += [
            ("mu_lo", fmt(mu_range[0])), ("mu_hi", fmt(mu_range[1])),
            ("m_max_lo_nm", fmt(lo)), ("m_max_hi_nm", fmt(hi)),
        ]
    pairs.append(("status", "ok"))

    out, close = _open_out(args.out)
    try:
        _emit_pairs(pairs, out, args.format)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_grasp(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    scenario = config.scenario
    requirement = grasp_requirement(scenario)

    pairs = [
        ("mass_kg", fmt(scenario.mass)),
        ("finger_count", str(scenario.finger_count)),
        ("finger_length_m", fmt(scenario.finger_length)),
        ("line_load_n_per_m", fmt(requirement.line_load)),
        ("required_moment_nm", fmt(requirement.required_moment)),
        ("design_target_nm", fmt(DESIGN_REQUIRED_MOMENT)),
        ("wrap_radius_m", fmt(requirement.wrap_radius)),
    ]

    m_max_value: float | None = args.m_max
    if m_max_value is None and args.curves is not None:
        if args.d is None:
            raise ConfigError("--curves needs --d MM to pick a curve")
        _check_geometry_ranges(config.geometry)
        curve = _select_curve(_load_curves_arg(args.curves), args.d)
        force = interpolate_force(curve, scenario.operating_pressure)
        m_max_value = max_moment(force, config.geometry).m_max
        pairs.append(("operating_pressure_mpa", fmt(scenario.operating_pressure)))
    if m_max_value is not None:
        report = grasp_feasible(scenario, LockAssessment(
            m_max=m_max_value, amplification=math.nan,
            lever_integral=math.nan, status=LockStatus.HOLDS))
        pairs += [
            ("m_max_nm", fmt(m_max_value)),
            ("feasible", "yes" if report.feasible else "no"),
            ("margin_nm", fmt(report.margin)),
        ]

    out, close = _open_out(args.out)
    try:
        _emit_pairs(pairs, out, args.format)
    finally:
        if close:
            out.close()
    return EXIT_OK


def _write_sweep_csv(report, out: IO[str]) -> None:
    out.write("d_mm,soft_moment_hi_nm,soft_ok,grasp_moment_lo_nm,grasp_ok,passed\n")
    for row in report.rows:
        out.write(",".join([
            fmt(row.d_mm), fmt(row.soft_moment_hi), str(row.soft_ok).lower(),
            fmt(row.grasp_moment_lo), str(row.grasp_ok).lower(),
            str(row.passed).lower(),
        ]) + "\n")


def _write_sweep_table(report, out: IO[str]) -> None:
    header = f"{'d_mm':>6}  {'soft_hi_nm':>12}  {'soft':>5}  {'grasp_lo_nm':>12}  {'grasp':>5}  {'pass':>5}"
    out.write(header + "\n")
    for row in report.rows:
        out.write(f"{fmt(row.d_mm):>6}  {fmt(row.soft_moment_hi):>12}  "
                  f"{'ok' if row.soft_ok else 'FAIL':>5}  "
                  f"{fmt(row.grasp_moment_lo):>12}  "
                  f"{'ok' if row.grasp_ok else 'FAIL':>5}  "
                  f"{'yes' if row.passed else 'no':>5}\n")
    if report.selected_d_mm is not None:
        out.write(f"selected d = {fmt(report.selected_d_mm)} mm\n")
    else:
        out.write("no feasible design\n")


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    _check_geometry_ranges(config.geometry)
    curves = _load_curves_arg(args.curves)
    mu_range = tuple(args.mu_range) if args.mu_range else MU_RANGE
    report = design_sweep(curves, config.geometry, config.profile, mu_range)

    out, close = _open_out(args.out)
    try:
        if args.format == "csv":
            _write_sweep_csv(report, out)
        else:
            _write_sweep_table(report, out)
    finally:
        if close:
            out.close()
    if close or args.format == "csv":
        line = (f"selected d = {fmt(report.selected_d_mm)} mm"
                if report.feasible else "no feasible design")
        print(line, file=sys.stderr)

    if args.svg is not None:
        write_band_svg(args.svg, curves, config.geometry, mu_range)

    return EXIT_OK if report.feasible else EXIT_ANALYTIC


def cmd_step(args: argparse.Namespace) -> int:
    if args.tau <= 0.0:
        raise ConfigError(f"--tau must be > 0, got {args.tau}")
    if args.reference < 0.0:
        raise ConfigError(f"--reference must be >= 0, got {args.reference}")
    trace = pressure_step(args.reference, args.tau, args.dt, args.horizon)

    out, close = _open_out(args.out)
    try:
        out.write("time_s,pressure_mpa\n")
        for t, p in zip(trace.times, trace.pressures):
            out.write(f"{t:.9g},{p:.9g}\n")
    finally:
        if close:
            out.close()
    summary = (f"tau_s={fmt(args.tau)} "
               f"rise_time_10_90_s={fmt(rise_time_10_90(args.tau))}")
    print(summary, file=sys.stdout if close else sys.stderr)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    _check_geometry_ranges(config.geometry)
    if not config.schedule and not args.allow_empty_schedule:
        raise ConfigError(
            "simulation.schedule is empty (pass --allow-empty-schedule for "
            "a single-row timeline)")
    curves = _load_curves_arg(args.curves) if args.curves else bundled_curve_set()
    curve = _select_curve(curves, args.d)

    timeline = simulate_grasp_sequence(
        config.finger, config.scenario, curve, config.geometry,
        config.schedule, tau=config.tau, dt=config.dt,
        engage_pressure=config.engage_pressure)

    out, close = _open_out(args.out)
    try:
        timeline_to_csv(timeline, out)
    finally:
        if close:
            out.close()

    final = timeline[-1].state
    locks = ",".join(j.lock.value for j in final.joints)
    slips = sum(len(step.events) for step in timeline)
    summary = f"final_locks={locks} slip_events={slips}"
    print(summary, file=sys.stdout if close else sys.stderr)
    return EXIT_OK


# A small self-contained SVG writer for capacity-vs-pressure bands, so no
# rendering dependency is needed for the standard plot.

_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


def write_band_svg(path: str | Path, curves: CurveSet, geometry: LockGeometry,
                   mu_range: tuple[float, float] = MU_RANGE,
                   samples_per_curve: int = 60) -> None:
    """Write holding-moment bands over pressure for every curve as SVG."""
    width, height = 640, 440
    left, right, top, bottom = 70, 20, 20, 50
    plot_w, plot_h = width - left - right, height - top - bottom

    series = []
    p_max, m_max_value = 0.0, 0.0
    for d_mm in curves.d_values:
        curve = curves[d_mm]
        lo_p, hi_p = curve.pressures[0], curve.pressures[-1]
        pressures = [lo_p + (hi_p - lo_p) * i / (samples_per_curve - 1)
                     for i in range(samples_per_curve)]
        lo, hi = band_over_pressures(curve, geometry, mu_range[0], mu_range[1],
                                     pressures)
        series.append((d_mm, pressures, lo, hi))
        p_max = max(p_max, hi_p)
        m_max_value = max(m_max_value, float(hi.max()))
    if m_max_value <= 0.0:
        m_max_value = 1.0

    def sx(p: float) -> float:
        return left + plot_w * p / p_max

    def sy(m: float) -> float:
        return top + plot_h * (1.0 - m / m_max_value)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
        f'y2="{top + plot_h}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>',
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 12}" text-anchor="middle" '
        f'font-size="13">drive pressure (MPa)</text>',
        f'<text x="16" y="{top + plot_h / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {top + plot_h / 2:.1f})">holding moment (Nm)</text>',
    ]
    for i in range(5):
        p = p_max * i / 4
        m = m_max_value * i / 4
        parts.append(f'<text x="{sx(p):.1f}" y="{top + plot_h + 18}" '
                     f'text-anchor="middle" font-size="11">{p:.2f}</text>')
        parts.append(f'<text x="{left - 6}" y="{sy(m) + 4:.1f}" '
                     f'text-anchor="end" font-size="11">{m:.2f}</text>')

    for index, (d_mm, pressures, lo, hi) in enumerate(series):
        color = _SVG_COLORS[index % len(_SVG_COLORS)]
        forward = " ".join(f"{sx(p):.2f},{sy(h):.2f}" for p, h in zip(pressures, hi))
        backward = " ".join(f"{sx(p):.2f},{sy(l):.2f}"
                            for p, l in zip(reversed(pressures), reversed(lo)))
        parts.append(f'<polygon points="{forward} {backward}" fill="{color}" '
                     f'fill-opacity="0.25" stroke="none"/>')
        parts.append(f'<polyline points="{forward}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        parts.append(f'<text x="{left + plot_w - 8}" y="{top + 16 + 16 * index}" '
                     f'text-anchor="end" font-size="12" fill="{color}">'
                     f'd = {d_mm:g} mm</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softfinger",
        description="Design and simulation toolkit for a pressure-activated "
                    "variable-stiffness soft finger.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="INI config file")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=("table", "csv"), default="table")

    p_lock = sub.add_parser("lock", help="holding capacity of one joint unit")
    add_common(p_lock)
    p_lock.add_argument("--force", type=float, help="pressing force in N")
    p_lock.add_argument("--pressure", type=float, help="drive pressure in MPa")
    p_lock.add_argument("--curves", help="curve CSV (required with --pressure)")
    p_lock.add_argument("--d", type=float, help="plate gap in mm to pick a curve")
    p_lock.add_argument("--mu-range", type=float, nargs=2, metavar=("LO", "HI"))
    p_lock.set_defaults(func=cmd_lock)

    p_grasp = sub.add_parser("grasp", help="wrap-grasp requirement and feasibility")
    add_common(p_grasp)
    p_grasp.add_argument("--m-max", type=float, help="capacity in Nm to compare against")
    p_grasp.add_argument("--curves", help="curve CSV to compute capacity from")
    p_grasp.add_argument("--d", type=float, help="plate gap in mm to pick a curve")
    p_grasp.set_defaults(func=cmd_grasp)

    p_sweep = sub.add_parser("sweep", help="plate-gap design sweep")
    add_common(p_sweep)
    p_sweep.add_argument("--curves", required=True, help="curve CSV")
    p_sweep.add_argument("--mu-range", type=float, nargs=2, metavar=("LO", "HI"))
    p_sweep.add_argument("--svg", help="also write a band plot SVG here")
    p_sweep.set_defaults(func=cmd_sweep)

    p_step = sub.add_parser("step", help="pressure step response trace")
    p_step.add_argument("--reference", type=float, required=True, help="MPa")
    p_step.add_argument("--tau", type=float, default=DEFAULT_TAU, help="s")
    p_step.add_argument("--dt", type=float, default=0.01, help="s")
    p_step.add_argument("--horizon", type=float, default=2.0, help="s")
    p_step.add_argument("--out", help="write the CSV here instead of stdout")
    p_step.set_defaults(func=cmd_step)

    p_sim = sub.add_parser("simulate", help="run a phase schedule")
    add_common(p_sim)
    p_sim.add_argument("--curves", help="curve CSV (default: bundled)")
    p_sim.add_argument("--d", type=float, default=2.5, help="plate gap in mm")
    p_sim.add_argument("--allow-empty-schedule", action="store_true")
    p_sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AlwaysLockedError as exc:
        print(f"error: {exc} (the design requirement is "
              "cos(theta) > mu*sin(theta))", file=sys.stderr)
        return EXIT_ANALYTIC
    except LimitViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYTIC
    except (SoftFingerError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
