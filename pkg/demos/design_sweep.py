#!/usr/bin/env python3
"""Plate-gap design sweep.

The gap d between the locking plates sets when they come into contact and
how hard they press at a given pressure, so it shapes the whole
variable-stiffness profile. This sweep scores each sampled d against two
constraints: stay compliant at low pressure (band top at 0.75 MPa at or
below 0.2 Nm) and hold the grasp at working pressure (band bottom at
1.5 MPa above 0.6 Nm). The smallest passing gap wins.

Writes the sweep table as CSV and the capacity bands as an SVG plot next
to this script (demos/output/).
"""

from pathlib import Path

from softfinger import (
    bundled_curve_set,
    default_lock_geometry,
    default_stiffness_profile,
    design_sweep,
)
from softfinger.cli import write_band_svg

OUTPUT = Path(__file__).parent / "output"


def main() -> None:
    curves = bundled_curve_set()
    geom = default_lock_geometry()
    profile = default_stiffness_profile()

    print(f"Curves: d = {', '.join(f'{d:g}' for d in curves.d_values)} mm "
          f"({curves.provenance})")
    print(f"Profile: band top <= {profile.soft_max_moment:g} Nm at "
          f"{profile.soft_pressure:g} MPa; band bottom > "
          f"{profile.grasp_min_moment:g} Nm at {profile.grasp_pressure:g} MPa\n")

    report = design_sweep(curves, geom, profile)
    print(f"{'d (mm)':>7}  {'soft top (Nm)':>14}  {'soft':>5}  "
          f"{'grasp bottom (Nm)':>18}  {'grasp':>5}  {'pass':>5}")
    for row in report.rows:
        print(f"{row.d_mm:7.1f}  {row.soft_moment_hi:14.4f}  "
              f"{'ok' if row.soft_ok else 'FAIL':>5}  "
              f"{row.grasp_moment_lo:18.4f}  "
              f"{'ok' if row.grasp_ok else 'FAIL':>5}  "
              f"{'yes' if row.passed else 'no':>5}")
    print()

    if report.feasible:
        print(f"Selected d = {report.selected_d_mm:g} mm: small gaps lock too "
              "early (stiff while it should conform), large gaps engage too "
              "late to hold the grasp.")
    else:
        print("No gap satisfies the profile.")

    OUTPUT.mkdir(exist_ok=True)
    csv_path = OUTPUT / "sweep.csv"
    with open(csv_path, "w", encoding="utf-8") as handle:
        handle.write("d_mm,soft_moment_hi_nm,soft_ok,grasp_moment_lo_nm,"
                     "grasp_ok,passed\n")
        for row in report.rows:
            handle.write(f"{row.d_mm:.9g},{row.soft_moment_hi:.9g},"
                         f"{str(row.soft_ok).lower()},{row.grasp_moment_lo:.9g},"
                         f"{str(row.grasp_ok).lower()},"
                         f"{str(row.passed).lower()}\n")
    svg_path = OUTPUT / "capacity_bands.svg"
    write_band_svg(svg_path, curves, geom)
    print(f"\nWrote {csv_path} and {svg_path}")


if __name__ == "__main__":
    main()
