#!/usr/bin/env python3
"""Holding capacity of the self-locking joint unit.

Walks the capacity formula M_max = F * gain(theta, mu) * D/(a*b): the
friction gain, its always-locked frontier cos(theta) = mu*sin(theta), the
lever integral D over the protrusion contact face, and the capacity band
the friction uncertainty (mu between 0.4 and 0.7 for printed plates)
implies at working pressure.
"""

import math

from softfinger import (
    amplification_factor,
    bundled_curve_set,
    default_finger_spec,
    default_lock_geometry,
    interpolate_force,
    lever_integral,
    m_max_band,
    max_moment,
    moment_to_tip_force,
    validate_geometry,
)
from softfinger.lock_model import AlwaysLockedError


def main() -> None:
    geom = default_lock_geometry()
    print("Placeholder lock geometry (the real part dimensions are not "
          "public):")
    print(f"  theta = {math.degrees(geom.theta):g} deg, mu = {geom.mu:g}, "
          f"a = {geom.a * 1e3:g} mm, b = {geom.b * 1e3:g} mm, "
          f"r1 = {geom.r1 * 1e3:g} mm")
    print(f"  valid: {validate_geometry(geom).ok}\n")

    print("Friction gain (sin + mu*cos)/(cos - mu*sin) and where it blows up:")
    for mu in (0.4, 0.5, 0.7):
        gain = amplification_factor(geom.theta, mu)
        print(f"  mu = {mu:g}: gain = {gain:.4f}")
    try:
        amplification_factor(math.radians(60.0), 0.7)
    except AlwaysLockedError as exc:
        print(f"  theta = 60 deg, mu = 0.7 -> {exc}")
    print()

    d_integral = lever_integral(geom)
    print(f"Lever integral D = {d_integral:.6e} m^3 "
          f"(effective lever D/(a*b) = {d_integral / (geom.a * geom.b) * 1e3:.3f} mm)\n")

    curve = bundled_curve_set()[2.5]
    finger = default_finger_spec()
    print("Capacity of the d = 2.5 mm unit vs drive pressure:")
    print(f"  {'P (MPa)':>8}  {'F (N)':>7}  {'M_max (Nm)':>11}  "
          f"{'band 0.4..0.7 (Nm)':>20}")
    for pressure in (0.25, 0.5, 0.75, 1.0, 1.25, 1.5):
        force = interpolate_force(curve, pressure)
        capacity = max_moment(force, geom).m_max
        lo, hi = m_max_band(curve, geom, 0.4, 0.7, pressure)
        print(f"  {pressure:8.2f}  {force:7.1f}  {capacity:11.4f}  "
              f"[{lo:7.4f}, {hi:7.4f}]")
    print()

    lo, hi = m_max_band(curve, geom, 0.4, 0.7, 1.5)
    print(f"At 1.5 MPa the band [{lo:.3f}, {hi:.3f}] Nm contains the bench "
          f"measurement of about 1.2 Nm.")
    tip = moment_to_tip_force(1.2, finger.root_to_tip)
    print(f"Over the {finger.root_to_tip * 1e3:g} mm root-to-tip lever that "
          f"capacity equals a {tip:.3g} N fingertip force.")
    print("Below 0.5 MPa the plates are not yet in contact, so the "
          "capacity is zero and the joint stays compliant.")


if __name__ == "__main__":
    main()
