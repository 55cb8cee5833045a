#!/usr/bin/env python3
"""Wrap-grasp load requirements, step by step.

A finger of length L grasps a cylinder by wrapping: the proximal half
bends 90 degrees out of plane, the distal half curls around the object at
radius R = L/pi. With the grasping force spread uniformly along the
contact, the root joint unit carries the largest moment in the chain, and
that moment is what the locking mechanism must hold.
"""

import math

from softfinger import (
    GraspScenario,
    default_grasp_scenario,
    grasp_requirement,
    required_root_moment,
)
from softfinger.grasp_requirements import DESIGN_REQUIRED_MOMENT


def describe(label: str, scenario: GraspScenario) -> None:
    req = grasp_requirement(scenario)
    print(f"{label}:")
    print(f"  mass {scenario.mass:g} kg, {scenario.finger_count} fingers, "
          f"L = {scenario.finger_length:g} m")
    print(f"  line load p          = {req.line_load:8.3f} N/m")
    print(f"  wrap radius R = L/pi = {req.wrap_radius:8.4f} m")
    print(f"  required root moment = {req.required_moment:8.4f} Nm")
    print()


def main() -> None:
    design = default_grasp_scenario()
    describe("Design target (1.5 kg cabbage-class object)", design)
    print(f"The mechanism was sized against the rounded target "
          f"{DESIGN_REQUIRED_MOMENT:g} Nm; the exact closed form gives "
          f"{required_root_moment(design):.4f} Nm.\n")

    heavy = GraspScenario(mass=3.0, finger_count=3, finger_length=0.2,
                          object_radius=0.2 / math.pi)
    describe("3 kg ball", heavy)
    print("At 3 kg the requirement (1.115 Nm) sits just under the bench\n"
          "capacity of about 1.2 Nm, so holding it is marginal in this\n"
          "model. The physical 3 kg demonstration also benefited from an\n"
          "upward-directed grasping force that this wrap idealization does\n"
          "not represent.\n")

    print("Scaling checks: the requirement is linear in mass and length and")
    print("inversely proportional to finger count:")
    base = required_root_moment(design)
    for label, scenario in [
        ("2x mass", GraspScenario(3.0, 3, 0.2, 0.2 / math.pi)),
        ("2x length", GraspScenario(1.5, 3, 0.4, 0.4 / math.pi)),
        ("2x fingers", GraspScenario(1.5, 6, 0.2, 0.2 / math.pi)),
    ]:
        ratio = required_root_moment(scenario) / base
        print(f"  {label:10s} -> {ratio:.3f}x the design moment")


if __name__ == "__main__":
    main()
