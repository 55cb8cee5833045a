"""Unit conventions and conversions.

Internal computation is SI throughout (m, N, Pa, rad). Millimeters, MPa and
degrees appear only at external boundaries (CSV files, config files, CLI
flags) and are converted on ingestion.
"""

from __future__ import annotations

import math
from typing import Final

GRAVITY: Final[float] = 9.80665  # m/s^2, standard gravity

MM_PER_M: Final[float] = 1e3
PA_PER_MPA: Final[float] = 1e6


def mm_to_m(value_mm: float) -> float:
    return value_mm / MM_PER_M


def m_to_mm(value_m: float) -> float:
    return value_m * MM_PER_M


def mpa_to_pa(value_mpa: float) -> float:
    return value_mpa * PA_PER_MPA


def pa_to_mpa(value_pa: float) -> float:
    return value_pa / PA_PER_MPA


def deg_to_rad(value_deg: float) -> float:
    return math.radians(value_deg)


def rad_to_deg(value_rad: float) -> float:
    return math.degrees(value_rad)
