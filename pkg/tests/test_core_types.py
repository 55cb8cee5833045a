import math

import numpy as np
import pytest

from softfinger.core_types import (
    FingerSpec,
    ForceCurve,
    GraspScenario,
    LockGeometry,
    default_finger_spec,
    default_grasp_scenario,
    default_lock_geometry,
    validate_geometry,
)
from softfinger import units


def geom(**overrides):
    base = dict(theta=math.radians(30.0), mu=0.5, a=4e-3, b=3e-3, r1=5e-3,
                protrusion_count=4)
    base.update(overrides)
    return LockGeometry(**base)


class TestValidateGeometry:
    def test_nominal_geometry_ok(self):
        # cos30 - 0.5*sin30 = 0.616 > 0
        result = validate_geometry(geom())
        assert result.ok
        assert result.violations == ()

    def test_always_locked_combination_flagged(self):
        # cos60 - 0.7*sin60 = -0.106 <= 0
        result = validate_geometry(geom(theta=math.radians(60.0), mu=0.7))
        assert not result.ok
        assert result.always_locked()
        assert not result.range_errors()

    def test_theta_zero_is_range_violation(self):
        result = validate_geometry(geom(theta=0.0))
        assert not result.ok
        kinds = {(v.field, v.kind) for v in result.violations}
        assert ("theta", "range") in kinds

    @pytest.mark.parametrize("overrides,field", [
        (dict(mu=0.0), "mu"),
        (dict(mu=-0.1), "mu"),
        (dict(a=0.0), "a"),
        (dict(b=-1e-3), "b"),
        (dict(r1=-1e-6), "r1"),
        (dict(protrusion_count=0), "protrusion_count"),
        (dict(theta=math.pi / 2), "theta"),
    ])
    def test_range_violations(self, overrides, field):
        result = validate_geometry(geom(**overrides))
        assert not result.ok
        assert field in {v.field for v in result.violations}

    def test_pure_and_deterministic(self):
        g = geom(theta=math.radians(60.0), mu=0.7)
        assert validate_geometry(g) == validate_geometry(g)


class TestForceCurve:
    def test_valid_curve(self):
        curve = ForceCurve(d_mm=2.5, samples=((0.5, 0.0), (1.0, 35.0), (1.5, 110.0)))
        assert curve.pressures == (0.5, 1.0, 1.5)
        assert curve.forces == (0.0, 35.0, 110.0)

    def test_too_few_samples(self):
        with pytest.raises(ValueError, match="at least 2"):
            ForceCurve(d_mm=2.5, samples=((0.5, 0.0),))

    def test_non_increasing_pressure(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            ForceCurve(d_mm=2.5, samples=((0.5, 0.0), (0.5, 10.0)))

    def test_negative_force(self):
        with pytest.raises(ValueError, match="negative force"):
            ForceCurve(d_mm=2.5, samples=((0.5, -1.0), (1.0, 10.0)))


class TestFingerSpec:
    def test_defaults_are_valid(self):
        spec = default_finger_spec()
        assert spec.total_length == pytest.approx(0.1935)
        assert spec.root_to_tip == pytest.approx(0.142)
        assert spec.in_plane_limit == pytest.approx(math.radians(135.0))
        assert spec.out_of_plane_limit == pytest.approx(math.radians(115.0))
        assert spec.segment_length == pytest.approx(0.1935 / spec.joint_count)

    @pytest.mark.parametrize("overrides", [
        dict(total_length=0.0),
        dict(joint_count=0),
        dict(root_to_tip=-0.1),
        dict(in_plane_limit=0.0),
        dict(out_of_plane_limit=math.pi),
    ])
    def test_invalid_specs_raise(self, overrides):
        base = dict(total_length=0.1935, joint_count=6, root_to_tip=0.142,
                    in_plane_limit=math.radians(135.0),
                    out_of_plane_limit=math.radians(115.0))
        base.update(overrides)
        with pytest.raises(ValueError):
            FingerSpec(**base)


class TestGraspScenario:
    def test_defaults(self):
        scenario = default_grasp_scenario()
        assert scenario.mass == 1.5
        assert scenario.finger_count == 3
        assert scenario.finger_length == 0.2

    def test_zero_mass_allowed(self):
        scenario = GraspScenario(mass=0.0, finger_count=3, finger_length=0.2,
                                 object_radius=0.06)
        assert scenario.mass == 0.0

    @pytest.mark.parametrize("overrides", [
        dict(mass=-1.0),
        dict(finger_count=1),
        dict(finger_length=0.0),
        dict(object_radius=0.0),
        dict(operating_pressure=-0.1),
    ])
    def test_invalid_scenarios_raise(self, overrides):
        base = dict(mass=1.5, finger_count=3, finger_length=0.2,
                    object_radius=0.06, operating_pressure=1.5)
        base.update(overrides)
        with pytest.raises(ValueError):
            GraspScenario(**base)


def test_unit_round_trips():
    rng = np.random.default_rng(7)
    values = rng.uniform(1e-6, 1e6, size=200)
    for x in values:
        assert abs(units.mm_to_m(units.m_to_mm(x)) - x) <= 1e-12 * abs(x)
        assert abs(units.m_to_mm(units.mm_to_m(x)) - x) <= 1e-12 * abs(x)
        assert abs(units.mpa_to_pa(units.pa_to_mpa(x)) - x) <= 1e-12 * abs(x)
        assert abs(units.pa_to_mpa(units.mpa_to_pa(x)) - x) <= 1e-12 * abs(x)
        assert abs(units.deg_to_rad(units.rad_to_deg(x)) - x) <= 1e-12 * abs(x)


def test_default_geometry_is_usable():
    assert validate_geometry(default_lock_geometry()).ok
