import io
import math
from dataclasses import replace

import numpy as np
import pytest

from softfinger.core_types import ForceCurve, LockGeometry
from softfinger.force_curves import (
    MU_RANGE,
    CurveFormatError,
    CurveRangeError,
    CurveSet,
    CurveValidationError,
    StiffnessProfile,
    bundled_curve_set,
    default_stiffness_profile,
    design_sweep,
    interpolate_force,
    load_curve_set,
    m_max_band,
)
from softfinger.lock_model import AlwaysLockedError, max_moment

GEOM = LockGeometry(theta=math.radians(30.0), mu=0.5, a=4e-3, b=3e-3,
                    r1=5e-3, protrusion_count=4)

WELL_FORMED = """\
d_mm,pressure_mpa,force_n
1.5,0.5,10
1.5,1.0,40
2.5,0.5,0
2.5,1.0,30
3.5,1.0,0
3.5,1.5,20
4.5,1.25,0
4.5,1.5,5
"""


def curve(*samples, d=2.5):
    return ForceCurve(d_mm=d, samples=tuple(samples))


class TestLoadCurveSet:
    def test_well_formed_four_curves(self):
        curves = load_curve_set(io.StringIO(WELL_FORMED))
        assert curves.d_values == (1.5, 2.5, 3.5, 4.5)
        assert curves[1.5].samples == ((0.5, 10.0), (1.0, 40.0))

    def test_rows_sorted_by_pressure(self):
        text = "d_mm,pressure_mpa,force_n\n2.5,1.0,30\n2.5,0.5,0\n"
        curves = load_curve_set(io.StringIO(text))
        assert curves[2.5].pressures == (0.5, 1.0)

    def test_empty_file(self):
        with pytest.raises(CurveFormatError, match="empty file"):
            load_curve_set(io.StringIO(""))

    def test_header_only(self):
        with pytest.raises(CurveFormatError, match="no data rows"):
            load_curve_set(io.StringIO("d_mm,pressure_mpa,force_n\n"))

    def test_missing_column(self):
        with pytest.raises(CurveFormatError, match="missing required column"):
            load_curve_set(io.StringIO("d_mm,pressure_mpa\n2.5,0.5\n"))

    def test_unparsable_number_names_line(self):
        text = "d_mm,pressure_mpa,force_n\n2.5,0.5,0\n2.5,oops,30\n"
        with pytest.raises(CurveFormatError, match="line 3"):
            load_curve_set(io.StringIO(text))

    def test_duplicate_pressure_cites_row(self):
        text = "d_mm,pressure_mpa,force_n\n2.5,0.5,0\n2.5,0.5,30\n2.5,1.0,40\n"
        with pytest.raises(CurveValidationError, match="duplicate pressure"):
            load_curve_set(io.StringIO(text))

    def test_negative_force_rejected(self):
        text = "d_mm,pressure_mpa,force_n\n2.5,0.5,-3\n2.5,1.0,40\n"
        with pytest.raises(CurveValidationError, match="negative force"):
            load_curve_set(io.StringIO(text))

    def test_single_sample_rejected(self):
        text = "d_mm,pressure_mpa,force_n\n2.5,0.5,0\n"
        with pytest.raises(CurveValidationError, match="at least 2"):
            load_curve_set(io.StringIO(text))

    def test_comments_and_blank_lines_skipped(self):
        text = "# a comment\n\nd_mm,pressure_mpa,force_n\n# another\n2.5,0.5,0\n2.5,1.0,30\n"
        curves = load_curve_set(io.StringIO(text))
        assert curves[2.5].forces == (0.0, 30.0)

    def test_mmax_rows_need_conversion_geometry(self):
        text = ("d_mm,pressure_mpa,force_n,value_kind\n"
                "2.5,0.5,0,mmax_nm\n2.5,1.0,0.5,mmax_nm\n")
        with pytest.raises(CurveValidationError, match="conversion"):
            load_curve_set(io.StringIO(text))

    def test_mmax_rows_convert_back_to_force(self):
        forces = (0.0, 30.0, 110.0)
        pressures = (0.5, 1.0, 1.5)
        moments = [max_moment(f, GEOM).m_max for f in forces]
        lines = ["d_mm,pressure_mpa,force_n,value_kind"]
        lines += [f"2.5,{p},{m!r},mmax_nm" for p, m in zip(pressures, moments)]
        curves = load_curve_set(io.StringIO("\n".join(lines) + "\n"),
                                conversion_geometry=GEOM)
        for expected, actual in zip(forces, curves[2.5].forces):
            assert actual == pytest.approx(expected, abs=1e-9)

    def test_bad_value_kind(self):
        text = "d_mm,pressure_mpa,force_n,value_kind\n2.5,0.5,0,weird\n"
        with pytest.raises(CurveFormatError, match="value_kind"):
            load_curve_set(io.StringIO(text))

    def test_bundled_fixture(self):
        curves = bundled_curve_set()
        assert curves.d_values == (1.5, 2.5, 3.5, 4.5)
        # The d=2.5 curve engages at 0.5 MPa, matching the observed behavior.
        assert curves[2.5].samples[0] == (0.5, 0.0)


class TestInterpolateForce:
    CURVE = ForceCurve(d_mm=2.5, samples=((0.5, 0.0), (1.0, 30.0), (1.5, 110.0)))

    def test_sample_points_exact(self):
        for p, f in self.CURVE.samples:
            assert interpolate_force(self.CURVE, p) == f

    def test_midpoint_is_mean(self):
        assert interpolate_force(self.CURVE, 1.25) == pytest.approx(70.0, rel=1e-12)

    def test_below_first_sample_is_zero(self):
        assert interpolate_force(self.CURVE, 0.0) == 0.0
        assert interpolate_force(self.CURVE, 0.49) == 0.0

    def test_above_last_sample_refused(self):
        with pytest.raises(CurveRangeError):
            interpolate_force(self.CURVE, 1.51)

    def test_negative_pressure_rejected(self):
        with pytest.raises(ValueError):
            interpolate_force(self.CURVE, -0.1)

    def test_monotone_when_samples_monotone(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            pressures = np.sort(rng.uniform(0.1, 2.0, size=6))
            while len(set(pressures)) < 6:
                pressures = np.sort(rng.uniform(0.1, 2.0, size=6))
            forces = np.sort(rng.uniform(0.0, 200.0, size=6))
            c = ForceCurve(d_mm=1.0, samples=tuple(zip(pressures, forces)))
            queries = np.sort(rng.uniform(0.0, pressures[-1], size=30))
            values = [interpolate_force(c, float(q)) for q in queries]
            assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


class TestMMaxBand:
    CURVE = ForceCurve(d_mm=2.5, samples=((0.5, 0.0), (1.0, 35.0), (1.5, 110.0)))

    def test_degenerate_band(self):
        lo, hi = m_max_band(self.CURVE, GEOM, 0.5, 0.5, 1.5)
        assert lo == hi

    def test_below_engagement_zero(self):
        assert m_max_band(self.CURVE, GEOM, 0.4, 0.7, 0.3) == (0.0, 0.0)

    def test_band_contains_bench_capacity(self):
        lo, hi = m_max_band(bundled_curve_set()[2.5], GEOM, 0.4, 0.7, 1.5)
        assert lo <= 1.2 <= hi

    def test_endpoints_equal_max_moment(self):
        lo, hi = m_max_band(self.CURVE, GEOM, 0.4, 0.7, 1.5)
        force = interpolate_force(self.CURVE, 1.5)
        assert lo == pytest.approx(max_moment(force, replace(GEOM, mu=0.4)).m_max,
                                   rel=1e-12)
        assert hi == pytest.approx(max_moment(force, replace(GEOM, mu=0.7)).m_max,
                                   rel=1e-12)
        assert lo <= hi

    def test_monotone_in_pressure(self):
        pressures = np.linspace(0.0, 1.5, 25)
        bands = [m_max_band(self.CURVE, GEOM, 0.4, 0.7, float(p)) for p in pressures]
        for (lo_a, hi_a), (lo_b, hi_b) in zip(bands, bands[1:]):
            assert lo_b >= lo_a - 1e-12
            assert hi_b >= hi_a - 1e-12

    def test_always_locked_mu_hi(self):
        # cot(30 deg) = 1.732; mu_hi = 1.8 breaks the release condition.
        with pytest.raises(AlwaysLockedError):
            m_max_band(self.CURVE, GEOM, 0.4, 1.8, 1.5)

    def test_mu_order_enforced(self):
        with pytest.raises(ValueError):
            m_max_band(self.CURVE, GEOM, 0.7, 0.4, 1.5)


class TestDesignSweep:
    def test_bundled_fixture_selects_2_5(self):
        report = design_sweep(bundled_curve_set(), GEOM, default_stiffness_profile())
        assert report.feasible
        assert report.selected_d_mm == 2.5
        by_d = {row.d_mm: row for row in report.rows}
        assert not by_d[1.5].soft_ok and by_d[1.5].grasp_ok
        assert by_d[2.5].passed
        assert by_d[3.5].soft_ok and not by_d[3.5].grasp_ok
        assert by_d[4.5].soft_ok and not by_d[4.5].grasp_ok

    def test_impossible_profile_is_result_not_exception(self):
        profile = StiffnessProfile(soft_pressure=0.75, soft_max_moment=0.2,
                                   grasp_pressure=1.5, grasp_min_moment=1e9)
        report = design_sweep(bundled_curve_set(), GEOM, profile)
        assert not report.feasible
        assert report.selected_d_mm is None
        assert all(not row.passed for row in report.rows)

    def test_single_passing_curve_selected(self):
        single = CurveSet(curves={2.5: bundled_curve_set()[2.5]})
        report = design_sweep(single, GEOM, default_stiffness_profile())
        assert report.selected_d_mm == 2.5

    def test_insertion_order_independent(self):
        curves = bundled_curve_set().curves
        forward = CurveSet(curves=dict(sorted(curves.items())))
        backward = CurveSet(curves=dict(sorted(curves.items(), reverse=True)))
        profile = default_stiffness_profile()
        assert design_sweep(forward, GEOM, profile).rows \
            == design_sweep(backward, GEOM, profile).rows

    def test_uncovered_constraint_pressure_fails_with_nan(self):
        short = CurveSet(curves={2.5: ForceCurve(
            d_mm=2.5, samples=((0.5, 0.0), (1.0, 35.0)))})
        report = design_sweep(short, GEOM, default_stiffness_profile())
        row = report.rows[0]
        assert not row.grasp_ok
        assert math.isnan(row.grasp_moment_lo)
        assert not report.feasible

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            design_sweep(CurveSet(curves={}), GEOM, default_stiffness_profile())


class TestStiffnessProfile:
    def test_defaults(self):
        profile = default_stiffness_profile()
        assert profile.soft_pressure == 0.75
        assert profile.grasp_pressure == 1.5
        assert profile.grasp_min_moment == 0.6

    def test_pressure_ordering_enforced(self):
        with pytest.raises(ValueError):
            StiffnessProfile(soft_pressure=2.0, soft_max_moment=0.2,
                             grasp_pressure=1.5, grasp_min_moment=0.6)

    def test_mu_range_constant(self):
        assert MU_RANGE == (0.4, 0.7)
