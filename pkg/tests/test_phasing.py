import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rislab.phasing import (
    DUAL_BEAM_ONE_BIT,
    METAL,
    ONE_BEAM,
    PhaseProfile,
    SteeringCommand,
    circular_distance_deg,
    metal_profile,
    profile_for_mode,
    quantization_error,
    quantize_one_bit,
    snell_profile,
    write_profile_csv,
)
from rislab.scene import SPEED_OF_LIGHT_M_S

K0 = 2.0 * math.pi * 5.5e9 / SPEED_OF_LIGHT_M_S
DY = 0.016

profiles = st.lists(st.floats(-1e4, 1e4, allow_nan=False), min_size=1, max_size=32)


class TestMetal:
    def test_sixteen_zeros(self):
        profile = metal_profile(16)
        assert profile.mode == METAL
        assert profile.phases_deg == (0.0,) * 16

    def test_single(self):
        assert metal_profile(1).phases_deg == (0.0,)

    def test_quantize_metal_is_identity(self):
        assert quantize_one_bit(metal_profile(16)) == metal_profile(16)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            metal_profile(0)


class TestSnell:
    def test_same_angles_all_zero(self):
        cmd = SteeringCommand(incidence_deg=17.0, desired_deg=17.0)
        profile = snell_profile(cmd, K0, DY, 16)
        assert profile.mode == ONE_BEAM
        assert all(p == 0.0 for p in profile.phases_deg)

    def test_thirty_degree_slope(self):
        # slope per element: k0 * dy * (sin 30 - sin 0), in degrees
        cmd = SteeringCommand(incidence_deg=0.0, desired_deg=30.0)
        profile = snell_profile(cmd, K0, DY, 16)
        slope = math.degrees(K0 * DY * (math.sin(math.radians(30.0)) - math.sin(math.radians(0.0))))
        assert slope == pytest.approx(52.8366, abs=5e-5)
        for n, phase in enumerate(profile.phases_deg):
            assert phase == n * slope

    def test_reference_slope_from_given_wavenumber(self):
        # with the coarser reference product k0*dy = 1.844250 rad the ramp
        # starts 0, 52.83, 105.67, 158.50, ...
        profile = snell_profile(
            SteeringCommand(incidence_deg=0.0, desired_deg=30.0), 1.844250 / DY, DY, 4
        )
        np.testing.assert_allclose(profile.phases_deg, [0.0, 52.83, 105.67, 158.50], atol=0.005)

    def test_first_element_is_reference(self):
        profile = snell_profile(SteeringCommand(incidence_deg=-45.0, desired_deg=60.0), K0, DY, 8)
        assert profile.phases_deg[0] == 0.0

    def test_unwrapped(self):
        profile = snell_profile(SteeringCommand(incidence_deg=0.0, desired_deg=30.0), K0, DY, 16)
        assert max(profile.phases_deg) > 360.0

    def test_odd_symmetry(self):
        plus = snell_profile(SteeringCommand(incidence_deg=0.0, desired_deg=30.0), K0, DY, 16)
        minus = snell_profile(SteeringCommand(incidence_deg=0.0, desired_deg=-30.0), K0, DY, 16)
        assert np.array_equal(np.asarray(minus.phases_deg), -np.asarray(plus.phases_deg))

    @settings(max_examples=50, deadline=None)
    @given(
        phi_i=st.floats(-89.0, 89.0, allow_nan=False),
        phi_d=st.floats(-90.0, 90.0, allow_nan=False),
        n=st.integers(1, 32),
    )
    def test_slope_property(self, phi_i, phi_d, n):
        cmd = SteeringCommand(incidence_deg=phi_i, desired_deg=phi_d)
        profile = snell_profile(cmd, K0, DY, n)
        slope = math.degrees(K0 * DY * (math.sin(math.radians(phi_d)) - math.sin(math.radians(phi_i))))
        ph = np.asarray(profile.phases_deg)
        np.testing.assert_allclose(np.diff(ph), slope, rtol=1e-12, atol=1e-9)


class TestQuantizer:
    def test_interval_boundaries(self):
        profile = PhaseProfile(mode=ONE_BEAM, phases_deg=(89.99, 90.0, 269.99, 270.0))
        assert quantize_one_bit(profile).phases_deg == (0.0, 180.0, 180.0, 0.0)

    def test_negative_phase_wraps(self):
        profile = PhaseProfile(mode=ONE_BEAM, phases_deg=(-30.0,))
        assert quantize_one_bit(profile).phases_deg == (0.0,)  # -30 wraps to 330

    def test_thirty_degree_ramp_pattern(self):
        # frozen by applying the wrap-then-threshold rule to each element of
        # the (0 -> 30) ramp; element 13 carries phase 274.0 deg, outside
        # [90, 270), hence 0
        profile = snell_profile(SteeringCommand(incidence_deg=0.0, desired_deg=30.0), K0, DY, 16)
        expected = (0, 0, 180, 180, 180, 180, 0, 0, 0, 180, 180, 180, 0, 0, 0, 0)
        quantized = quantize_one_bit(profile)
        assert quantized.mode == DUAL_BEAM_ONE_BIT
        assert quantized.phases_deg == tuple(float(v) for v in expected)
        assert quantized.command == profile.command

    @settings(max_examples=100, deadline=None)
    @given(phases=profiles)
    def test_idempotent(self, phases):
        profile = PhaseProfile(mode=ONE_BEAM, phases_deg=tuple(phases))
        once = quantize_one_bit(profile)
        assert quantize_one_bit(once) == once

    @settings(max_examples=100, deadline=None)
    @given(phases=profiles)
    def test_two_valued(self, phases):
        out = quantize_one_bit(PhaseProfile(mode=ONE_BEAM, phases_deg=tuple(phases)))
        assert set(out.phases_deg) <= {0.0, 180.0}


class TestQuantizationError:
    def test_identical_profiles(self):
        p = snell_profile(SteeringCommand(incidence_deg=0.0, desired_deg=20.0), K0, DY, 8)
        assert quantization_error(p, p) == 0.0

    def test_single_element_quarter_turn(self):
        a = PhaseProfile(mode=ONE_BEAM, phases_deg=(90.0,))
        b = PhaseProfile(mode=DUAL_BEAM_ONE_BIT, phases_deg=(180.0,))
        assert quantization_error(a, b) == 8100.0

    def test_metal_vs_quantized_metal(self):
        m = metal_profile(16)
        assert quantization_error(m, quantize_one_bit(m)) == 0.0

    def test_circular_not_linear(self):
        a = PhaseProfile(mode=ONE_BEAM, phases_deg=(350.0,))
        b = PhaseProfile(mode=DUAL_BEAM_ONE_BIT, phases_deg=(0.0,))
        assert quantization_error(a, b) == pytest.approx(100.0, rel=1e-12)  # 10 deg on the circle

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            quantization_error(metal_profile(3), metal_profile(4))

    @settings(max_examples=100, deadline=None)
    @given(phases=profiles)
    def test_bounded_by_n_times_8100(self, phases):
        ideal = PhaseProfile(mode=ONE_BEAM, phases_deg=tuple(phases))
        err = quantization_error(ideal, quantize_one_bit(ideal))
        assert 0.0 <= err <= len(phases) * 8100.0 * (1 + 1e-12)

    @settings(max_examples=100, deadline=None)
    @given(a=st.floats(-720, 720, allow_nan=False), b=st.floats(-720, 720, allow_nan=False))
    def test_circular_distance_range(self, a, b):
        d = circular_distance_deg(a, b)
        assert 0.0 <= d <= 180.0
        assert circular_distance_deg(b, a) == pytest.approx(d, abs=1e-9)


class TestProfileTypes:
    def test_metal_mode_enforces_zeros(self):
        with pytest.raises(ValueError, match="metal"):
            PhaseProfile(mode=METAL, phases_deg=(0.0, 1.0))

    def test_one_bit_mode_enforces_two_values(self):
        with pytest.raises(ValueError, match="0 or 180"):
            PhaseProfile(mode=DUAL_BEAM_ONE_BIT, phases_deg=(0.0, 90.0))

    def test_command_angle_bounds(self):
        with pytest.raises(ValueError, match="half-space"):
            SteeringCommand(incidence_deg=90.0, desired_deg=0.0)
        with pytest.raises(ValueError, match="half-space"):
            SteeringCommand(incidence_deg=0.0, desired_deg=90.5)
        SteeringCommand(incidence_deg=0.0, desired_deg=90.0)  # boundary allowed

    def test_profile_for_mode_dispatch(self):
        cmd = SteeringCommand(incidence_deg=0.0, desired_deg=30.0)
        assert profile_for_mode(METAL, cmd, K0, DY, 4).mode == METAL
        assert profile_for_mode(ONE_BEAM, cmd, K0, DY, 4).mode == ONE_BEAM
        assert profile_for_mode(DUAL_BEAM_ONE_BIT, cmd, K0, DY, 4).mode == DUAL_BEAM_ONE_BIT
        with pytest.raises(ValueError, match="unknown profile mode"):
            profile_for_mode("triple", cmd, K0, DY, 4)


class TestProfileCsv:
    def test_columns_and_rows(self, tmp_path):
        cmd = SteeringCommand(incidence_deg=0.0, desired_deg=30.0)
        ideal = snell_profile(cmd, K0, DY, 4)
        path = tmp_path / "profile.csv"
        write_profile_csv(ideal, quantize_one_bit(ideal), path)
        lines = path.read_text().splitlines()
        assert lines[0] == "n,zeta_ideal_deg,zeta_quantized_deg"
        assert len(lines) == 5
        assert lines[1] == "1,0,0"
        first = lines[2].split(",")
        assert first[0] == "2"
        assert float(first[1]) == pytest.approx(52.8366, abs=5e-5)
        assert first[2] == "0"
