import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rislab.scene import (
    CarrierConfig,
    ConfigError,
    PlaneWave,
    RadarNode,
    RisGeometry,
    ScenarioConfig,
    SPEED_OF_LIGHT_M_S,
    TargetTrajectory,
    default_scenario,
    element_positions,
    load_scenario,
    loads_scenario,
    serialize_scenario,
    wave_vector,
)

# Oracle: k0 = 2*pi*f/c with c = 299792458 m/s.
K0_5P5GHZ = 2.0 * math.pi * 5.5e9 / SPEED_OF_LIGHT_M_S


class TestCarrier:
    def test_default_carrier_derivations(self):
        carrier = default_scenario().carrier
        assert carrier.k0 == K0_5P5GHZ
        assert carrier.wavelength_m == SPEED_OF_LIGHT_M_S / 5.5e9
        assert carrier.wavelength_m == pytest.approx(0.0545077, rel=1e-5)
        assert carrier.k0 == pytest.approx(115.2715, rel=1e-6)

    def test_k0_wavelength_consistency(self):
        carrier = CarrierConfig.from_frequency(5.5e9)
        assert abs(carrier.k0 * carrier.wavelength_m - 2 * math.pi) <= 1e-12 * 2 * math.pi

    def test_nonpositive_frequency_rejected(self):
        with pytest.raises(ConfigError, match="frequency_hz"):
            CarrierConfig.from_frequency(0.0)

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(ConfigError, match="inconsistent"):
            CarrierConfig(frequency_hz=5.5e9, wavelength_m=0.05, k0=100.0)


class TestWaveVector:
    def test_normal_incidence(self):
        vec = wave_vector(0.0, K0_5P5GHZ, "incident")
        assert np.array_equal(vec, K0_5P5GHZ * np.array([-1.0, 0.0, 0.0]))

    def test_scattered_sign(self):
        vec = wave_vector(0.0, K0_5P5GHZ, "scattered")
        assert np.array_equal(vec, K0_5P5GHZ * np.array([1.0, 0.0, 0.0]))

    def test_norm_near_grazing(self):
        vec = wave_vector(89.999, K0_5P5GHZ, "incident")
        assert np.linalg.norm(vec) == pytest.approx(K0_5P5GHZ, rel=1e-12)

    def test_30deg_components(self):
        vec = wave_vector(30.0, K0_5P5GHZ, "incident")
        expected = K0_5P5GHZ * np.array(
            [-math.cos(math.radians(30.0)), -math.sin(math.radians(30.0)), 0.0]
        )
        assert np.array_equal(vec, expected)
        # matches the coarse reference values
        assert vec[0] == pytest.approx(-99.823, rel=1e-4)
        assert vec[1] == pytest.approx(-57.633, rel=1e-4)

    def test_out_of_half_space(self):
        with pytest.raises(ValueError, match="half-space"):
            wave_vector(90.0, K0_5P5GHZ, "incident")
        with pytest.raises(ValueError, match="half-space"):
            wave_vector(-120.0, K0_5P5GHZ, "scattered")

    def test_bad_direction(self):
        with pytest.raises(ValueError, match="direction"):
            wave_vector(0.0, K0_5P5GHZ, "sideways")


class TestElementPositions:
    def test_single_element_at_center(self):
        pos = element_positions(RisGeometry(center_m=(1.5, -2.0), element_count=1, spacing_m=0.016))
        assert pos.shape == (1, 2)
        assert pos[0, 0] == 1.5 and pos[0, 1] == -2.0

    def test_two_elements_split(self):
        pos = element_positions(RisGeometry(center_m=(0.0, 0.0), element_count=2, spacing_m=0.016))
        assert pos[:, 1].tolist() == [-0.008, 0.008]
        assert np.all(pos[:, 0] == 0.0)

    def test_sixteen_element_span(self):
        pos = element_positions(RisGeometry(center_m=(0.0, 0.0), element_count=16, spacing_m=0.016))
        assert pos[-1, 1] - pos[0, 1] == pytest.approx(0.240, rel=1e-12)
        assert np.all(np.diff(pos[:, 1]) > 0)
        np.testing.assert_allclose(np.diff(pos[:, 1]), 0.016, rtol=1e-12)

    def test_mean_is_center(self):
        ris = RisGeometry(center_m=(-3.0, 2.7), element_count=16, spacing_m=0.016)
        pos = element_positions(ris)
        np.testing.assert_allclose(pos.mean(axis=0), [-3.0, 2.7], rtol=0, atol=1e-12)

    def test_translation_equivariance_dyadic(self):
        ris0 = RisGeometry(center_m=(0.0, 0.0), element_count=7, spacing_m=0.25)
        ris1 = RisGeometry(center_m=(2.0, -4.5), element_count=7, spacing_m=0.25)
        assert np.array_equal(element_positions(ris1), element_positions(ris0) + [2.0, -4.5])

    @settings(max_examples=50, deadline=None)
    @given(
        cx=st.floats(-10, 10, allow_nan=False),
        cy=st.floats(-10, 10, allow_nan=False),
        vx=st.floats(-5, 5, allow_nan=False),
        vy=st.floats(-5, 5, allow_nan=False),
        n=st.integers(1, 32),
    )
    def test_translation_equivariance(self, cx, cy, vx, vy, n):
        a = element_positions(RisGeometry(center_m=(cx, cy), element_count=n, spacing_m=0.016))
        b = element_positions(RisGeometry(center_m=(cx + vx, cy + vy), element_count=n, spacing_m=0.016))
        np.testing.assert_allclose(b - a, np.broadcast_to([vx, vy], (n, 2)), rtol=0, atol=1e-12)


class TestInvariants:
    def test_plane_wave_bounds(self):
        with pytest.raises(ConfigError, match="half-space"):
            PlaneWave(incidence_deg=90.0)
        with pytest.raises(ConfigError, match="e0"):
            PlaneWave(incidence_deg=0.0, e0_v_per_m=0.0)

    def test_geometry_bounds(self):
        with pytest.raises(ConfigError, match="element_count must be ≥ 1"):
            RisGeometry(center_m=(0.0, 0.0), element_count=0, spacing_m=0.016)
        with pytest.raises(ConfigError, match="spacing_m"):
            RisGeometry(center_m=(0.0, 0.0), element_count=4, spacing_m=0.0)

    def test_target_bounds(self):
        with pytest.raises(ConfigError, match="radius_m"):
            TargetTrajectory(center_m=(0.0, 0.0), radius_m=-0.1, omega_rad_s=1.0)
        with pytest.raises(ConfigError, match="rcs_sqm"):
            TargetTrajectory(center_m=(0.0, 0.0), radius_m=0.1, omega_rad_s=1.0, rcs_sqm=0.0)

    def test_nyquist_guard(self):
        base = default_scenario()
        # target 2 tops out at 92.2 Hz Doppler; a 150 Hz prf undersamples it
        with pytest.raises(ConfigError, match="prf_hz must exceed"):
            ScenarioConfig(
                carrier=base.carrier,
                ris=base.ris,
                radar=base.radar,
                targets=base.targets,
                prf_hz=150.0,
                duration_s=1.5,
            )


class TestConfigFile:
    def test_load_default_shipped_config(self, tmp_path):
        from importlib import resources

        text = resources.files("rislab").joinpath("data/default.cfg").read_text()
        path = tmp_path / "default.cfg"
        path.write_text(text)
        loaded = load_scenario(path)
        assert loaded == default_scenario()
        assert loaded.carrier.k0 == K0_5P5GHZ

    def test_round_trip_bit_for_bit(self):
        scenario = default_scenario()
        assert loads_scenario(serialize_scenario(scenario)) == scenario

    def test_round_trip_awkward_floats(self):
        scenario = ScenarioConfig(
            carrier=CarrierConfig.from_frequency(5.4999999e9),
            ris=RisGeometry(center_m=(-3.1000000000000001, 2.7), element_count=3, spacing_m=0.0161),
            radar=RadarNode(position_m=(-2.5, 4.3), tx_power_w=2e-3),
            targets=(TargetTrajectory(center_m=(0.1, 0.3), radius_m=1e-3, omega_rad_s=0.7, rcs_sqm=2.5),),
            prf_hz=997.0,
            duration_s=0.123456789012345,
        )
        again = loads_scenario(serialize_scenario(scenario))
        assert again == scenario

    def test_missing_key(self):
        text = serialize_scenario(default_scenario())
        broken = "\n".join(l for l in text.splitlines() if not l.startswith("prf_hz"))
        with pytest.raises(ConfigError, match="config error: missing prf_hz"):
            loads_scenario(broken)

    def test_unknown_key_fail_closed(self):
        text = serialize_scenario(default_scenario()) + "noise_snr_db = 10\n"
        with pytest.raises(ConfigError, match="unknown key noise_snr_db"):
            loads_scenario(text)

    def test_duplicate_key(self):
        text = serialize_scenario(default_scenario()) + "prf_hz = 2000\n"
        with pytest.raises(ConfigError, match="duplicate key prf_hz"):
            loads_scenario(text)

    def test_invariant_violation_message(self):
        text = serialize_scenario(default_scenario()).replace("ris.n = 16", "ris.n = 0")
        with pytest.raises(ConfigError, match="element_count must be ≥ 1"):
            loads_scenario(text)

    def test_bad_number(self):
        text = serialize_scenario(default_scenario()).replace("prf_hz = 1000.0", "prf_hz = fast")
        with pytest.raises(ConfigError, match="not a number"):
            loads_scenario(text)

    def test_non_contiguous_target_indices(self):
        text = serialize_scenario(default_scenario()).replace("target.2.", "target.3.")
        with pytest.raises(ConfigError, match="contiguous"):
            loads_scenario(text)

    def test_comments_and_blank_lines_ignored(self):
        text = "# header\n\n" + serialize_scenario(default_scenario()) + "\n# trailer\n"
        assert loads_scenario(text) == default_scenario()

    def test_non_integer_element_count(self):
        text = serialize_scenario(default_scenario()).replace("ris.n = 16", "ris.n = 16.5")
        with pytest.raises(ConfigError, match="ris.n must be an integer"):
            loads_scenario(text)
