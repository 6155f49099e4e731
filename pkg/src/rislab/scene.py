"""Scenario description: carrier, surface geometry, radar node, targets.

All angles are measured from the surface normal (+x axis), positive toward
+y, in degrees.  A wave incident from angle phi travels along
k0*(-cos phi, -sin phi); a wave scattered toward phi travels along
k0*(+cos phi, +sin phi).  Under this convention specular reflection
satisfies phi_s = phi_i.

Every type here is an immutable (frozen) dataclass, safe to share across
workers after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

SPEED_OF_LIGHT_M_S = 299792458.0


class ConfigError(ValueError):
    """Invalid scenario configuration (bad value, missing or unknown key)."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


@dataclass(frozen=True)
class CarrierConfig:
    """Carrier frequency plus derived wavelength and wavenumber."""

    frequency_hz: float
    wavelength_m: float
    k0: float  # rad/m

    def __post_init__(self) -> None:
        _require(self.frequency_hz > 0, f"frequency_hz must be > 0 (got {self.frequency_hz})")
        _require(
            abs(self.k0 * self.wavelength_m - 2.0 * math.pi) <= 1e-12 * 2.0 * math.pi,
            "k0 and wavelength_m are inconsistent (k0 * wavelength must equal 2*pi)",
        )

    @classmethod
    def from_frequency(cls, frequency_hz: float) -> "CarrierConfig":
        _require(frequency_hz > 0, f"frequency_hz must be > 0 (got {frequency_hz})")
        return cls(
            frequency_hz=frequency_hz,
            wavelength_m=SPEED_OF_LIGHT_M_S / frequency_hz,
            k0=2.0 * math.pi * frequency_hz / SPEED_OF_LIGHT_M_S,
        )


@dataclass(frozen=True)
class RisGeometry:
    """Linear reflective array along the y axis, normal along +x."""

    center_m: tuple[float, float]
    element_count: int
    spacing_m: float  # consecutive element separation, m

    def __post_init__(self) -> None:
        _require(
            int(self.element_count) == self.element_count and self.element_count >= 1,
            f"element_count must be ≥ 1 (got {self.element_count})",
        )
        _require(self.spacing_m > 0, f"spacing_m must be > 0 (got {self.spacing_m})")

    @property
    def aperture_m(self) -> float:
        return (self.element_count - 1) * self.spacing_m


@dataclass(frozen=True)
class PlaneWave:
    """Incident plane wave: signed angle from the surface normal, amplitude E0."""

    incidence_deg: float
    e0_v_per_m: float = 1.0

    def __post_init__(self) -> None:
        _require(
            abs(self.incidence_deg) < 90.0,
            f"incidence angle out of half-space: |{self.incidence_deg}| must be < 90 deg",
        )
        _require(self.e0_v_per_m > 0, f"e0_v_per_m must be > 0 (got {self.e0_v_per_m})")


@dataclass(frozen=True)
class RadarNode:
    """Monostatic radar: position, transmit power and linear antenna gains."""

    position_m: tuple[float, float]
    tx_power_w: float
    tx_gain: float = 1.0
    rx_gain: float = 1.0

    def __post_init__(self) -> None:
        _require(self.tx_power_w > 0, f"radar.ptx_w must be > 0 (got {self.tx_power_w})")
        _require(self.tx_gain > 0, f"radar.gtx must be > 0 (got {self.tx_gain})")
        _require(self.rx_gain > 0, f"radar.grx must be > 0 (got {self.rx_gain})")


@dataclass(frozen=True)
class TargetTrajectory:
    """Point target on a circular path around a fixed center."""

    center_m: tuple[float, float]
    radius_m: float
    omega_rad_s: float
    rcs_sqm: float = 1.0

    def __post_init__(self) -> None:
        _require(self.radius_m >= 0, f"target radius_m must be ≥ 0 (got {self.radius_m})")
        _require(self.rcs_sqm > 0, f"target rcs_sqm must be > 0 (got {self.rcs_sqm})")

    def max_doppler_hz(self, wavelength_m: float) -> float:
        """Largest instantaneous two-way Doppler of the circular motion."""
        return 2.0 * self.radius_m * abs(self.omega_rad_s) / wavelength_m


@dataclass(frozen=True)
class ScenarioConfig:
    """Full simulation scene; validated on construction."""

    carrier: CarrierConfig
    ris: RisGeometry
    radar: RadarNode
    targets: tuple[TargetTrajectory, ...]
    prf_hz: float
    duration_s: float

    def __post_init__(self) -> None:
        _require(self.prf_hz > 0, f"prf_hz must be > 0 (got {self.prf_hz})")
        _require(self.duration_s > 0, f"duration_s must be > 0 (got {self.duration_s})")
        # Nyquist: slow-time sampling must out-run the fastest target Doppler.
        for i, target in enumerate(self.targets, start=1):
            fmax = target.max_doppler_hz(self.carrier.wavelength_m)
            _require(
                self.prf_hz > 2.0 * fmax,
                f"prf_hz must exceed twice the maximum Doppler of target.{i} "
                f"(prf {self.prf_hz} Hz vs 2 x {fmax:.3f} Hz)",
            )


def wave_vector(angle_deg: float, k0: float, direction: str) -> np.ndarray:
    """3-vector wavenumber for an incident or scattered plane wave.

    Incident waves travel into the surface: k0*(-cos, -sin, 0).
    Scattered waves travel away from it: k0*(+cos, +sin, 0).
    """
    if abs(angle_deg) >= 90.0:
        raise ValueError(f"angle out of half-space: |{angle_deg}| must be < 90 deg")
    if direction not in ("incident", "scattered"):
        raise ValueError(f"direction must be 'incident' or 'scattered' (got {direction!r})")
    a = math.radians(angle_deg)
    sign = -1.0 if direction == "incident" else 1.0
    return k0 * np.array([sign * math.cos(a), sign * math.sin(a), 0.0])


def element_positions(ris: RisGeometry) -> np.ndarray:
    """(N, 2) element coordinates, centered on ris.center_m, ascending in y.

    Element 1 (row 0) is the end with the smallest y; it is the phase
    reference used by the profile synthesis.
    """
    offsets = (np.arange(ris.element_count) - (ris.element_count - 1) / 2.0) * ris.spacing_m
    pos = np.empty((ris.element_count, 2))
    pos[:, 0] = ris.center_m[0]
    pos[:, 1] = ris.center_m[1] + offsets
    return pos


# --- configuration file grammar -------------------------------------------
#
# Line-based "key = value" pairs, '#' starts a comment line, '.' decimal
# radix.  Unknown keys are rejected.  Targets are indexed 1..K with keys
# target.<i>.center_x_m / center_y_m / radius_m / omega_rad_s / rcs_sqm.

_SCALAR_KEYS = (
    "frequency_hz",
    "ris.center_x_m",
    "ris.center_y_m",
    "ris.n",
    "ris.dy_m",
    "radar.x_m",
    "radar.y_m",
    "radar.ptx_w",
    "radar.gtx",
    "radar.grx",
    "prf_hz",
    "duration_s",
)
_TARGET_FIELDS = ("center_x_m", "center_y_m", "radius_m", "omega_rad_s", "rcs_sqm")


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"config error: value of {key} is not a number: {raw!r}") from None


def loads_scenario(text: str) -> ScenarioConfig:
    """Parse a scenario from config text (see module docstring for grammar)."""
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"config error: line {lineno} is not a 'key = value' pair: {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key in pairs:
            raise ConfigError(f"config error: duplicate key {key}")
        pairs[key] = value

    target_keys: dict[int, dict[str, str]] = {}
    for key in list(pairs):
        if not key.startswith("target."):
            continue
        parts = key.split(".")
        if len(parts) != 3 or parts[2] not in _TARGET_FIELDS or not parts[1].isdigit():
            raise ConfigError(f"config error: unknown key {key}")
        target_keys.setdefault(int(parts[1]), {})[parts[2]] = pairs.pop(key)

    for key in pairs:
        if key not in _SCALAR_KEYS:
            raise ConfigError(f"config error: unknown key {key}")
    for key in _SCALAR_KEYS:
        if key not in pairs:
            raise ConfigError(f"config error: missing {key}")

    indices = sorted(target_keys)
    if indices and indices != list(range(1, len(indices) + 1)):
        raise ConfigError(f"config error: target indices must be contiguous from 1 (got {indices})")
    for i in indices:
        for field in _TARGET_FIELDS:
            if field not in target_keys[i]:
                raise ConfigError(f"config error: missing target.{i}.{field}")

    n_raw = pairs["ris.n"]
    try:
        n = int(n_raw)
    except ValueError:
        raise ConfigError(f"config error: ris.n must be an integer (got {n_raw!r})") from None

    try:
        targets = tuple(
            TargetTrajectory(
                center_m=(
                    _parse_float(f"target.{i}.center_x_m", target_keys[i]["center_x_m"]),
                    _parse_float(f"target.{i}.center_y_m", target_keys[i]["center_y_m"]),
                ),
                radius_m=_parse_float(f"target.{i}.radius_m", target_keys[i]["radius_m"]),
                omega_rad_s=_parse_float(f"target.{i}.omega_rad_s", target_keys[i]["omega_rad_s"]),
                rcs_sqm=_parse_float(f"target.{i}.rcs_sqm", target_keys[i]["rcs_sqm"]),
            )
            for i in indices
        )
        return ScenarioConfig(
            carrier=CarrierConfig.from_frequency(_parse_float("frequency_hz", pairs["frequency_hz"])),
            ris=RisGeometry(
                center_m=(
                    _parse_float("ris.center_x_m", pairs["ris.center_x_m"]),
                    _parse_float("ris.center_y_m", pairs["ris.center_y_m"]),
                ),
                element_count=n,
                spacing_m=_parse_float("ris.dy_m", pairs["ris.dy_m"]),
            ),
            radar=RadarNode(
                position_m=(
                    _parse_float("radar.x_m", pairs["radar.x_m"]),
                    _parse_float("radar.y_m", pairs["radar.y_m"]),
                ),
                tx_power_w=_parse_float("radar.ptx_w", pairs["radar.ptx_w"]),
                tx_gain=_parse_float("radar.gtx", pairs["radar.gtx"]),
                rx_gain=_parse_float("radar.grx", pairs["radar.grx"]),
            ),
            targets=targets,
            prf_hz=_parse_float("prf_hz", pairs["prf_hz"]),
            duration_s=_parse_float("duration_s", pairs["duration_s"]),
        )
    except ConfigError as exc:
        if str(exc).startswith("config error:"):
            raise
        raise ConfigError(f"config error: {exc}") from None


def load_scenario(path) -> ScenarioConfig:
    """Load and validate a scenario config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return loads_scenario(fh.read())


def serialize_scenario(scenario: ScenarioConfig) -> str:
    """Config text that round-trips every numeric field bit-for-bit."""
    lines = [
        f"frequency_hz = {scenario.carrier.frequency_hz!r}",
        f"ris.center_x_m = {scenario.ris.center_m[0]!r}",
        f"ris.center_y_m = {scenario.ris.center_m[1]!r}",
        f"ris.n = {scenario.ris.element_count}",
        f"ris.dy_m = {scenario.ris.spacing_m!r}",
        f"radar.x_m = {scenario.radar.position_m[0]!r}",
        f"radar.y_m = {scenario.radar.position_m[1]!r}",
        f"radar.ptx_w = {scenario.radar.tx_power_w!r}",
        f"radar.gtx = {scenario.radar.tx_gain!r}",
        f"radar.grx = {scenario.radar.rx_gain!r}",
        f"prf_hz = {scenario.prf_hz!r}",
        f"duration_s = {scenario.duration_s!r}",
    ]
    for i, target in enumerate(scenario.targets, start=1):
        lines += [
            f"target.{i}.center_x_m = {target.center_m[0]!r}",
            f"target.{i}.center_y_m = {target.center_m[1]!r}",
            f"target.{i}.radius_m = {target.radius_m!r}",
            f"target.{i}.omega_rad_s = {target.omega_rad_s!r}",
            f"target.{i}.rcs_sqm = {target.rcs_sqm!r}",
        ]
    return "\n".join(lines) + "\n"


def default_scenario() -> ScenarioConfig:
    """Built-in desk scene: 5.5 GHz, 16-element surface, two rotating targets.

    Radar at (-2.5, 4.3) m transmitting 2 mW (+3 dBm) with unit gains;
    surface centered at (-3, 2.7) m with 0.016 m element pitch; both targets
    circle with 0.2 m radius at 2*pi and 4*pi rad/s, 1 m^2 cross-section.
    """
    return ScenarioConfig(
        carrier=CarrierConfig.from_frequency(5.5e9),
        ris=RisGeometry(center_m=(-3.0, 2.7), element_count=16, spacing_m=0.016),
        radar=RadarNode(position_m=(-2.5, 4.3), tx_power_w=2e-3, tx_gain=1.0, rx_gain=1.0),
        targets=(
            TargetTrajectory(center_m=(-1.0, 2.1), radius_m=0.2, omega_rad_s=2.0 * math.pi, rcs_sqm=1.0),
            TargetTrajectory(center_m=(-1.0, 3.2), radius_m=0.2, omega_rad_s=4.0 * math.pi, rcs_sqm=1.0),
        ),
        prf_hz=1000.0,
        duration_s=1.5,
    )


def with_targets(scenario: ScenarioConfig, targets: tuple[TargetTrajectory, ...]) -> ScenarioConfig:
    """Copy of the scenario with a different target list (re-validated)."""
    return replace(scenario, targets=targets)
