"""Far-field scattering engine for the phased reflective surface.

The scattered field of the N-element array observed at angle phi_s under a
plane wave incident from phi_i is

    E_s(phi_s) = j k0 E0 cos(phi_i) / (pi sqrt(rho)) * dy
                 * sum_n exp(j (zeta_n - k0 y_n (sin phi_s - sin phi_i)))

with y_n = (n-1) dy measured from the smallest-y element.  The sum's
propagation term combines the incident-wave phase at each element with the
outgoing path difference, so a zero-phase (metal) profile beams at the
specular angle and a profile with slope k0 dy (sin phi_d - sin phi_i)
beams at phi_d.  The element factor is cos(phi_i) only, and the 1/sqrt(rho)
spreading is cylindrical (the problem is two-dimensional).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .csvio import write_csv
from .phasing import PhaseProfile
from .scene import PlaneWave, RisGeometry

ETA0_OHM = 376.730313  # free-space wave impedance

# Finite stand-in for log10(0) in exported dB columns.
DB_FLOOR_SENTINEL = -300.0


def incident_field(wave: PlaneWave, position_m, k0: float) -> complex:
    """Incident plane-wave E field (z-polarized) at a point: E0 e^{-j k_i.r}."""
    a = math.radians(wave.incidence_deg)
    ki_dot_r = k0 * (-math.cos(a) * position_m[0] - math.sin(a) * position_m[1])
    return wave.e0_v_per_m * complex(math.cos(-ki_dot_r), math.sin(-ki_dot_r))


def surface_current(wave: PlaneWave, position_m, k0: float, eta0: float = ETA0_OHM) -> complex:
    """z-directed surface current density on the reflective plane (A/m).

    With reflection coefficient -1 the tangential magnetic fields of the
    incident and reflected waves add, giving |J_z| = 2 (E0/eta0) cos(phi_i)
    at the phase of the incident wave.  The position must lie on the
    surface plane.
    """
    a = math.radians(wave.incidence_deg)
    return 2.0 * (wave.e0_v_per_m / eta0) * math.cos(a) * (
        incident_field(wave, position_m, k0) / wave.e0_v_per_m
    )


def scattered_field_grid(
    profile: PhaseProfile,
    incidence_deg,
    observe_deg,
    rho_m: float,
    geometry: RisGeometry,
    k0: float,
    e0_v_per_m: float = 1.0,
) -> np.ndarray:
    """Vectorized scattered field over broadcast incidence/observation angles.

    Summation over elements runs in fixed order n = 1..N, so results are
    deterministic and independent of how callers batch the angles.
    """
    if rho_m <= 0:
        raise ValueError(f"nonpositive reference distance: {rho_m}")
    if len(profile) != geometry.element_count:
        raise ValueError(
            f"profile has {len(profile)} elements but geometry expects {geometry.element_count}"
        )
    inc, obs = np.broadcast_arrays(
        np.asarray(incidence_deg, dtype=float), np.asarray(observe_deg, dtype=float)
    )
    delta_sin = np.sin(np.radians(obs)) - np.sin(np.radians(inc))
    zeta_rad = np.radians(np.asarray(profile.phases_deg))
    # per-element phase: zeta_n - k0 * (n-1) dy * (sin phi_s - sin phi_i)
    steps = k0 * geometry.spacing_m * np.arange(geometry.element_count)
    psi = zeta_rad - delta_sin[..., None] * steps
    element_sum = np.exp(1j * psi).sum(axis=-1)
    prefactor = (
        1j * k0 * e0_v_per_m * np.cos(np.radians(inc)) / (math.pi * math.sqrt(rho_m))
    ) * geometry.spacing_m
    return prefactor * element_sum


def scattered_field(
    profile: PhaseProfile,
    wave: PlaneWave,
    observe_deg: float,
    rho_m: float,
    geometry: RisGeometry,
    k0: float,
) -> complex:
    """Scattered E field at a single observation angle (V/m)."""
    if not abs(observe_deg) <= 90.0:
        raise ValueError(f"observation angle out of half-space: |{observe_deg}| must be <= 90 deg")
    value = scattered_field_grid(
        profile,
        wave.incidence_deg,
        np.array([float(observe_deg)]),
        rho_m,
        geometry,
        k0,
        e0_v_per_m=wave.e0_v_per_m,
    )
    return complex(value[0])


@dataclass(frozen=True)
class FarFieldPattern:
    """Complex scattered field sampled on an observation-angle grid."""

    angles_deg: np.ndarray
    field: np.ndarray  # complex V/m at reference distance rho_m
    rho_m: float
    excitation: PlaneWave
    profile_mode: str

    def __post_init__(self) -> None:
        if len(self.angles_deg) != len(self.field):
            raise ValueError("angles and field must have equal length")
        if len(self.angles_deg) == 0:
            raise ValueError("empty pattern")
        if self.rho_m <= 0:
            raise ValueError(f"nonpositive reference distance: {self.rho_m}")
        if np.any(np.diff(self.angles_deg) <= 0):
            raise ValueError("angle grid must be strictly increasing")
        if not np.all(np.isfinite(self.field)):
            raise ValueError("pattern field contains non-finite values")

    def power_db(self) -> np.ndarray:
        """Peak-normalized power in dB (20 log10 |E| / max |E|)."""
        return power_db_rel(self.field)


def power_db_rel(field_values: np.ndarray) -> np.ndarray:
    """Peak-normalized dB of complex samples; zero magnitude maps to -300."""
    mag = np.abs(np.asarray(field_values))
    peak = mag.max() if mag.size else 0.0
    if peak == 0.0:
        return np.full(mag.shape, DB_FLOOR_SENTINEL)
    out = np.full(mag.shape, DB_FLOOR_SENTINEL)
    nonzero = mag > 0
    out[nonzero] = 20.0 * np.log10(mag[nonzero] / peak)
    return out


def pattern_scan(
    profile: PhaseProfile,
    wave: PlaneWave,
    rho_m: float,
    geometry: RisGeometry,
    k0: float,
    grid_step_deg: float = 0.1,
) -> FarFieldPattern:
    """Scattered-field scan over observation angles -90..+90 deg inclusive.

    The requested step is snapped to the nearest value that divides the
    180-degree span evenly; the default 0.1 deg resolves the main lobe of
    the 16-element aperture roughly a hundred times over.
    """
    if not 0.0 < grid_step_deg <= 1.0:
        raise ValueError(f"grid_step_deg must be in (0, 1] (got {grid_step_deg})")
    count = int(round(180.0 / grid_step_deg)) + 1
    angles = np.linspace(-90.0, 90.0, count)
    field = scattered_field_grid(
        profile, wave.incidence_deg, angles, rho_m, geometry, k0, e0_v_per_m=wave.e0_v_per_m
    )
    return FarFieldPattern(
        angles_deg=angles, field=field, rho_m=rho_m, excitation=wave, profile_mode=profile.mode
    )


def write_pattern_csv(pattern: FarFieldPattern, path) -> None:
    """Export a pattern as phi_s_deg, re/im field, peak-normalized power_db."""
    db = pattern.power_db()
    rows = [
        (float(a), float(v.real), float(v.imag), float(p))
        for a, v, p in zip(pattern.angles_deg, pattern.field, db)
    ]
    write_csv(path, ("phi_s_deg", "re_v_per_m", "im_v_per_m", "power_db"), rows)
