"""Pattern analysis: lobe extraction, squint error, scattering cross-sections.

Cross-sections follow the two-dimensional definition
sigma = 2 pi rho |E_s|^2 / |E_i|^2, reported as 10 log10(sigma); the result
is independent of the reference distance and of the excitation amplitude.
An optional calibration offset can be added to every reported value to
align absolute levels with external references; all comparisons in this
package are differential, so the offset cancels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import emfield, phasing
from .csvio import write_csv
from .emfield import DB_FLOOR_SENTINEL, FarFieldPattern
from .phasing import SteeringCommand
from .scene import PlaneWave, ScenarioConfig


@dataclass(frozen=True)
class Lobe:
    angle_deg: float
    power_db: float  # relative to the strongest lobe, <= 0
    rank: int  # 0 = strongest


@dataclass(frozen=True)
class RcsEntry:
    mode: str
    phi_i_deg: float
    phi_d_deg: float
    sigma_f_dbsm: float  # incidence phi_i, observed at phi_d
    sigma_r_dbsm: float  # incidence phi_d, observed at phi_i, same profile


@dataclass(frozen=True)
class SweepRow:
    phi_d_cmd_deg: float
    lobes: tuple[Lobe, ...]


def _parabolic_vertex(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Vertex of the parabola through three (x, y) points (Lagrange form)."""
    x1, x2, x3 = x
    y1, y2, y3 = y
    den = 2.0 * (y1 * (x2 - x3) + y2 * (x3 - x1) + y3 * (x1 - x2))
    if den == 0.0:
        return float(x2), float(y2)
    num = y1 * (x2**2 - x3**2) + y2 * (x3**2 - x1**2) + y3 * (x1**2 - x2**2)
    xv = num / den
    # clamp to the bracketing cell; degenerate fits can shoot outside
    xv = min(max(xv, min(x1, x3)), max(x1, x3))
    # evaluate the parabola at its vertex
    l1 = (xv - x2) * (xv - x3) / ((x1 - x2) * (x1 - x3))
    l2 = (xv - x1) * (xv - x3) / ((x2 - x1) * (x2 - x3))
    l3 = (xv - x1) * (xv - x2) / ((x3 - x1) * (x3 - x2))
    return float(xv), float(y1 * l1 + y2 * l2 + y3 * l3)


def find_lobes(pattern: FarFieldPattern, floor_db: float = -10.0) -> list[Lobe]:
    """Local pattern maxima within floor_db of the peak, strongest first.

    Peaks are refined by a three-point parabolic fit in sin(phi) on the dB
    power (array factors are periodic in sin phi, so the fit is well
    conditioned there).  Grid endpoints count as lobes when the pattern
    falls away from them; plateaus collapse to their central sample.  Equal
    powers tie-break toward smaller |angle|.
    """
    if floor_db >= 0:
        raise ValueError(f"floor_db must be < 0 (got {floor_db})")
    mag = np.abs(pattern.field)
    if mag.size == 0:
        raise ValueError("empty pattern")
    db = emfield.power_db_rel(pattern.field)
    u = np.sin(np.radians(pattern.angles_deg))

    # peak indices, treating runs of equal magnitude as one candidate
    candidates: list[int] = []
    i = 0
    n = len(mag)
    while i < n:
        j = i
        while j + 1 < n and mag[j + 1] == mag[i]:
            j += 1
        left_lower = i == 0 or mag[i - 1] < mag[i]
        right_lower = j == n - 1 or mag[j + 1] < mag[j]
        interior_plateau = not (i == 0 and j == n - 1)
        if left_lower and right_lower and interior_plateau:
            candidates.append((i + j) // 2)
        i = j + 1
    if not candidates:
        raise ValueError("pattern is constant; no distinct lobes")

    refined: list[tuple[float, float]] = []
    for idx in candidates:
        if 0 < idx < n - 1 and mag[idx - 1] != mag[idx] != mag[idx + 1]:
            angle_u, peak_db = _parabolic_vertex(u[idx - 1 : idx + 2], db[idx - 1 : idx + 2])
            angle = math.degrees(math.asin(min(max(angle_u, -1.0), 1.0)))
        else:  # endpoint or plateau center: keep the grid sample
            angle, peak_db = float(pattern.angles_deg[idx]), float(db[idx])
        refined.append((angle, peak_db))

    top = max(p for _, p in refined)
    kept = [(a, p - top) for a, p in refined if p - top >= floor_db]
    kept.sort(key=lambda ap: (-ap[1], abs(ap[0]), ap[0]))
    return [Lobe(angle_deg=a, power_db=p, rank=r) for r, (a, p) in enumerate(kept)]


def squint_error(lobes: list[Lobe], phi_d_deg: float) -> float:
    """Absolute angle error of the lobe nearest the commanded direction."""
    if not lobes:
        raise ValueError("empty lobe list")
    nearest = min(lobes, key=lambda lobe: abs(lobe.angle_deg - phi_d_deg))
    return abs(nearest.angle_deg - phi_d_deg)


def rcs_linear(field_value: complex, wave: PlaneWave, rho_m: float) -> float:
    """Two-dimensional scattering cross-section, linear scale (meters)."""
    if wave.e0_v_per_m == 0:
        raise ValueError("zero excitation amplitude")
    if rho_m <= 0:
        raise ValueError(f"nonpositive reference distance: {rho_m}")
    return 2.0 * math.pi * rho_m * abs(field_value) ** 2 / wave.e0_v_per_m**2


def rcs(
    field_value: complex,
    wave: PlaneWave,
    rho_m: float,
    calibration_offset_db: float = 0.0,
) -> float:
    """Cross-section in dB (10 log10 of the linear value plus the offset)."""
    sigma = rcs_linear(field_value, wave, rho_m)
    if sigma == 0.0:
        return DB_FLOOR_SENTINEL + calibration_offset_db
    return 10.0 * math.log10(sigma) + calibration_offset_db


def reciprocity_report(
    mode: str,
    cmd: SteeringCommand,
    scenario: ScenarioConfig,
    rho_m: float = 1.0,
    calibration_offset_db: float = 0.0,
) -> RcsEntry:
    """Forward and reverse cross-sections for one steering command.

    The profile is synthesized once for (phi_i -> phi_d); the forward value
    illuminates from phi_i and observes at phi_d, the reverse swaps the two
    roles while keeping the identical element phases.
    """
    k0 = scenario.carrier.k0
    profile = phasing.profile_for_mode(
        mode, cmd, k0, scenario.ris.spacing_m, scenario.ris.element_count
    )
    wave_f = PlaneWave(incidence_deg=cmd.incidence_deg)
    wave_r = PlaneWave(incidence_deg=cmd.desired_deg)
    field_f = emfield.scattered_field(profile, wave_f, cmd.desired_deg, rho_m, scenario.ris, k0)
    field_r = emfield.scattered_field(profile, wave_r, cmd.incidence_deg, rho_m, scenario.ris, k0)
    return RcsEntry(
        mode=mode,
        phi_i_deg=cmd.incidence_deg,
        phi_d_deg=cmd.desired_deg,
        sigma_f_dbsm=rcs(field_f, wave_f, rho_m, calibration_offset_db),
        sigma_r_dbsm=rcs(field_r, wave_r, rho_m, calibration_offset_db),
    )


def steering_sweep(
    mode: str,
    phi_i_deg: float,
    phi_d_grid_deg,
    scenario: ScenarioConfig,
    floor_db: float = -10.0,
    max_lobes: int = 5,
    grid_step_deg: float = 0.1,
    rho_m: float = 1.0,
) -> list[SweepRow]:
    """Lobe positions versus commanded direction (one row per command)."""
    k0 = scenario.carrier.k0
    wave = PlaneWave(incidence_deg=phi_i_deg)
    rows = []
    for phi_d in phi_d_grid_deg:
        cmd = SteeringCommand(incidence_deg=phi_i_deg, desired_deg=float(phi_d))
        profile = phasing.profile_for_mode(
            mode, cmd, k0, scenario.ris.spacing_m, scenario.ris.element_count
        )
        pattern = emfield.pattern_scan(profile, wave, rho_m, scenario.ris, k0, grid_step_deg)
        lobes = find_lobes(pattern, floor_db)[:max_lobes]
        rows.append(SweepRow(phi_d_cmd_deg=float(phi_d), lobes=tuple(lobes)))
    return rows


# Reference angle cases mirrored by the shipped cross-section table:
# specular (-30 -> 30) plus two non-specular commands from normal incidence.
TABLE_ANGLE_CASES = ((-30.0, 30.0), (0.0, 30.0), (0.0, 45.0))


def default_rcs_cases() -> list[tuple[str, float, float]]:
    """All three modes crossed with the reference angle cases (mode-major)."""
    return [
        (mode, phi_i, phi_d)
        for mode in phasing.MODES
        for phi_i, phi_d in TABLE_ANGLE_CASES
    ]


def rcs_table(
    scenario: ScenarioConfig,
    cases,
    rho_m: float = 1.0,
    calibration_offset_db: float = 0.0,
) -> list[RcsEntry]:
    """reciprocity_report for every (mode, phi_i, phi_d) case, input order."""
    return [
        reciprocity_report(
            mode,
            SteeringCommand(incidence_deg=phi_i, desired_deg=phi_d),
            scenario,
            rho_m,
            calibration_offset_db,
        )
        for mode, phi_i, phi_d in cases
    ]


def write_sweep_csv(rows: list[SweepRow], path) -> None:
    out = [
        (row.phi_d_cmd_deg, lobe.rank, lobe.angle_deg, lobe.power_db)
        for row in rows
        for lobe in row.lobes
    ]
    write_csv(path, ("phi_d_cmd_deg", "rank", "lobe_angle_deg", "lobe_power_db"), out)


def write_rcs_csv(entries: list[RcsEntry], path) -> None:
    out = [
        (e.mode, e.phi_i_deg, e.phi_d_deg, e.sigma_f_dbsm, e.sigma_r_dbsm)
        for e in entries
    ]
    write_csv(path, ("mode", "phi_i_deg", "phi_d_deg", "sigma_f_db", "sigma_r_db"), out)
