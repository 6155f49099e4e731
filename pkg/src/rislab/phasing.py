"""Per-element phase profile synthesis: metal, one-beam, and 1-bit dual-beam.

Phases are kept in degrees externally; the scattering engine converts to
radians internally.  One-beam profiles are reported unwrapped; consumers
wrap modulo 360 where needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .csvio import write_csv

METAL = "metal"
ONE_BEAM = "one-beam"
DUAL_BEAM_ONE_BIT = "dual-beam-1bit"
MODES = (METAL, ONE_BEAM, DUAL_BEAM_ONE_BIT)


@dataclass(frozen=True)
class SteeringCommand:
    """Steer energy incident from incidence_deg toward desired_deg."""

    incidence_deg: float
    desired_deg: float

    def __post_init__(self) -> None:
        if not abs(self.incidence_deg) < 90.0:
            raise ValueError(f"incidence angle out of half-space: |{self.incidence_deg}| must be < 90 deg")
        if not abs(self.desired_deg) <= 90.0:
            raise ValueError(f"desired angle out of half-space: |{self.desired_deg}| must be <= 90 deg")


@dataclass(frozen=True)
class PhaseProfile:
    """Element phase shifts in degrees plus the mode that produced them."""

    mode: str
    phases_deg: tuple[float, ...]
    command: SteeringCommand | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown profile mode {self.mode!r}")
        if len(self.phases_deg) < 1:
            raise ValueError("profile must have at least one element")
        if self.mode == METAL and any(p != 0.0 for p in self.phases_deg):
            raise ValueError("metal profile phases must all be 0")
        if self.mode == DUAL_BEAM_ONE_BIT and any(p not in (0.0, 180.0) for p in self.phases_deg):
            raise ValueError("1-bit profile phases must be exactly 0 or 180 deg")

    def __len__(self) -> int:
        return len(self.phases_deg)


def metal_profile(n_elements: int) -> PhaseProfile:
    """All-zero profile: the finite-array stand-in for a plain metal sheet."""
    if n_elements < 1:
        raise ValueError(f"n_elements must be >= 1 (got {n_elements})")
    return PhaseProfile(mode=METAL, phases_deg=(0.0,) * n_elements)


def snell_profile(cmd: SteeringCommand, k0: float, spacing_m: float, n_elements: int) -> PhaseProfile:
    """Ideal one-beam profile from the generalized Snell's law.

    Element n (1-based, smallest-y end first) gets
    (n - 1) * k0 * spacing * (sin desired - sin incidence) radians, reported
    in degrees and unwrapped.  The n = 1 element is the zero-phase reference.
    """
    if n_elements < 1:
        raise ValueError(f"n_elements must be >= 1 (got {n_elements})")
    slope_rad = k0 * spacing_m * (
        math.sin(math.radians(cmd.desired_deg)) - math.sin(math.radians(cmd.incidence_deg))
    )
    phases = math.degrees(slope_rad) * np.arange(n_elements)
    return PhaseProfile(mode=ONE_BEAM, phases_deg=tuple(float(p) for p in phases), command=cmd)


def quantize_one_bit(profile: PhaseProfile) -> PhaseProfile:
    """1-bit quantization: wrap each phase to [0, 360) then snap to 0 or 180.

    Phases in [90, 270) map to 180, everything else to 0.  A metal profile
    is returned unchanged (0 is a fixed point).  Idempotent.
    """
    if profile.mode == METAL:
        return profile
    wrapped = np.mod(np.asarray(profile.phases_deg), 360.0)
    snapped = np.where((wrapped >= 90.0) & (wrapped < 270.0), 180.0, 0.0)
    return PhaseProfile(
        mode=DUAL_BEAM_ONE_BIT,
        phases_deg=tuple(float(p) for p in snapped),
        command=profile.command,
    )


def circular_distance_deg(a_deg: float, b_deg: float) -> float:
    """Shortest angular distance between two phases, in [0, 180] degrees."""
    return abs((a_deg - b_deg + 180.0) % 360.0 - 180.0)


def quantization_error(ideal: PhaseProfile, quantized: PhaseProfile) -> float:
    """Sum of squared circular phase distances, in squared degrees."""
    if len(ideal) != len(quantized):
        raise ValueError(f"profile length mismatch: {len(ideal)} vs {len(quantized)}")
    return float(
        sum(circular_distance_deg(a, b) ** 2 for a, b in zip(ideal.phases_deg, quantized.phases_deg))
    )


def profile_for_mode(mode: str, cmd: SteeringCommand, k0: float, spacing_m: float, n_elements: int) -> PhaseProfile:
    """Profile for a named mode; the metal profile ignores the command."""
    if mode == METAL:
        return metal_profile(n_elements)
    if mode == ONE_BEAM:
        return snell_profile(cmd, k0, spacing_m, n_elements)
    if mode == DUAL_BEAM_ONE_BIT:
        return quantize_one_bit(snell_profile(cmd, k0, spacing_m, n_elements))
    raise ValueError(f"unknown profile mode {mode!r}")


def write_profile_csv(ideal: PhaseProfile, quantized: PhaseProfile, path) -> None:
    """Export per-element ideal and quantized phases (1-based element index)."""
    if len(ideal) != len(quantized):
        raise ValueError(f"profile length mismatch: {len(ideal)} vs {len(quantized)}")
    rows = [
        (n, zi, zq)
        for n, (zi, zq) in enumerate(zip(ideal.phases_deg, quantized.phases_deg), start=1)
    ]
    write_csv(path, ("n", "zeta_ideal_deg", "zeta_quantized_deg"), rows)
