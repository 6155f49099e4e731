"""Desk-scale simulator for around-the-corner radar sensing with a
reconfigurable reflective surface: phase-profile synthesis, far-field
scattering, cross-section analysis, and micro-Doppler spectrograms."""

from .analysis import (
    Lobe,
    RcsEntry,
    SweepRow,
    find_lobes,
    rcs,
    rcs_table,
    reciprocity_report,
    squint_error,
    steering_sweep,
)
from .dynamics import (
    SlowTimeSignal,
    received_power,
    synthesize_slow_time,
    target_angle_from_ris,
    target_position,
)
from .emfield import (
    ETA0_OHM,
    FarFieldPattern,
    incident_field,
    pattern_scan,
    scattered_field,
    surface_current,
)
from .phasing import (
    DUAL_BEAM_ONE_BIT,
    METAL,
    ONE_BEAM,
    PhaseProfile,
    SteeringCommand,
    metal_profile,
    quantization_error,
    quantize_one_bit,
    snell_profile,
)
from .scene import (
    CarrierConfig,
    ConfigError,
    PlaneWave,
    RadarNode,
    RisGeometry,
    ScenarioConfig,
    TargetTrajectory,
    default_scenario,
    element_positions,
    load_scenario,
    serialize_scenario,
    wave_vector,
)
from .specgram import Spectrogram, WindowSpec, spectrogram_to_csv, stft

__version__ = "0.1.0"

__all__ = [
    "CarrierConfig",
    "ConfigError",
    "DUAL_BEAM_ONE_BIT",
    "ETA0_OHM",
    "FarFieldPattern",
    "Lobe",
    "METAL",
    "ONE_BEAM",
    "PhaseProfile",
    "PlaneWave",
    "RadarNode",
    "RcsEntry",
    "RisGeometry",
    "ScenarioConfig",
    "SlowTimeSignal",
    "Spectrogram",
    "SteeringCommand",
    "SweepRow",
    "TargetTrajectory",
    "WindowSpec",
    "default_scenario",
    "element_positions",
    "find_lobes",
    "incident_field",
    "load_scenario",
    "metal_profile",
    "pattern_scan",
    "quantization_error",
    "quantize_one_bit",
    "rcs",
    "rcs_table",
    "received_power",
    "reciprocity_report",
    "scattered_field",
    "serialize_scenario",
    "snell_profile",
    "spectrogram_to_csv",
    "squint_error",
    "steering_sweep",
    "stft",
    "surface_current",
    "synthesize_slow_time",
    "target_angle_from_ris",
    "target_position",
    "wave_vector",
]
