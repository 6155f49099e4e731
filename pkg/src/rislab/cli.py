"""Batch command-line front-end.

Subcommands map to the four shipped experiments: single pattern scans,
steering sweeps, the forward/reverse cross-section table, micro-Doppler
spectrograms, and beam-squint reports.  Outputs are deterministic CSVs
plus a manifest with content digests; re-running with identical inputs
reproduces every byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, dynamics, emfield, phasing, specgram
from .csvio import atomic_write_text, sha256_file, write_csv
from .phasing import DUAL_BEAM_ONE_BIT, METAL, ONE_BEAM, SteeringCommand
from .scene import ConfigError, PlaneWave, ScenarioConfig, default_scenario, load_scenario, serialize_scenario

EXIT_OK = 0
EXIT_USAGE = 2  # argparse default for bad flags
EXIT_CONFIG = 3
EXIT_IO = 4

_MODE_FLAGS = {"metal": METAL, "one": ONE_BEAM, "dual": DUAL_BEAM_ONE_BIT}

_EPILOG = """\
exit codes:
  0  success
  1  internal error
  2  usage error (unknown flag or subcommand)
  3  invalid configuration
  4  I/O failure

The output directory defaults to ./out and can be overridden by --out or
the RIS_LAB_OUT environment variable (flag wins).
"""


@dataclass(frozen=True)
class RunManifest:
    """Record of one run: subcommand, resolved inputs, outputs with digests."""

    subcommand: str
    parameters: dict
    scenario_text: str
    outputs: list[str]


def write_manifest(manifest: RunManifest, out_dir: Path) -> Path:
    payload = {
        "subcommand": manifest.subcommand,
        "parameters": manifest.parameters,
        "scenario": manifest.scenario_text,
        "outputs": [
            {"name": name, "sha256": sha256_file(out_dir / name)}
            for name in manifest.outputs
        ],
    }
    path = out_dir / "manifest.json"
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-lab",
        description="Around-the-corner radar simulator with a steerable reflective surface.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--config", "-c", metavar="PATH", help="scenario config file (default: built-in scene)")
    parser.add_argument("--out", "-o", metavar="DIR", help="output directory (default: $RIS_LAB_OUT or ./out)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_mode(p, modes=("metal", "one", "dual")):
        p.add_argument("--mode", required=True, choices=modes, help="surface configuration")

    p_pattern = sub.add_parser("pattern", help="far-field pattern scan and lobe list")
    add_mode(p_pattern)
    p_pattern.add_argument("--phi-i", type=float, required=True, help="incidence angle, deg")
    p_pattern.add_argument("--phi-d", type=float, required=True, help="desired steering angle, deg")

    p_sweep = sub.add_parser("sweep", help="lobe positions versus commanded steering angle")
    add_mode(p_sweep)
    p_sweep.add_argument("--phi-i", type=float, required=True, help="incidence angle, deg")
    p_sweep.add_argument("--phi-d-step", type=float, default=2.0, help="command grid step, deg (default 2)")

    p_table = sub.add_parser("rcs-table", help="forward/reverse cross-section table")
    p_table.add_argument(
        "--cases",
        default="-30:30,0:30,0:45",
        help="comma-separated phi_i:phi_d pairs applied to all three modes",
    )

    p_spec = sub.add_parser("spectrogram", help="slow-time return and micro-Doppler spectrogram")
    add_mode(p_spec)
    p_spec.add_argument("--phi-i", type=float, required=True, help="incidence angle, deg")
    p_spec.add_argument("--phi-d", type=float, required=True, help="desired steering angle, deg")
    p_spec.add_argument("--image", action="store_true", help="also render spectrogram.png (needs matplotlib)")

    p_squint = sub.add_parser("squint", help="beam squint error report")
    add_mode(p_squint)
    p_squint.add_argument("--phi-i", type=float, required=True, help="incidence angle, deg")
    p_squint.add_argument("--phi-d", type=float, required=True, help="desired steering angle, deg")
    return parser


def _resolve_out_dir(args) -> Path:
    out = args.out or os.environ.get("RIS_LAB_OUT") or "out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load(args) -> ScenarioConfig:
    if args.config is None:
        return default_scenario()
    return load_scenario(args.config)


def _profile_pair(mode: str, cmd: SteeringCommand, scenario: ScenarioConfig):
    """(ideal, exported) profiles for the CSV: the 1-bit mode keeps both."""
    k0 = scenario.carrier.k0
    if mode == METAL:
        ideal = phasing.metal_profile(scenario.ris.element_count)
        return ideal, ideal
    ideal = phasing.snell_profile(cmd, k0, scenario.ris.spacing_m, scenario.ris.element_count)
    return ideal, phasing.quantize_one_bit(ideal)


def _write_lobes_csv(lobes, path) -> None:
    write_csv(path, ("rank", "angle_deg", "power_db"), [(l.rank, l.angle_deg, l.power_db) for l in lobes])


def _parse_cases(raw: str) -> list[tuple[str, float, float]]:
    pairs = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            phi_i_text, _, phi_d_text = chunk.partition(":")
            pairs.append((float(phi_i_text), float(phi_d_text)))
        except ValueError:
            raise ConfigError(f"config error: bad case {chunk!r}, expected phi_i:phi_d") from None
    if not pairs:
        raise ConfigError("config error: empty case list")
    return [(mode, pi, pd) for mode in phasing.MODES for pi, pd in pairs]


def _cmd_pattern(args, scenario: ScenarioConfig, out_dir: Path) -> RunManifest:
    mode = _MODE_FLAGS[args.mode]
    cmd = SteeringCommand(incidence_deg=args.phi_i, desired_deg=args.phi_d)
    profile = phasing.profile_for_mode(mode, cmd, scenario.carrier.k0, scenario.ris.spacing_m, scenario.ris.element_count)
    wave = PlaneWave(incidence_deg=args.phi_i)
    pattern = emfield.pattern_scan(profile, wave, 1.0, scenario.ris, scenario.carrier.k0)
    lobes = analysis.find_lobes(pattern)
    ideal, quantized = _profile_pair(mode, cmd, scenario)

    emfield.write_pattern_csv(pattern, out_dir / "pattern.csv")
    _write_lobes_csv(lobes, out_dir / "lobes.csv")
    phasing.write_profile_csv(ideal, quantized, out_dir / "profile.csv")
    for lobe in lobes:
        print(f"lobe rank={lobe.rank} angle={lobe.angle_deg:.3f} deg power={lobe.power_db:.2f} dB")
    return RunManifest(
        subcommand="pattern",
        parameters={"mode": mode, "phi_i_deg": args.phi_i, "phi_d_deg": args.phi_d},
        scenario_text=serialize_scenario(scenario),
        outputs=["pattern.csv", "lobes.csv", "profile.csv"],
    )


def _cmd_sweep(args, scenario: ScenarioConfig, out_dir: Path) -> RunManifest:
    mode = _MODE_FLAGS[args.mode]
    step = args.phi_d_step
    if not 0 < step <= 90:
        raise ConfigError(f"config error: --phi-d-step must be in (0, 90] (got {step})")
    grid = np.arange(-90.0, 90.0 + step / 2, step)
    rows = analysis.steering_sweep(mode, args.phi_i, grid, scenario)
    analysis.write_sweep_csv(rows, out_dir / "sweep.csv")
    print(f"sweep: {len(rows)} commands, mode={mode}, phi_i={args.phi_i:g} deg")
    return RunManifest(
        subcommand="sweep",
        parameters={"mode": mode, "phi_i_deg": args.phi_i, "phi_d_step_deg": step},
        scenario_text=serialize_scenario(scenario),
        outputs=["sweep.csv"],
    )


def _cmd_rcs_table(args, scenario: ScenarioConfig, out_dir: Path) -> RunManifest:
    cases = _parse_cases(args.cases)
    entries = analysis.rcs_table(scenario, cases)
    analysis.write_rcs_csv(entries, out_dir / "rcs_table.csv")
    for e in entries:
        print(
            f"{e.mode:>14}  phi_i={e.phi_i_deg:+6.1f}  phi_d={e.phi_d_deg:+6.1f}  "
            f"sigma_f={e.sigma_f_dbsm:+8.2f} dB  sigma_r={e.sigma_r_dbsm:+8.2f} dB"
        )
    return RunManifest(
        subcommand="rcs-table",
        parameters={"cases": args.cases},
        scenario_text=serialize_scenario(scenario),
        outputs=["rcs_table.csv"],
    )


def _cmd_spectrogram(args, scenario: ScenarioConfig, out_dir: Path) -> RunManifest:
    mode = _MODE_FLAGS[args.mode]
    cmd = SteeringCommand(incidence_deg=args.phi_i, desired_deg=args.phi_d)
    signal = dynamics.synthesize_slow_time(scenario, mode, cmd)
    spec = specgram.stft(signal)
    dynamics.write_slow_time_csv(signal, out_dir / "slow_time.csv")
    specgram.spectrogram_to_csv(spec, out_dir / "spectrogram.csv")
    outputs = ["slow_time.csv", "spectrogram.csv"]
    if args.image:
        _render_spectrogram_png(spec, out_dir / "spectrogram.png")
        outputs.append("spectrogram.png")
    print(
        f"spectrogram: {len(spec.times_s)} frames x {len(spec.freqs_hz)} bins, "
        f"mode={mode}, phi_i={args.phi_i:g}, phi_d={args.phi_d:g}"
    )
    return RunManifest(
        subcommand="spectrogram",
        parameters={"mode": mode, "phi_i_deg": args.phi_i, "phi_d_deg": args.phi_d, "image": bool(args.image)},
        scenario_text=serialize_scenario(scenario),
        outputs=outputs,
    )


def _render_spectrogram_png(spec, path) -> None:
    try:
        import matplotlib
    except ImportError:
        raise RuntimeError("--image requires matplotlib (pip install rislab[viz])") from None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4.5))
    extent = (spec.times_s[0], spec.times_s[-1], spec.freqs_hz[0], spec.freqs_hz[-1])
    im = ax.imshow(
        spec.mags_db.T, aspect="auto", origin="lower", extent=extent, cmap="viridis", vmin=-80, vmax=0
    )
    ax.set_xlabel("time [s]")
    ax.set_ylabel("Doppler [Hz]")
    fig.colorbar(im, ax=ax, label="magnitude [dB]")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _cmd_squint(args, scenario: ScenarioConfig, out_dir: Path) -> RunManifest:
    mode = _MODE_FLAGS[args.mode]
    cmd = SteeringCommand(incidence_deg=args.phi_i, desired_deg=args.phi_d)
    profile = phasing.profile_for_mode(mode, cmd, scenario.carrier.k0, scenario.ris.spacing_m, scenario.ris.element_count)
    pattern = emfield.pattern_scan(profile, PlaneWave(incidence_deg=args.phi_i), 1.0, scenario.ris, scenario.carrier.k0)
    lobes = analysis.find_lobes(pattern)

    commanded = [args.phi_d]
    if mode == DUAL_BEAM_ONE_BIT and args.phi_d != -args.phi_d:
        commanded.append(-args.phi_d)  # the 1-bit profile also forms the mirror beam
    rows = []
    for phi_d in commanded:
        nearest = min(lobes, key=lambda lobe: abs(lobe.angle_deg - phi_d))
        error = analysis.squint_error(lobes, phi_d)
        rows.append((phi_d, nearest.angle_deg, error))
        print(f"squint: commanded {phi_d:+.2f} deg, lobe at {nearest.angle_deg:+.3f} deg, error {error:.3f} deg")
    write_csv(out_dir / "squint.csv", ("phi_d_cmd_deg", "lobe_angle_deg", "error_deg"), rows)
    return RunManifest(
        subcommand="squint",
        parameters={"mode": mode, "phi_i_deg": args.phi_i, "phi_d_deg": args.phi_d},
        scenario_text=serialize_scenario(scenario),
        outputs=["squint.csv"],
    )


_HANDLERS = {
    "pattern": _cmd_pattern,
    "sweep": _cmd_sweep,
    "rcs-table": _cmd_rcs_table,
    "spectrogram": _cmd_spectrogram,
    "squint": _cmd_squint,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        scenario = _load(args)
        out_dir = _resolve_out_dir(args)
        manifest = _HANDLERS[args.subcommand](args, scenario, out_dir)
        write_manifest(manifest, out_dir)
        return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
