"""Short-time Fourier transform of the slow-time return.

Frames of window-length samples are taken every hop, windowed, and
transformed with an unnormalized DFT (sum of |X_k|^2 equals window samples
times the windowed frame energy).  Bins are arranged with zero Doppler
centered, spanning [-prf/2, prf/2) at prf / window_samples resolution; no
zero padding.  Magnitudes are reported in dB relative to the global
maximum, clamped at -80 dB.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csvio import write_csv
from .dynamics import SlowTimeSignal

DB_FLOOR = -80.0

HANN = "hann"
RECT = "rect"


@dataclass(frozen=True)
class WindowSpec:
    """Analysis window: duration and hop in seconds, plus the taper shape."""

    duration_s: float = 0.1
    hop_s: float = 0.01
    shape: str = HANN

    def __post_init__(self) -> None:
        if not 0.0 < self.hop_s <= self.duration_s:
            raise ValueError(
                f"hop_s must satisfy 0 < hop <= duration (got hop {self.hop_s}, duration {self.duration_s})"
            )
        if self.shape not in (HANN, RECT):
            raise ValueError(f"unknown window shape {self.shape!r}")

    def taper(self, n_samples: int) -> np.ndarray:
        if self.shape == RECT:
            return np.ones(n_samples)
        # periodic Hann, the spectral-analysis convention
        return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n_samples) / n_samples)


@dataclass(frozen=True)
class Spectrogram:
    """Time-frequency magnitudes (dB) plus the raw complex frame transforms."""

    times_s: np.ndarray  # frame centers
    freqs_hz: np.ndarray  # zero-centered Doppler bins
    mags_db: np.ndarray  # frames x bins, 0 dB at the global peak
    frames: np.ndarray  # frames x bins, complex, same layout as mags_db

    def __post_init__(self) -> None:
        if self.mags_db.shape != (len(self.times_s), len(self.freqs_hz)):
            raise ValueError("mags_db shape must be (len(times), len(freqs))")
        if self.frames.shape != self.mags_db.shape:
            raise ValueError("frames shape must match mags_db")
        if not np.all(np.isfinite(self.mags_db)):
            raise ValueError("spectrogram magnitudes contain non-finite values")


def stft(signal: SlowTimeSignal, window: WindowSpec = WindowSpec()) -> Spectrogram:
    """Windowed short-time transform of the slow-time signal."""
    n_window = int(round(window.duration_s * signal.prf_hz))
    n_hop = int(round(window.hop_s * signal.prf_hz))
    if n_window < 1 or n_hop < 1:
        raise ValueError("window and hop must span at least one sample at this prf")
    n_samples = len(signal.samples)
    if n_samples < n_window:
        raise ValueError(f"signal too short: {n_samples} samples < window of {n_window}")

    taper = window.taper(n_window)
    n_frames = (n_samples - n_window) // n_hop + 1
    starts = np.arange(n_frames) * n_hop
    segments = np.stack([signal.samples[s : s + n_window] for s in starts])
    frames = np.fft.fftshift(np.fft.fft(segments * taper, axis=1), axes=1)

    mag = np.abs(frames)
    peak = mag.max() if mag.size else 0.0
    if peak == 0.0:
        mags_db = np.full(mag.shape, DB_FLOOR)
    else:
        with np.errstate(divide="ignore"):
            mags_db = np.maximum(20.0 * np.log10(mag / peak), DB_FLOOR)

    return Spectrogram(
        times_s=(starts + n_window / 2.0) / signal.prf_hz,
        freqs_hz=np.fft.fftshift(np.fft.fftfreq(n_window, d=1.0 / signal.prf_hz)),
        mags_db=mags_db,
        frames=frames,
    )


def spectrogram_to_csv(spec: Spectrogram, path) -> None:
    """Long-format export, time-major: one row per (frame, bin)."""
    rows = [
        (float(t), float(f), float(m))
        for t, row in zip(spec.times_s, spec.mags_db)
        for f, m in zip(spec.freqs_hz, row)
    ]
    write_csv(path, ("t_s", "f_hz", "mag_db"), rows)
