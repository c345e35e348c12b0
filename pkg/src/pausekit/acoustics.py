"""Energy-based pause detection in mono PCM audio.

Frames the signal, thresholds frame RMS adaptively (a gain over a low
percentile of the frame energies), and keeps silent runs that last at
least the minimum pause duration, 150 ms by default. The threshold is
percentile-relative, so rescaling the waveform by a positive constant
does not change the detected intervals.
"""

from __future__ import annotations

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SignalTooShortError, UnsupportedAudioError

_PCM16_SCALE = 32768.0


@dataclass(frozen=True, slots=True)
class AudioSignal:
    """Mono waveform with amplitudes in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not (isinstance(self.sample_rate, (int, np.integer)) and self.sample_rate > 0):
            raise ValueError("sample_rate must be a positive integer")
        if samples.size and (not np.all(np.isfinite(samples)) or np.max(np.abs(samples)) > 1.0):
            raise ValueError("amplitudes must be finite and within [-1, 1]")

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


@dataclass(frozen=True, slots=True)
class PauseInterval:
    """A detected silent span, in seconds from the start of the signal."""

    start_s: float
    end_s: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.start_s < self.end_s):
            raise ValueError("need 0 <= start_s < end_s")

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s


@dataclass(frozen=True, slots=True)
class VadConfig:
    """Framing and thresholding parameters for pause detection.

    The silence threshold is ``threshold_gain`` times the
    ``energy_percentile``-th percentile of all frame RMS values; runs of
    frames at or below it that span at least ``min_pause_s`` become pause
    intervals.
    """

    frame_len_s: float = 0.025
    hop_s: float = 0.010
    energy_percentile: float = 10.0
    threshold_gain: float = 2.0
    min_pause_s: float = 0.150

    def __post_init__(self) -> None:
        if not 0 < self.hop_s <= self.frame_len_s:
            raise ValueError("need 0 < hop_s <= frame_len_s")
        if not 0 < self.energy_percentile < 100:
            raise ValueError("energy_percentile must be in (0, 100)")
        if self.threshold_gain < 1:
            raise ValueError("threshold_gain must be >= 1")
        if self.min_pause_s <= 0:
            raise ValueError("min_pause_s must be positive")


def _frame_geometry(signal: AudioSignal, cfg: VadConfig) -> tuple[int, int]:
    frame_len = round(cfg.frame_len_s * signal.sample_rate)
    hop = round(cfg.hop_s * signal.sample_rate)
    if frame_len < 1 or hop < 1:
        raise ValueError("frame and hop must cover at least one sample")
    return frame_len, hop


def frame_rms(signal: AudioSignal, cfg: VadConfig = VadConfig()) -> tuple[np.ndarray, np.ndarray]:
    """Per-frame RMS energy.

    One frame per hop, starting at t=0; the final partial frames are
    zero-padded to full length.

    Returns:
        ``(times, rms)`` arrays; ``times[i]`` is the start of frame ``i``
        in seconds.

    Raises:
        SignalTooShortError: fewer samples than one frame.
    """
    frame_len, hop = _frame_geometry(signal, cfg)
    n = signal.samples.size
    if n < frame_len:
        raise SignalTooShortError(
            f"signal has {n} samples but one frame needs {frame_len}"
        )
    n_frames = -(-n // hop)  # every hop whose start lies inside the signal
    padded = np.zeros((n_frames - 1) * hop + frame_len, dtype=np.float64)
    padded[:n] = signal.samples
    frames = np.lib.stride_tricks.sliding_window_view(padded, frame_len)[::hop]
    rms = np.sqrt(np.mean(np.square(frames), axis=1))
    times = np.arange(n_frames) * hop / signal.sample_rate
    return times, rms


def detect_pause_intervals(
    signal: AudioSignal, cfg: VadConfig = VadConfig()
) -> list[PauseInterval]:
    """Detect silent intervals of at least ``cfg.min_pause_s`` seconds.

    A frame counts as silent when its RMS is at or below the adaptive
    threshold. Maximal silent runs become intervals spanning from the
    first frame's start to the last frame's end (clipped to the signal),
    and only runs meeting the minimum duration are kept. A fully silent
    recording therefore yields one interval covering the whole signal.

    Raises:
        SignalTooShortError: fewer samples than one frame.
    """
    frame_len, hop = _frame_geometry(signal, cfg)
    times, rms = frame_rms(signal, cfg)
    threshold = cfg.threshold_gain * np.percentile(rms, cfg.energy_percentile)
    # "<=" rather than "<": digitally silent frames make the low percentile
    # exactly zero, and no RMS is ever below zero.
    silent = rms <= threshold

    duration = signal.duration_s
    frame_span = frame_len / signal.sample_rate
    spans: list[list[float]] = []
    edges = np.flatnonzero(np.diff(np.concatenate(([False], silent, [False]))))
    for run_start, run_end in edges.reshape(-1, 2):
        start_s = float(times[run_start])
        end_s = min(float(times[run_end - 1]) + frame_span, duration)
        # Overlapping frames can make a run's tail reach past the next
        # run's head; merge so intervals stay disjoint.
        if spans and start_s <= spans[-1][1]:
            spans[-1][1] = max(spans[-1][1], end_s)
        else:
            spans.append([start_s, end_s])
    return [
        PauseInterval(s, e) for s, e in spans if e - s >= cfg.min_pause_s
    ]


def intervals_to_tag_count(intervals: list[PauseInterval]) -> int:
    """Number of pause tags a text-level labeling of these intervals needs."""
    return len(intervals)


def intervals_to_jsonable(intervals: list[PauseInterval]) -> list[dict]:
    """Intervals as JSON-ready dicts with seconds rounded to 3 decimals."""
    return [
        {"start_s": round(iv.start_s, 3), "end_s": round(iv.end_s, 3)}
        for iv in intervals
    ]


def load_wav(path: str | Path) -> AudioSignal:
    """Read a RIFF/WAVE file holding mono 16-bit PCM.

    Multi-channel or non-16-bit input is rejected rather than downmixed,
    to avoid masking corpus errors. The sample rate is taken as-is.

    Raises:
        UnsupportedAudioError: not mono 16-bit PCM.
    """
    with wave.open(str(path), "rb") as w:
        if w.getnchannels() != 1:
            raise UnsupportedAudioError(
                f"{path}: expected mono audio, got {w.getnchannels()} channels"
            )
        if w.getsampwidth() != 2:
            raise UnsupportedAudioError(
                f"{path}: expected 16-bit PCM, got {8 * w.getsampwidth()}-bit"
            )
        raw = w.readframes(w.getnframes())
        rate = w.getframerate()
    samples = np.frombuffer(raw, dtype="<i2").astype(np.float64) / _PCM16_SCALE
    return AudioSignal(samples, rate)


def save_wav(path: str | Path, signal: AudioSignal) -> None:
    """Write a mono 16-bit PCM WAV file (quantizes the float samples)."""
    pcm = np.clip(np.round(signal.samples * _PCM16_SCALE), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(signal.sample_rate)
        w.writeframes(pcm.tobytes())
