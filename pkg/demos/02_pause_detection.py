"""Energy-based pause detection on a synthetic noise-silence-noise signal.

The detector frames the waveform (25 ms windows, 10 ms hop), takes frame
RMS energies, and calls a frame silent when its energy falls at or below
a threshold set relative to a low percentile of all frame energies.
Silent runs shorter than 150 ms are discarded: short gaps are ordinary
articulation, not pauses.
"""

import numpy as np

from pausekit import AudioSignal, VadConfig, detect_pause_intervals, frame_rms

rate = 16000
rng = np.random.default_rng(42)

speech = lambda seconds: rng.uniform(-0.5, 0.5, size=int(seconds * rate))
silence = lambda seconds: np.zeros(int(seconds * rate))

signal = AudioSignal(
    np.concatenate([speech(0.30), silence(0.40), speech(0.25), silence(0.09), speech(0.20)]),
    rate,
)
print(f"signal: {signal.duration_s:.2f} s, gaps placed at 0.30-0.70 s and 0.95-1.04 s")

cfg = VadConfig()
times, rms = frame_rms(signal, cfg)
print(f"frames: {rms.size}, energy range {rms.min():.4f} .. {rms.max():.4f}")

intervals = detect_pause_intervals(signal, cfg)
print(f"detected {len(intervals)} pause interval(s):")
for iv in intervals:
    print(f"  {iv.start_s:6.3f} .. {iv.end_s:6.3f}  ({iv.duration_s * 1000:.0f} ms)")
print("the 90 ms gap is under the 150 ms floor, so only the long gap survives")
print()

# thresholding is relative, so rescaling the waveform changes nothing
half = AudioSignal(signal.samples * 0.5, rate)
assert detect_pause_intervals(half, cfg) == intervals
print("halving the amplitude yields identical intervals (relative threshold)")

# a lower floor admits the short gap too
permissive = VadConfig(min_pause_s=0.05)
print(f"with min_pause_s=0.05: {len(detect_pause_intervals(signal, permissive))} intervals")
