import math
import wave

import numpy as np
import pytest

from pausekit.acoustics import (
    AudioSignal,
    PauseInterval,
    VadConfig,
    detect_pause_intervals,
    frame_rms,
    intervals_to_jsonable,
    intervals_to_tag_count,
    load_wav,
    save_wav,
)
from pausekit.errors import SignalTooShortError, UnsupportedAudioError

RATE = 16000


def _noise(rng, seconds, amp=0.5):
    return rng.uniform(-amp, amp, int(seconds * RATE))


def _gap_signal(rng, before_s, gap_s, after_s):
    return AudioSignal(
        np.concatenate([_noise(rng, before_s), np.zeros(int(gap_s * RATE)), _noise(rng, after_s)]),
        RATE,
    )


def test_frame_rms_all_zero():
    _, rms = frame_rms(AudioSignal(np.zeros(RATE), RATE))
    assert np.all(rms == 0)


def test_frame_rms_constant():
    times, rms = frame_rms(AudioSignal(np.full(RATE, 0.25), RATE))
    full = times <= 1.0 - 0.025
    assert np.allclose(rms[full], 0.25)


def test_frame_rms_sine():
    t = np.arange(RATE) / RATE
    sig = AudioSignal(np.sin(2 * np.pi * 1000 * t), RATE)
    times, rms = frame_rms(sig)
    full = times <= 1.0 - 0.025
    assert np.allclose(rms[full], 1 / math.sqrt(2), atol=1e-3)


def test_frame_rms_too_short():
    with pytest.raises(SignalTooShortError):
        frame_rms(AudioSignal(np.zeros(100), RATE))


def test_detect_200ms_gap():
    rng = np.random.default_rng(7)
    intervals = detect_pause_intervals(_gap_signal(rng, 0.25, 0.2, 0.25))
    assert len(intervals) == 1
    assert abs(intervals[0].start_s - 0.25) <= 0.010
    assert abs(intervals[0].end_s - 0.45) <= 0.010


def test_detect_100ms_gap_rejected():
    rng = np.random.default_rng(7)
    assert detect_pause_intervals(_gap_signal(rng, 0.25, 0.1, 0.25)) == []


def test_detect_all_silent_full_span():
    intervals = detect_pause_intervals(AudioSignal(np.zeros(RATE), RATE))
    assert len(intervals) == 1
    assert intervals[0].start_s == 0.0
    assert intervals[0].end_s == 1.0


def test_detect_interval_invariants():
    rng = np.random.default_rng(3)
    cfg = VadConfig()
    for _ in range(10):
        pieces = []
        for k in range(4):
            pieces.append(_noise(rng, rng.uniform(0.2, 0.4)))
            pieces.append(np.zeros(int(rng.uniform(0.05, 0.4) * RATE)))
        sig = AudioSignal(np.concatenate(pieces + [_noise(rng, 0.2)]), RATE)
        intervals = detect_pause_intervals(sig, cfg)
        for iv in intervals:
            assert iv.duration_s >= cfg.min_pause_s
        for a, b in zip(intervals, intervals[1:]):
            assert a.end_s < b.start_s  # disjoint and increasing


def test_detect_scale_invariance():
    rng = np.random.default_rng(11)
    sig = _gap_signal(rng, 0.3, 0.25, 0.3)
    base = detect_pause_intervals(sig)
    for factor in (0.5, 0.25):  # powers of two keep the RMS math bit-exact
        scaled = AudioSignal(sig.samples * factor, RATE)
        assert detect_pause_intervals(scaled) == base


def test_detect_widened_silence_never_splits():
    rng = np.random.default_rng(5)
    narrow = detect_pause_intervals(_gap_signal(rng, 0.3, 0.2, 0.3))
    rng = np.random.default_rng(5)
    wide = detect_pause_intervals(_gap_signal(rng, 0.3, 0.5, 0.3))
    assert len(narrow) == len(wide) == 1
    assert wide[0].duration_s > narrow[0].duration_s


def test_pause_interval_validation():
    with pytest.raises(ValueError):
        PauseInterval(0.5, 0.5)
    with pytest.raises(ValueError):
        PauseInterval(-0.1, 0.5)
    assert PauseInterval(0.0, 0.4).duration_s == pytest.approx(0.4)


def test_vad_config_validation():
    with pytest.raises(ValueError):
        VadConfig(hop_s=0.05, frame_len_s=0.025)
    with pytest.raises(ValueError):
        VadConfig(energy_percentile=0)
    with pytest.raises(ValueError):
        VadConfig(threshold_gain=0.5)
    with pytest.raises(ValueError):
        VadConfig(min_pause_s=0)


def test_signal_validation():
    with pytest.raises(ValueError):
        AudioSignal(np.array([0.0, 2.0]), RATE)
    with pytest.raises(ValueError):
        AudioSignal(np.zeros((10, 2)), RATE)
    with pytest.raises(ValueError):
        AudioSignal(np.zeros(10), 0)


def test_interval_helpers():
    assert intervals_to_tag_count([]) == 0
    ivs = [PauseInterval(0.1, 0.3), PauseInterval(0.5, 0.9), PauseInterval(1.0, 1.2)]
    assert intervals_to_tag_count(ivs) == 3
    assert intervals_to_jsonable([PauseInterval(0.1234567, 0.7654321)]) == [
        {"start_s": 0.123, "end_s": 0.765}
    ]


def test_wav_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    sig = AudioSignal(rng.uniform(-0.9, 0.9, 4000), RATE)
    path = tmp_path / "x.wav"
    save_wav(path, sig)
    loaded = load_wav(path)
    assert loaded.sample_rate == RATE
    assert np.max(np.abs(loaded.samples - sig.samples)) <= 1.0 / 32768


def test_wav_rejects_stereo_and_8bit(tmp_path):
    stereo = tmp_path / "stereo.wav"
    with wave.open(str(stereo), "wb") as w:
        w.setnchannels(2)
        w.setsampwidth(2)
        w.setframerate(RATE)
        w.writeframes(b"\x00\x00" * 200)
    with pytest.raises(UnsupportedAudioError):
        load_wav(stereo)

    eight = tmp_path / "8bit.wav"
    with wave.open(str(eight), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(1)
        w.setframerate(RATE)
        w.writeframes(b"\x80" * 100)
    with pytest.raises(UnsupportedAudioError):
        load_wav(eight)
