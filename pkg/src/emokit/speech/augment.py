"""Audio augmentations: noise, dynamic compression, pitch shifting.

Each source clip expands into six training variants (the original plus
five augmentations). Randomness is seeded per (clip_id, kind) so dataset
builds are bit-reproducible.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.signal import get_window, resample_poly

from .audio import AudioClip


class AugmentationKind(Enum):
    ORIGINAL = "original"
    NOISE = "noise"
    COMPRESSION = "compression"
    NOISE_COMPRESSION = "noise_compression"
    PITCH = "pitch"
    NOISE_PITCH = "noise_pitch"


@dataclass(frozen=True)
class AugmentationParams:
    noise_amplitude: float = 0.035
    compression_threshold: float = 0.5
    compression_ratio: float = 4.0
    pitch_semitones_range: float = 2.0  # shift drawn from [-range, +range]


def add_noise(clip: AudioClip, amplitude: float, seed: int = 0) -> AudioClip:
    """Add seeded white noise and re-clamp to [-1, 1]."""
    if amplitude == 0:
        return clip
    rng = np.random.default_rng(seed)
    noisy = clip.samples + amplitude * rng.standard_normal(len(clip.samples))
    return AudioClip(np.clip(noisy, -1.0, 1.0), clip.sample_rate)


def dynamic_compression(clip: AudioClip, threshold: float, ratio: float) -> AudioClip:
    """Soft-knee-free compressor: magnitudes above the threshold are scaled
    down by the ratio, sign preserved, no makeup gain."""
    if not 0 < threshold < 1:
        raise ValueError("threshold must be in (0, 1)")
    if ratio < 1:
        raise ValueError("ratio must be >= 1")
    x = clip.samples
    mag = np.abs(x)
    compressed = np.where(mag > threshold, threshold + (mag - threshold) / ratio, mag)
    return AudioClip(np.sign(x) * compressed, clip.sample_rate)


def _stft(x: np.ndarray, n_fft: int, hop: int, window: np.ndarray) -> np.ndarray:
    pad = n_fft // 2
    x = np.pad(x, pad, mode="reflect") if len(x) > pad else np.pad(x, pad)
    n_frames = 1 + (len(x) - n_fft) // hop
    frames = np.lib.stride_tricks.sliding_window_view(x, n_fft)[:: hop][:n_frames]
    return np.fft.rfft(frames * window, axis=1).T  # bins x frames


def _istft(spec: np.ndarray, n_fft: int, hop: int, window: np.ndarray, length: int) -> np.ndarray:
    frames = np.fft.irfft(spec.T, n=n_fft, axis=1) * window
    out_len = n_fft + hop * (spec.shape[1] - 1)
    out = np.zeros(out_len)
    norm = np.zeros(out_len)
    wsq = window**2
    for i in range(spec.shape[1]):
        start = i * hop
        out[start : start + n_fft] += frames[i]
        norm[start : start + n_fft] += wsq
    out = out[n_fft // 2 :]
    norm = norm[n_fft // 2 :]
    out = out[:length]
    norm = norm[:length]
    safe = norm > 1e-10
    out[safe] /= norm[safe]
    return out


def _phase_vocoder(spec: np.ndarray, rate: float, hop: int, n_fft: int) -> np.ndarray:
    """Time-stretch an STFT by ``rate`` with phase propagation."""
    n_bins, n_frames = spec.shape
    time_steps = np.arange(0, n_frames, rate)
    expected_advance = 2 * np.pi * hop * np.arange(n_bins) / n_fft
    out = np.zeros((n_bins, len(time_steps)), dtype=complex)
    phase_acc = np.angle(spec[:, 0])
    padded = np.pad(spec, ((0, 0), (0, 2)))
    for t, step in enumerate(time_steps):
        i = int(step)
        frac = step - i
        a, b = padded[:, i], padded[:, i + 1]
        mag = (1 - frac) * np.abs(a) + frac * np.abs(b)
        out[:, t] = mag * np.exp(1j * phase_acc)
        dphase = np.angle(b) - np.angle(a) - expected_advance
        dphase -= 2 * np.pi * np.round(dphase / (2 * np.pi))
        phase_acc = phase_acc + expected_advance + dphase
    return out


def pitch_shift(
    clip: AudioClip, semitones: float, n_fft: int = 2048, hop: int = 512
) -> AudioClip:
    """Shift spectral content by 2^(s/12) while preserving duration.

    Phase-vocoder time stretch followed by resampling back to the original
    length; output is trimmed/padded so duration is exact.
    """
    if abs(semitones) > 4:
        raise ValueError("pitch shift limited to +/-4 semitones")
    x = clip.samples
    if len(x) < n_fft:
        raise ValueError("clip shorter than one analysis frame")
    factor = 2.0 ** (semitones / 12.0)
    window = get_window("hann", n_fft, fftbins=True)
    spec = _stft(x, n_fft, hop, window)
    # stretch time by 1/factor, then speed playback up by factor
    stretched = _phase_vocoder(spec, 1.0 / factor, hop, n_fft)
    y = _istft(stretched, n_fft, hop, window, length=int(round(len(x) * factor)))
    ratio = Fraction(1.0 / factor).limit_denominator(1000)
    y = resample_poly(y, ratio.numerator, ratio.denominator)
    if len(y) < len(x):
        y = np.pad(y, (0, len(x) - len(y)))
    else:
        y = y[: len(x)]
    return AudioClip(np.clip(y, -1.0, 1.0), clip.sample_rate)


def _variant_seed(base_seed: int, clip_id: str, kind: AugmentationKind) -> int:
    digest = hashlib.sha256(f"{base_seed}:{clip_id}:{kind.value}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def apply_augmentation(
    clip: AudioClip,
    kind: AugmentationKind,
    clip_id: str = "",
    seed: int = 0,
    params: AugmentationParams = AugmentationParams(),
) -> AudioClip:
    """Produce one named variant of a clip, reproducibly."""
    vseed = _variant_seed(seed, clip_id, kind)
    rng = np.random.default_rng(vseed)
    semitones = float(rng.uniform(-params.pitch_semitones_range, params.pitch_semitones_range))
    if kind is AugmentationKind.ORIGINAL:
        return clip
    if kind is AugmentationKind.NOISE:
        return add_noise(clip, params.noise_amplitude, vseed)
    if kind is AugmentationKind.COMPRESSION:
        return dynamic_compression(clip, params.compression_threshold, params.compression_ratio)
    if kind is AugmentationKind.NOISE_COMPRESSION:
        noisy = add_noise(clip, params.noise_amplitude, vseed)
        return dynamic_compression(noisy, params.compression_threshold, params.compression_ratio)
    if kind is AugmentationKind.PITCH:
        return pitch_shift(clip, semitones)
    if kind is AugmentationKind.NOISE_PITCH:
        noisy = add_noise(clip, params.noise_amplitude, vseed)
        return pitch_shift(noisy, semitones)
    raise ValueError(f"unknown augmentation kind: {kind}")
