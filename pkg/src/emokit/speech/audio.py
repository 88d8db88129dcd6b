"""Audio standardization: mono, canonical 16 kHz, peak-limited WAV clips."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.io import wavfile
from scipy.signal import resample_poly

CANONICAL_RATE = 16_000


class NoAudioStreamError(ValueError):
    pass


@dataclass(frozen=True)
class AudioClip:
    """Mono audio at the canonical rate, samples in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int = CANONICAL_RATE

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.float64).copy()
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)
        if s.ndim != 1:
            raise ValueError("clip must be mono (1-D)")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        if len(s) and np.max(np.abs(s)) > 1.0 + 1e-9:
            raise ValueError("samples exceed [-1, 1]; standardize first")

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def _to_float(samples: np.ndarray) -> np.ndarray:
    if np.issubdtype(samples.dtype, np.integer):
        info = np.iinfo(samples.dtype)
        scale = float(max(abs(info.min), info.max))
        return samples.astype(np.float64) / scale
    return samples.astype(np.float64)


def standardize_samples(
    samples: np.ndarray, sample_rate: int, target_rate: int = CANONICAL_RATE
) -> AudioClip:
    """Mix to mono (channel average), resample, and limit peaks to 1."""
    s = _to_float(np.asarray(samples))
    if s.size == 0:
        raise NoAudioStreamError("no audio samples")
    if s.ndim == 2:
        s = s.mean(axis=1)
    elif s.ndim != 1:
        raise ValueError(f"unsupported sample shape {s.shape}")
    if sample_rate != target_rate:
        ratio = Fraction(target_rate, sample_rate)
        s = resample_poly(s, ratio.numerator, ratio.denominator)
    peak = np.max(np.abs(s)) if len(s) else 0.0
    if peak > 1.0:
        s = s / peak
    return AudioClip(s, target_rate)


def standardize_audio(path: str | Path, target_rate: int = CANONICAL_RATE) -> AudioClip:
    """Load a WAV media file into a canonical clip.

    Container demuxing beyond WAV is delegated to an external decode step;
    batch ingestion treats unreadable files as per-file skips.
    """
    path = Path(path)
    try:
        rate, samples = wavfile.read(path)
    except Exception as exc:
        raise NoAudioStreamError(f"cannot read audio stream from {path}: {exc}") from exc
    return standardize_samples(samples, rate, target_rate)


def save_wav(clip: AudioClip, path: str | Path) -> Path:
    """Write 16-bit PCM little-endian mono WAV."""
    path = Path(path)
    pcm = np.clip(np.rint(clip.samples * 32767.0), -32768, 32767).astype("<i2")
    wavfile.write(path, clip.sample_rate, pcm)
    return path
