"""Frame-level audio features: ZCR, RMS, MFCC, and the fixed-length vector.

The feature vector for one clip variant concatenates, in time order, the
per-frame block [zcr, rms, mfcc_1..mfcc_n] and is zero-padded or
truncated to a fixed length so every clip maps to the same input width.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .audio import AudioClip, CANONICAL_RATE

LOG_FLOOR = 1e-10


@dataclass(frozen=True)
class FeatureConfig:
    frame_length: int = 2048
    hop_length: int = 512
    n_mfcc: int = 20
    n_mels: int = 40
    sample_rate: int = CANONICAL_RATE
    max_seconds: float = 6.0

    @property
    def block_size(self) -> int:
        return 2 + self.n_mfcc  # zcr + rms + mfcc coefficients

    def n_frames(self, n_samples: int) -> int:
        if n_samples < self.frame_length:
            raise ValueError("clip shorter than one frame")
        return (n_samples - self.frame_length) // self.hop_length + 1

    @property
    def max_frames(self) -> int:
        return self.n_frames(int(self.max_seconds * self.sample_rate))

    @property
    def vector_length(self) -> int:
        return self.max_frames * self.block_size

    def hash(self) -> str:
        payload = json.dumps(
            {k: getattr(self, k) for k in (
                "frame_length", "hop_length", "n_mfcc", "n_mels",
                "sample_rate", "max_seconds")},
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def frame_signal(samples: np.ndarray, frame_length: int, hop_length: int) -> np.ndarray:
    """Slice a signal into overlapping frames (frames x frame_length)."""
    n_frames = (len(samples) - frame_length) // hop_length + 1
    if n_frames < 1:
        raise ValueError("clip shorter than one frame")
    return np.lib.stride_tricks.sliding_window_view(samples, frame_length)[::hop_length][
        :n_frames
    ]


def zcr(frame: np.ndarray) -> float:
    """Fraction of consecutive sample pairs with differing sign.

    Zero counts as non-negative, so a constant-zero frame has ZCR 0.
    """
    frame = np.asarray(frame, dtype=np.float64)
    if len(frame) < 2:
        raise ValueError("frame too short for zero-crossing rate")
    signs = np.where(frame >= 0, 1, -1)
    return float(np.count_nonzero(signs[1:] != signs[:-1]) / (len(frame) - 1))


def rms(frame: np.ndarray) -> float:
    frame = np.asarray(frame, dtype=np.float64)
    if len(frame) == 0:
        raise ValueError("empty frame")
    return float(np.sqrt(np.mean(frame**2)))


def hz_to_mel(hz):
    return 2595.0 * np.log10(1.0 + np.asarray(hz) / 700.0)


def mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel) / 2595.0) - 1.0)


def mel_filterbank(n_mels: int, n_fft: int, sample_rate: int) -> np.ndarray:
    """Triangular mel filters over the rFFT bins (n_mels x n_bins)."""
    n_bins = n_fft // 2 + 1
    mel_points = np.linspace(hz_to_mel(0.0), hz_to_mel(sample_rate / 2.0), n_mels + 2)
    hz_points = mel_to_hz(mel_points)
    bin_freqs = np.linspace(0.0, sample_rate / 2.0, n_bins)
    bank = np.zeros((n_mels, n_bins))
    for m in range(n_mels):
        lo, center, hi = hz_points[m : m + 3]
        up = (bin_freqs - lo) / (center - lo)
        down = (hi - bin_freqs) / (hi - center)
        bank[m] = np.maximum(0.0, np.minimum(up, down))
    return bank


def mfcc(clip: AudioClip, config: FeatureConfig = FeatureConfig()) -> np.ndarray:
    """Mel-frequency cepstra: power spectrum -> mel bank -> log -> DCT-II.

    Returns (frames x n_mfcc). The log uses a fixed floor so silence maps
    to a constant 0th coefficient with the rest at zero.
    """
    frames = frame_signal(clip.samples, config.frame_length, config.hop_length)
    window = np.hanning(config.frame_length)
    spectrum = np.fft.rfft(frames * window, axis=1)
    power = np.abs(spectrum) ** 2
    bank = mel_filterbank(config.n_mels, config.frame_length, config.sample_rate)
    mel_energy = power @ bank.T
    log_mel = np.log(np.maximum(mel_energy, LOG_FLOOR))
    cepstra = dct(log_mel, type=2, norm="ortho", axis=1)
    return cepstra[:, : config.n_mfcc]


def extract_features(clip: AudioClip, config: FeatureConfig = FeatureConfig()) -> np.ndarray:
    """Fixed-length [zcr, rms, mfcc...] per-frame concatenation."""
    if clip.sample_rate != config.sample_rate:
        raise ValueError("clip not at the configured sample rate")
    frames = frame_signal(clip.samples, config.frame_length, config.hop_length)
    coeffs = mfcc(clip, config)
    blocks = np.column_stack(
        [
            np.array([zcr(f) for f in frames]),
            np.array([rms(f) for f in frames]),
            coeffs,
        ]
    )
    flat = blocks.reshape(-1)
    out = np.zeros(config.vector_length)
    n = min(len(flat), len(out))
    out[:n] = flat[:n]
    return out
