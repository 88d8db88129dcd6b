"""Generate the frozen MFCC golden fixture with a brute-force oracle.

The oracle deliberately avoids the package implementation: explicit
per-frame loops, a loop-built triangular mel bank, and a literal cosine
matrix for the orthonormal DCT-II. Run from the repository root:

    python3 tests/fixtures/make_mfcc_golden.py
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

FRAME = 2048
HOP = 512
N_MELS = 40
N_MFCC = 20
RATE = 16_000
FLOOR = 1e-10


def oracle_mfcc(x: np.ndarray) -> np.ndarray:
    n_frames = (len(x) - FRAME) // HOP + 1
    window = np.hanning(FRAME)

    # triangular mel filterbank, built point by point
    def to_mel(hz):
        return 2595.0 * math.log10(1.0 + hz / 700.0)

    def to_hz(mel):
        return 700.0 * (10.0 ** (mel / 2595.0) - 1.0)

    n_bins = FRAME // 2 + 1
    mel_edges = [to_mel(0.0) + i * (to_mel(RATE / 2.0) - to_mel(0.0)) / (N_MELS + 1)
                 for i in range(N_MELS + 2)]
    hz_edges = [to_hz(m) for m in mel_edges]
    bin_hz = [k * (RATE / 2.0) / (n_bins - 1) for k in range(n_bins)]
    bank = np.zeros((N_MELS, n_bins))
    for m in range(N_MELS):
        lo, mid, hi = hz_edges[m], hz_edges[m + 1], hz_edges[m + 2]
        for k, f in enumerate(bin_hz):
            if lo < f < mid:
                bank[m, k] = (f - lo) / (mid - lo)
            elif mid <= f < hi:
                bank[m, k] = (hi - f) / (hi - mid)
            elif f == mid:
                bank[m, k] = 1.0

    # orthonormal DCT-II cosine matrix
    dct_mat = np.zeros((N_MFCC, N_MELS))
    for k in range(N_MFCC):
        scale = math.sqrt(1.0 / N_MELS) if k == 0 else math.sqrt(2.0 / N_MELS)
        for n in range(N_MELS):
            dct_mat[k, n] = scale * math.cos(math.pi * k * (2 * n + 1) / (2 * N_MELS))

    out = np.zeros((n_frames, N_MFCC))
    for i in range(n_frames):
        frame = x[i * HOP : i * HOP + FRAME] * window
        spectrum = np.fft.rfft(frame)
        power = spectrum.real**2 + spectrum.imag**2
        mel_energy = np.array([float(np.dot(bank[m], power)) for m in range(N_MELS)])
        log_mel = np.log(np.maximum(mel_energy, FLOOR))
        out[i] = dct_mat @ log_mel
    return out


def make_signal() -> np.ndarray:
    t = np.arange(RATE)  # one second
    rng = np.random.default_rng(20240817)
    x = (
        0.4 * np.sin(2 * np.pi * 220.0 * t / RATE)
        + 0.2 * np.sin(2 * np.pi * 547.0 * t / RATE + 0.3)
        + 0.1 * np.sin(2 * np.pi * 1760.0 * t / RATE)
        + 0.05 * rng.standard_normal(len(t))
    )
    return np.clip(x, -1.0, 1.0)


if __name__ == "__main__":
    signal = make_signal()
    golden = oracle_mfcc(signal)
    out = Path(__file__).parent / "mfcc_golden.npz"
    np.savez_compressed(out, signal=signal, mfcc=golden)
    print(f"wrote {out}: signal {signal.shape}, mfcc {golden.shape}")
