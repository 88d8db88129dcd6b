"""Session audio capture behind a device adapter, with ephemeral persistence."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np

from ..ephemeral import EphemeralStore
from .audio import AudioClip, CANONICAL_RATE, save_wav, standardize_samples


class DeviceUnavailableError(RuntimeError):
    """The microphone cannot be opened; blocks the session."""


class EmptyRecordingError(ValueError):
    pass


class AudioDevice(Protocol):
    sample_rate: int

    def capture(self) -> np.ndarray:
        """Block until the stop signal and return the captured samples."""
        ...


@dataclass
class FakeAudioDevice:
    """Test/demo device that replays canned samples."""

    samples: np.ndarray
    sample_rate: int = CANONICAL_RATE
    available: bool = True

    def capture(self) -> np.ndarray:
        if not self.available:
            raise DeviceUnavailableError("microphone unavailable")
        return np.asarray(self.samples)


def record_session_audio(
    device: AudioDevice, store: EphemeralStore, name: str = "session_audio.wav"
) -> tuple[AudioClip, Path]:
    """Capture, standardize, and persist only into the ephemeral area.

    The returned path is registered with the store, so it is destroyed at
    session finalize (or by the recovery sweep after a crash).
    """
    samples = device.capture()
    if len(samples) == 0:
        raise EmptyRecordingError("empty recording: zero captured samples")
    clip = standardize_samples(samples, device.sample_rate)
    path = store.register(name)
    save_wav(clip, path)
    return clip, path
