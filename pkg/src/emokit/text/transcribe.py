"""Speech-to-text adapter contract.

The engine is pluggable (Whisper in production). When the adapter is
unavailable the session degrades gracefully: the text modality is marked
missing and its fusion weight is redistributed.
"""
from __future__ import annotations

import hashlib
from typing import Protocol

import numpy as np

from ..speech.audio import AudioClip, CANONICAL_RATE


class TranscriberUnavailableError(RuntimeError):
    pass


class Transcriber(Protocol):
    def transcribe(self, clip: AudioClip) -> str: ...


class FixtureTranscriber:
    """Replays recorded transcripts keyed by a content hash of the clip.

    Silence (near-zero energy) transcribes to the empty string without a
    recorded fixture, matching the adapter contract for empty speech.
    """

    def __init__(self, recorded: dict[str, str] | None = None,
                 silence_rms: float = 1e-4):
        self.recorded = recorded or {}
        self.silence_rms = silence_rms

    @staticmethod
    def clip_key(clip: AudioClip) -> str:
        pcm = np.clip(np.rint(clip.samples * 32767.0), -32768, 32767).astype("<i2")
        return hashlib.sha256(pcm.tobytes()).hexdigest()[:16]

    def transcribe(self, clip: AudioClip) -> str:
        if clip.sample_rate != CANONICAL_RATE:
            raise ValueError("clip not at the canonical sample rate")
        if len(clip.samples) == 0 or float(np.sqrt(np.mean(clip.samples**2))) < self.silence_rms:
            return ""
        key = self.clip_key(clip)
        if key not in self.recorded:
            raise TranscriberUnavailableError(f"no recorded transcript for clip {key}")
        return self.recorded[key]


def transcribe(clip: AudioClip, adapter: Transcriber) -> str:
    if clip.sample_rate != CANONICAL_RATE:
        raise ValueError("clip not at the canonical sample rate")
    return adapter.transcribe(clip)
