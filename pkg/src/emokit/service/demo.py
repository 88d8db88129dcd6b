"""Synthetic component runners for demos and end-to-end exercising.

These stand in for the real capture devices and trained models: streams
are generated deterministically from a seed, so a scripted session flow
is fully reproducible without hardware.
"""
from __future__ import annotations

import numpy as np

from ..body.pose import Landmark, PART_ORDER, PoseFrame
from ..core import EmotionLabel, normalize
from ..speech.audio import CANONICAL_RATE
from ..speech.recording import FakeAudioDevice
from .sessions import ComponentRunners


def _biased_distribution(rng: np.random.Generator, label: EmotionLabel):
    weights = rng.uniform(0.01, 0.1, 7)
    weights[label.index] += 1.0
    return normalize(weights)


def demo_runners(seed: int = 0, n_frames: int = 15) -> ComponentRunners:
    rng = np.random.default_rng(seed)

    def face_frames():
        label = EmotionLabel(int(rng.integers(0, 7)))
        return [_biased_distribution(rng, label) for _ in range(n_frames)]

    def body_frames():
        frames = []
        amplitude = float(rng.uniform(0.0, 0.05))
        for i in range(n_frames):
            wobble = amplitude * np.sin(i)
            landmarks = {
                part: Landmark(
                    min(1.0, max(0.0, 0.5 + 0.01 * j + (wobble if "wrist" in part else 0.0))),
                    min(1.0, max(0.0, 0.3 + 0.02 * j)),
                    1.0,
                )
                for j, part in enumerate(PART_ORDER)
            }
            frames.append(PoseFrame(i / 10.0, landmarks))
        return frames

    tone = 0.3 * np.sin(2 * np.pi * 220 * np.arange(CANONICAL_RATE) / CANONICAL_RATE)
    device = FakeAudioDevice(samples=tone)

    def speech_predict(clip):
        label = EmotionLabel(int(rng.integers(0, 7)))
        return _biased_distribution(rng, label)

    def transcribe(clip):
        return "i am feeling quite calm today"

    def text_predict(transcript):
        label = EmotionLabel(int(rng.integers(0, 7)))
        return _biased_distribution(rng, label)

    return ComponentRunners(
        face_frames=face_frames,
        body_frames=body_frames,
        audio_device=device,
        speech_predict=speech_predict,
        transcribe=transcribe,
        text_predict=text_predict,
    )
