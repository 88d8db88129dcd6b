"""Real-time prediction stabilization and per-session facial summary.

A ``FrameQueue`` smooths per-frame distributions and only emits a label
once the same argmax has persisted across most of the recent window,
suppressing single-frame flicker on a live capture stream.
"""
from __future__ import annotations

from collections import Counter, deque

import numpy as np

from ..core import EmotionDistribution, EmotionLabel, argmax_label

UNDECIDED = None


class FrameQueue:
    """Sliding window of the most recent N per-frame distributions.

    A stable label needs the same argmax in at least M of the last N
    frames. One queue belongs to exactly one capture stream.
    """

    def __init__(self, capacity: int = 15, persistence: int = 10):
        if not 1 <= persistence <= capacity:
            raise ValueError("need 1 <= persistence <= capacity")
        self.capacity = capacity
        self.persistence = persistence
        self._frames: deque[EmotionDistribution] = deque(maxlen=capacity)

    def __len__(self) -> int:
        return len(self._frames)

    def push(self, dist: EmotionDistribution) -> None:
        self._frames.append(dist)

    def smoothed(self) -> EmotionDistribution:
        if not self._frames:
            raise ValueError("no frames")
        mean = np.mean([d.probs for d in self._frames], axis=0)
        return EmotionDistribution(mean / mean.sum())

    def stable_label(self) -> EmotionLabel | None:
        counts = Counter(argmax_label(d) for d in self._frames)
        if not counts:
            return UNDECIDED
        label, count = max(counts.items(), key=lambda kv: (kv[1], -kv[0].index))
        return label if count >= self.persistence else UNDECIDED


def stabilized_prediction(
    queue: FrameQueue, frame_dist: EmotionDistribution
) -> tuple[EmotionLabel | None, EmotionDistribution]:
    """Insert a frame and return (stable label or undecided, smoothed dist)."""
    queue.push(frame_dist)
    return queue.stable_label(), queue.smoothed()


def session_face_summary(frame_dists: list[EmotionDistribution]) -> EmotionDistribution:
    """Arithmetic mean of all per-frame distributions over a session."""
    if not frame_dists:
        raise ValueError("no frames")
    mean = np.mean([d.probs for d in frame_dists], axis=0)
    return EmotionDistribution(mean / mean.sum())
