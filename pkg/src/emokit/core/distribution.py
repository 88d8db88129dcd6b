"""Probability distributions over an emotion taxonomy.

``EmotionDistribution`` is the lingua franca between the modality
pipelines and the fusion engine: every classifier head emits one, and
fusion consumes and produces them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .taxonomy import EmotionLabel, TextEmotionLabel, TEXT_LABELS, UNIFIED_LABELS

SUM_TOLERANCE = 1e-6


class DegenerateWeightsError(ValueError):
    """Raised when a weight vector cannot be normalized (all zero / negative)."""


@dataclass(frozen=True)
class EmotionDistribution:
    """A validated probability vector over one of the two label sets."""

    probs: np.ndarray
    label_set: tuple = UNIFIED_LABELS

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64).copy()
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)
        if probs.ndim != 1 or len(probs) != len(self.label_set):
            raise ValueError(
                f"expected {len(self.label_set)} probabilities, got shape {probs.shape}"
            )
        if np.any(probs < 0):
            raise ValueError("probabilities must be non-negative")
        if abs(probs.sum() - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"probabilities sum to {probs.sum():.9f}, not 1")

    def __getitem__(self, label) -> float:
        return float(self.probs[label.index])

    @property
    def is_unified(self) -> bool:
        return self.label_set == UNIFIED_LABELS

    def to_dict(self) -> dict[str, float]:
        return {l.label: float(p) for l, p in zip(self.label_set, self.probs)}

    @classmethod
    def one_hot(cls, label) -> "EmotionDistribution":
        label_set = UNIFIED_LABELS if isinstance(label, EmotionLabel) else TEXT_LABELS
        probs = np.zeros(len(label_set))
        probs[label.index] = 1.0
        return cls(probs, label_set)

    @classmethod
    def uniform(cls, label_set=UNIFIED_LABELS) -> "EmotionDistribution":
        n = len(label_set)
        return cls(np.full(n, 1.0 / n), label_set)


def normalize(weights: Sequence[float], label_set=UNIFIED_LABELS) -> EmotionDistribution:
    """Scale a non-negative weight vector into a probability distribution."""
    w = np.asarray(weights, dtype=np.float64)
    if len(w) != len(label_set):
        raise ValueError(f"expected {len(label_set)} weights, got {len(w)}")
    if np.any(w < 0):
        raise DegenerateWeightsError("degenerate weights: negative entries")
    total = w.sum()
    if total <= 0:
        raise DegenerateWeightsError("degenerate weights: all zero")
    return EmotionDistribution(w / total, label_set)


def argmax_label(dist: EmotionDistribution):
    """Most probable label; ties broken by lowest canonical index."""
    return dist.label_set[int(np.argmax(dist.probs))]


def embed_distribution(
    dist: EmotionDistribution, neutral_threshold: float = 0.5
) -> EmotionDistribution:
    """Lift a 6-label text distribution into the unified 7-label space.

    If the text model is confident (max prob >= threshold) its mass is
    placed onto the corresponding unified labels with neutral at zero;
    otherwise the result is one-hot neutral. The threshold rule is how a
    6-class text head can still report "neutral".
    """
    if dist.label_set != TEXT_LABELS:
        raise ValueError("embed_distribution expects a 6-label text distribution")
    if not 0 < neutral_threshold < 1:
        raise ValueError("neutral_threshold must be in (0, 1)")
    if float(dist.probs.max()) < neutral_threshold:
        return EmotionDistribution.one_hot(EmotionLabel.NEUTRAL)
    probs = np.zeros(len(UNIFIED_LABELS))
    for text_label in TEXT_LABELS:
        probs[text_label.unified.index] += dist[text_label]
    return EmotionDistribution(probs)
