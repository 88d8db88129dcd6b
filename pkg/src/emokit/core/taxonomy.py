"""Canonical emotion taxonomies shared by every modality.

The unified 7-label set is ordered alphabetically; that order is fixed
everywhere (serialization, matrix axes, model output heads). The text
modality uses its own 6-label set where ``joy`` stands in for
``happiness`` and there is no ``neutral``.
"""
from __future__ import annotations

from enum import Enum


class EmotionLabel(Enum):
    """Unified 7-class emotion taxonomy, canonical (alphabetical) order."""

    ANGER = 0
    DISGUST = 1
    FEAR = 2
    HAPPINESS = 3
    NEUTRAL = 4
    SADNESS = 5
    SURPRISE = 6

    @property
    def index(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_name(cls, name: str) -> "EmotionLabel":
        return cls[name.strip().upper()]


class TextEmotionLabel(Enum):
    """6-class taxonomy of the spoken-language model; no neutral class."""

    ANGER = 0
    DISGUST = 1
    JOY = 2
    SADNESS = 3
    SURPRISE = 4
    FEAR = 5

    @property
    def index(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_name(cls, name: str) -> "TextEmotionLabel":
        return cls[name.strip().upper()]

    @property
    def unified(self) -> EmotionLabel:
        """Map into the 7-label taxonomy (joy -> happiness)."""
        if self is TextEmotionLabel.JOY:
            return EmotionLabel.HAPPINESS
        return EmotionLabel[self.name]


UNIFIED_LABELS: tuple[EmotionLabel, ...] = tuple(EmotionLabel)
TEXT_LABELS: tuple[TextEmotionLabel, ...] = tuple(TextEmotionLabel)

UNIFIED_LABEL_NAMES: tuple[str, ...] = tuple(l.label for l in UNIFIED_LABELS)
TEXT_LABEL_NAMES: tuple[str, ...] = tuple(l.label for l in TEXT_LABELS)
