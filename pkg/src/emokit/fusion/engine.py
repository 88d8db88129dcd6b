"""Late fusion of per-modality distributions into a unified profile.

The fusion rule is a weighted arithmetic mean of the modality
distributions with equal default weights; absent modalities simply drop
out and their weight is redistributed by the final normalization.
Body movement is attached as context, never fused into probabilities.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..body.movement import MovementSummary
from ..core import (
    EmotionDistribution,
    EmotionLabel,
    UNIFIED_LABELS,
    argmax_label,
    normalize,
)


class Modality(Enum):
    FACE = "face"
    SPEECH = "speech"
    TEXT = "text"


FULL_COVERAGE = frozenset(UNIFIED_LABELS)
# The text model cannot express neutral directly; its confidence-threshold
# embedding emits either a 6-label mass or one-hot neutral, so coverage is full.
TEXT_COVERAGE = FULL_COVERAGE


@dataclass(frozen=True)
class ModalityOutput:
    modality: Modality
    dist: EmotionDistribution
    weight: float = 1.0
    coverage_mask: frozenset = FULL_COVERAGE

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be >= 0")
        if not self.dist.is_unified:
            raise ValueError("fusion consumes 7-label distributions")
        outside = [l for l in UNIFIED_LABELS
                   if l not in self.coverage_mask and self.dist[l] > 0]
        if outside:
            raise ValueError(
                f"mass outside coverage mask on: {[l.label for l in outside]}"
            )


@dataclass(frozen=True)
class FusionWeights:
    face: float = 1.0
    speech: float = 1.0
    text: float = 1.0

    def __post_init__(self):
        if min(self.face, self.speech, self.text) < 0:
            raise ValueError("weights must be >= 0")

    def of(self, modality: Modality) -> float:
        return getattr(self, modality.value)


@dataclass(frozen=True)
class UnifiedProfile:
    fused: EmotionDistribution
    per_modality: tuple[ModalityOutput, ...]
    top_label: EmotionLabel
    movement: MovementSummary | None = None
    timestamp: float = field(default_factory=time.time)

    def to_dict(self) -> dict:
        return {
            "fused": self.fused.to_dict(),
            "top_label": self.top_label.label,
            "per_modality": [
                {
                    "modality": m.modality.value,
                    "dist": m.dist.to_dict(),
                    "weight": m.weight,
                }
                for m in self.per_modality
            ],
            "movement": self.movement.to_dict() if self.movement else None,
            "timestamp": self.timestamp,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def fuse(
    outputs: list[ModalityOutput],
    weights: FusionWeights = FusionWeights(),
    movement: MovementSummary | None = None,
) -> UnifiedProfile:
    """normalize(sum of weight_m * dist_m) over the present modalities."""
    if not outputs:
        raise ValueError("at least one modality required")
    combined = np.zeros(len(UNIFIED_LABELS))
    resolved = []
    for out in outputs:
        w = out.weight * weights.of(out.modality)
        combined += w * out.dist.probs
        resolved.append(ModalityOutput(out.modality, out.dist, w, out.coverage_mask))
    fused = normalize(combined)
    return UnifiedProfile(
        fused=fused,
        per_modality=tuple(resolved),
        top_label=argmax_label(fused),
        movement=movement,
    )


def renormalize_masked(
    dist: EmotionDistribution, coverage_mask: frozenset
) -> EmotionDistribution:
    """Zero mass outside the mask and renormalize; an all-zero masked
    remainder becomes uniform over the mask."""
    if not coverage_mask:
        raise ValueError("empty coverage mask")
    keep = np.array([1.0 if l in coverage_mask else 0.0 for l in UNIFIED_LABELS])
    masked = dist.probs * keep
    total = masked.sum()
    if total == 0:
        masked = keep / keep.sum()
        return EmotionDistribution(masked)
    return EmotionDistribution(masked / total)
