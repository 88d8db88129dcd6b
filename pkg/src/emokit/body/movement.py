"""Per-part movement metrics and low/medium/high intensity classification.

The per-part metric is the mean per-frame Euclidean displacement divided
by the median torso length (shoulder midpoint to hip midpoint), which
makes it invariant to camera distance and framing.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

from .pose import PART_ORDER, PoseFrame, validate_track

VISIBILITY_FLOOR = 0.5

_TORSO_PARTS = ("left_shoulder", "right_shoulder", "left_hip", "right_hip")


class Intensity(Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


@dataclass(frozen=True)
class IntensityThresholds:
    """Cut points on the overall metric, torso-normalized units per frame."""

    low_max: float = 0.02
    medium_max: float = 0.08

    def __post_init__(self):
        if not 0 < self.low_max < self.medium_max:
            raise ValueError("need 0 < low_max < medium_max")


@dataclass(frozen=True)
class MovementSummary:
    per_part_metric: dict[str, float]
    most_moved: str
    intensity: Intensity
    frame_count: int

    def to_dict(self) -> dict:
        return {
            "per_part_metric": self.per_part_metric,
            "most_moved": self.most_moved,
            "intensity": self.intensity.value,
            "frame_count": self.frame_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def landmark_displacement(
    frame_a: PoseFrame, frame_b: PoseFrame, visibility_floor: float = VISIBILITY_FLOOR
) -> dict[str, float]:
    """Per-part Euclidean displacement; parts below the floor are omitted."""
    if set(frame_a.landmarks) != set(frame_b.landmarks):
        raise ValueError("landmark schema mismatch between frames")
    out = {}
    for part in PART_ORDER:
        if part not in frame_a.landmarks:
            continue
        a, b = frame_a.landmarks[part], frame_b.landmarks[part]
        if a.visibility < visibility_floor or b.visibility < visibility_floor:
            continue
        out[part] = math.hypot(b.x - a.x, b.y - a.y)
    return out


def _torso_length(frame: PoseFrame, visibility_floor: float) -> float | None:
    lms = frame.landmarks
    if any(p not in lms or lms[p].visibility < visibility_floor for p in _TORSO_PARTS):
        return None
    sx = (lms["left_shoulder"].x + lms["right_shoulder"].x) / 2
    sy = (lms["left_shoulder"].y + lms["right_shoulder"].y) / 2
    hx = (lms["left_hip"].x + lms["right_hip"].x) / 2
    hy = (lms["left_hip"].y + lms["right_hip"].y) / 2
    return math.hypot(sx - hx, sy - hy)


def _median(values: list[float]) -> float:
    values = sorted(values)
    n = len(values)
    mid = n // 2
    return values[mid] if n % 2 else (values[mid - 1] + values[mid]) / 2


def aggregate_movement(
    frames: list[PoseFrame], visibility_floor: float = VISIBILITY_FLOOR
) -> dict[str, float]:
    """Torso-normalized mean per-frame displacement for each tracked part."""
    if len(frames) < 2:
        raise ValueError("need at least 2 frames")
    validate_track(frames)
    torso_lengths = [
        t for f in frames if (t := _torso_length(f, visibility_floor)) is not None
    ]
    if not torso_lengths or _median(torso_lengths) == 0:
        raise ValueError("no scale reference: torso never visible")
    torso = _median(torso_lengths)
    totals: dict[str, float] = {}
    for a, b in zip(frames, frames[1:]):
        for part, d in landmark_displacement(a, b, visibility_floor).items():
            totals[part] = totals.get(part, 0.0) + d
    n = len(frames) - 1
    return {part: totals[part] / n / torso for part in PART_ORDER if part in totals}


def classify_intensity(
    overall_metric: float, thresholds: IntensityThresholds = IntensityThresholds()
) -> Intensity:
    """Boundary values are assigned downward (exactly low_max is still low)."""
    if overall_metric < 0:
        raise ValueError("metric must be >= 0")
    if overall_metric <= thresholds.low_max:
        return Intensity.LOW
    if overall_metric <= thresholds.medium_max:
        return Intensity.MEDIUM
    return Intensity.HIGH


def most_moved_part(per_part_metric: dict[str, float]) -> str:
    """Argmax part; ties go to the earliest part in the schema order."""
    if not per_part_metric:
        raise ValueError("empty metric set")
    best = max(per_part_metric.values())
    for part in PART_ORDER:
        if part in per_part_metric and per_part_metric[part] == best:
            return part
    raise AssertionError("unreachable: metrics contain only schema parts")


def movement_report(
    frames: list[PoseFrame],
    thresholds: IntensityThresholds = IntensityThresholds(),
    visibility_floor: float = VISIBILITY_FLOOR,
) -> MovementSummary:
    metrics = aggregate_movement(frames, visibility_floor)
    overall = sum(metrics.values()) / len(metrics)
    return MovementSummary(
        per_part_metric=metrics,
        most_moved=most_moved_part(metrics),
        intensity=classify_intensity(overall, thresholds),
        frame_count=len(frames),
    )
