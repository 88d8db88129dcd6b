"""Pose landmark frames: named-part schema, validation, CSV fixtures.

The provider (a pose-estimation adapter in production, recorded CSV
fixtures in tests) emits a 33-point landmark set that we collapse into
named body parts. Coordinates are normalized to [0, 1] with a visibility
score per landmark.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

# Fixed schema order; also the tie-break order for most_moved_part.
PART_ORDER: tuple[str, ...] = (
    "head",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
    "left_hip",
    "right_hip",
    "left_knee",
    "right_knee",
    "left_ankle",
    "right_ankle",
)


@dataclass(frozen=True)
class Landmark:
    x: float
    y: float
    visibility: float = 1.0

    def __post_init__(self):
        for v, name in ((self.x, "x"), (self.y, "y"), (self.visibility, "visibility")):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")


@dataclass(frozen=True)
class PoseFrame:
    timestamp: float
    landmarks: dict[str, Landmark]

    def __post_init__(self):
        unknown = set(self.landmarks) - set(PART_ORDER)
        if unknown:
            raise ValueError(f"unknown parts: {sorted(unknown)}")


def validate_track(frames: list[PoseFrame]) -> None:
    """Timestamps must strictly increase within a track."""
    for a, b in zip(frames, frames[1:]):
        if b.timestamp <= a.timestamp:
            raise ValueError(
                f"timestamps not strictly increasing: {a.timestamp} -> {b.timestamp}"
            )


def frames_to_csv(frames: list[PoseFrame]) -> str:
    """Fixture format: one row per (timestamp, part, x, y, visibility)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["timestamp", "part", "x", "y", "visibility"])
    for frame in frames:
        for part in PART_ORDER:
            if part in frame.landmarks:
                lm = frame.landmarks[part]
                writer.writerow([frame.timestamp, part, lm.x, lm.y, lm.visibility])
    return buf.getvalue()


def frames_from_csv(text: str) -> list[PoseFrame]:
    rows = list(csv.DictReader(io.StringIO(text)))
    by_ts: dict[float, dict[str, Landmark]] = {}
    for row in rows:
        ts = float(row["timestamp"])
        by_ts.setdefault(ts, {})[row["part"]] = Landmark(
            float(row["x"]), float(row["y"]), float(row["visibility"])
        )
    frames = [PoseFrame(ts, lms) for ts, lms in sorted(by_ts.items())]
    validate_track(frames)
    return frames


def load_track(path: str | Path) -> list[PoseFrame]:
    return frames_from_csv(Path(path).read_text())
