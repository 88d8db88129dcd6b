"""Face detection adapters.

The detector is a pluggable contract: the production system can slot in
any third-party detector (Haar cascade, dlib frontal detector, ...) while
tests stay hermetic with a recorded-fixture adapter or the built-in
brightness-blob detector operating on synthetic portraits.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np
from scipy import ndimage


class DetectorUnavailableError(RuntimeError):
    """The configured detector adapter cannot run in this environment."""


@dataclass(frozen=True)
class FaceBox:
    """Axis-aligned face bounding box in pixel coordinates."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError("degenerate box")

    def inside(self, height: int, width: int) -> bool:
        return 0 <= self.x and 0 <= self.y and self.x + self.w <= width and self.y + self.h <= height


class FaceDetector(Protocol):
    def detect(self, image: np.ndarray) -> list[FaceBox]: ...


class BlobFaceDetector:
    """Self-contained detector for bright, roughly head-shaped regions.

    Thresholds the grayscale image, labels connected components, and keeps
    components that are large enough and plausibly face-proportioned.
    Deterministic and dependency-free; intended for synthetic fixtures and
    as the default desk-scale adapter.
    """

    def __init__(self, min_area_fraction: float = 0.01, aspect_range=(0.5, 2.0)):
        self.min_area_fraction = min_area_fraction
        self.aspect_range = aspect_range

    def detect(self, image: np.ndarray) -> list[FaceBox]:
        img = np.asarray(image, dtype=np.float64)
        lo, hi = img.min(), img.max()
        if hi - lo < 16:  # near-uniform image: nothing to segment
            return []
        mask = img > (lo + hi) / 2.0
        labels, count = ndimage.label(mask)
        boxes = []
        min_area = self.min_area_fraction * img.size
        for sl in ndimage.find_objects(labels):
            if sl is None:
                continue
            h = sl[0].stop - sl[0].start
            w = sl[1].stop - sl[1].start
            if h * w < min_area:
                continue
            aspect = w / h
            if not (self.aspect_range[0] <= aspect <= self.aspect_range[1]):
                continue
            boxes.append(FaceBox(sl[1].start, sl[0].start, w, h))
        boxes.sort(key=lambda b: (b.x, b.y))
        return boxes


class HaarCascadeDetector:
    """OpenCV Haar-cascade adapter; unavailable on builds without it."""

    def __init__(self, cascade_name: str = "haarcascade_frontalface_default.xml"):
        import cv2

        if not hasattr(cv2, "CascadeClassifier"):
            raise DetectorUnavailableError(
                "detector unavailable: this OpenCV build has no CascadeClassifier"
            )
        self._cascade = cv2.CascadeClassifier(cv2.data.haarcascades + cascade_name)

    def detect(self, image: np.ndarray) -> list[FaceBox]:
        raw = self._cascade.detectMultiScale(
            np.asarray(image, dtype=np.uint8), scaleFactor=1.1, minNeighbors=5
        )
        boxes = [FaceBox(int(x), int(y), int(w), int(h)) for x, y, w, h in raw]
        boxes.sort(key=lambda b: (b.x, b.y))
        return boxes


class FixtureDetector:
    """Replays recorded detections keyed by a caller-supplied image id."""

    def __init__(self, recorded: dict[str, list[FaceBox]]):
        self.recorded = recorded
        self._current_id: str | None = None

    def for_image(self, image_id: str) -> "FixtureDetector":
        self._current_id = image_id
        return self

    def detect(self, image: np.ndarray) -> list[FaceBox]:
        if self._current_id is None or self._current_id not in self.recorded:
            raise DetectorUnavailableError("detector unavailable: no recorded fixture")
        return list(self.recorded[self._current_id])


def detect_faces(image: np.ndarray, detector: FaceDetector) -> list[FaceBox]:
    """Run the adapter and enforce that boxes lie fully inside the image."""
    if image.ndim != 2 or image.size == 0:
        raise ValueError("expected a non-empty grayscale image")
    h, w = image.shape
    boxes = detector.detect(image)
    return [b for b in boxes if b.inside(h, w)]
