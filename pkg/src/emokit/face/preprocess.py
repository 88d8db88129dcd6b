"""Facial dataset preprocessing: cropping, augmentation, and ingestion.

Dataset layout on disk is one directory per class label containing image
files. Ingestion cleans each dataset (detection, crop, blur filter),
harmonizes labels, and reports raw/kept statistics as a JSON-able dict.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import cv2
import numpy as np

from ..core import DROP, EmotionLabel, LabelMap, harmonize_label, identity_label_map
from .detect import FaceBox, FaceDetector, detect_faces
from .quality import RejectReason, laplacian_variance


class CropKind(Enum):
    TIGHT = "tight"
    MODERATE = "moderate"
    ORIGINAL = "original"


@dataclass(frozen=True)
class CropStrategy:
    kind: CropKind
    margin_fraction: float = 0.0

    def __post_init__(self):
        if self.margin_fraction < 0:
            raise ValueError("margin_fraction must be >= 0")

    @classmethod
    def tight(cls) -> "CropStrategy":
        return cls(CropKind.TIGHT, 0.0)

    @classmethod
    def moderate(cls, margin: float = 0.15) -> "CropStrategy":
        return cls(CropKind.MODERATE, margin)

    @classmethod
    def original(cls) -> "CropStrategy":
        return cls(CropKind.ORIGINAL)


@dataclass(frozen=True)
class ImageSample:
    pixels: np.ndarray  # HxW uint8 grayscale
    label: EmotionLabel | None = None
    source_id: str = ""

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.shape[0] == 0 or px.shape[1] == 0:
            raise ValueError("pixels must be a non-empty HxW grid")
        object.__setattr__(self, "pixels", px.astype(np.uint8))


def expand_box(box: FaceBox, margin: float, height: int, width: int) -> FaceBox:
    """Grow a box by ``margin`` of its size per side, keeping it in bounds.

    The expanded box is shifted back inside the frame when the margin runs
    off an edge, so the requested size is preserved whenever it fits.
    """
    mx, my = margin * box.w, margin * box.h
    x0, x1 = box.x - mx, box.x + box.w + mx
    y0, y1 = box.y - my, box.y + box.h + my
    # shift into bounds, then clamp if still too large
    if x0 < 0:
        x1, x0 = x1 - x0, 0
    if y0 < 0:
        y1, y0 = y1 - y0, 0
    if x1 > width:
        x0, x1 = max(0.0, x0 - (x1 - width)), width
    if y1 > height:
        y0, y1 = max(0.0, y0 - (y1 - height)), height
    return FaceBox(int(round(x0)), int(round(y0)),
                   int(round(x1 - x0)), int(round(y1 - y0)))


def crop_face(
    image: np.ndarray,
    box: FaceBox | None,
    strategy: CropStrategy,
    input_size: int = 48,
) -> ImageSample:
    """Crop per strategy and resize to the configured square input size."""
    img = np.asarray(image)
    h, w = img.shape
    if strategy.kind is CropKind.ORIGINAL:
        region = img
    else:
        if box is None:
            raise ValueError("degenerate box")
        if not box.inside(h, w):
            raise ValueError("box outside image bounds")
        if strategy.kind is CropKind.MODERATE:
            box = expand_box(box, strategy.margin_fraction, h, w)
        region = img[box.y : box.y + box.h, box.x : box.x + box.w]
    resized = cv2.resize(
        region.astype(np.uint8), (input_size, input_size), interpolation=cv2.INTER_AREA
    )
    return ImageSample(resized)


def augment_image(
    sample: ImageSample,
    brightness_delta: float = 0.0,
    rotation_degrees: float = 0.0,
    horizontal_flip: bool = False,
) -> ImageSample:
    """Deterministic brightness / rotation / flip augmentation.

    Identity parameters return the image unchanged; the flip is an exact
    involution. Output stays clamped to the 0..255 range and the label is
    preserved.
    """
    if abs(rotation_degrees) > 25:
        raise ValueError("rotation limited to +/-25 degrees")
    px = sample.pixels.astype(np.float64)
    if rotation_degrees != 0.0:
        h, w = px.shape
        m = cv2.getRotationMatrix2D((w / 2 - 0.5, h / 2 - 0.5), rotation_degrees, 1.0)
        px = cv2.warpAffine(px, m, (w, h), flags=cv2.INTER_LINEAR,
                            borderMode=cv2.BORDER_REPLICATE)
    if horizontal_flip:
        px = px[:, ::-1]
    if brightness_delta != 0.0:
        px = px + brightness_delta
    px = np.clip(np.rint(px), 0, 255).astype(np.uint8)
    return ImageSample(px, sample.label, sample.source_id)


@dataclass
class IngestionStats:
    """Raw/kept counts per dataset, with per-reason reject breakdown."""

    per_dataset: dict = field(default_factory=dict)

    def record(self, dataset: str, *, raw=0, kept=0, reason: str | None = None,
               label: str | None = None):
        d = self.per_dataset.setdefault(
            dataset, {"raw": 0, "kept": 0, "rejects": {}, "per_class": {}}
        )
        d["raw"] += raw
        d["kept"] += kept
        if reason:
            d["rejects"][reason] = d["rejects"].get(reason, 0) + 1
        if label and kept:
            d["per_class"][label] = d["per_class"].get(label, 0) + kept

    @property
    def total_raw(self) -> int:
        return sum(d["raw"] for d in self.per_dataset.values())

    @property
    def total_kept(self) -> int:
        return sum(d["kept"] for d in self.per_dataset.values())

    def to_json(self) -> str:
        return json.dumps(
            {"datasets": self.per_dataset,
             "total": {"raw": self.total_raw, "kept": self.total_kept}},
            indent=2, sort_keys=True,
        )


@dataclass(frozen=True)
class FacePreprocessConfig:
    input_size: int = 48
    blur_threshold: float = 100.0
    crop_strategy: CropStrategy = field(default_factory=CropStrategy.tight)


_IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".pgm"}


def build_face_training_set(
    raw_datasets: dict[str, Path | str],
    detector: FaceDetector,
    config: FacePreprocessConfig = FacePreprocessConfig(),
    label_maps: dict[str, LabelMap] | None = None,
) -> tuple[list[ImageSample], IngestionStats]:
    """Clean one or more class-per-directory image datasets.

    Rejections (no face, blurry, unmapped/DROP label, unreadable file) are
    counted per dataset; the build fails only if nothing survives at all.
    """
    stats = IngestionStats()
    samples: list[ImageSample] = []
    for name, root in raw_datasets.items():
        root = Path(root)
        label_map = (label_maps or {}).get(name) or identity_label_map()
        stats.record(name)  # ensure the dataset appears even if empty
        for class_dir in sorted(p for p in root.iterdir() if p.is_dir()):
            for path in sorted(class_dir.iterdir()):
                if path.suffix.lower() not in _IMAGE_SUFFIXES:
                    continue
                stats.record(name, raw=1)
                img = cv2.imread(str(path), cv2.IMREAD_GRAYSCALE)
                if img is None:
                    stats.record(name, reason="unreadable")
                    continue
                raw_label = class_dir.name
                if raw_label not in label_map:
                    stats.record(name, reason="unmapped_label")
                    continue
                target = harmonize_label(raw_label, label_map)
                if target is DROP:
                    stats.record(name, reason="dropped_label")
                    continue
                boxes = detect_faces(img, detector)
                if not boxes:
                    stats.record(name, reason=RejectReason.NO_FACE.value)
                    continue
                if laplacian_variance(img) < config.blur_threshold:
                    stats.record(name, reason=RejectReason.BLURRY.value)
                    continue
                cropped = crop_face(img, boxes[0], config.crop_strategy, config.input_size)
                samples.append(
                    ImageSample(cropped.pixels, target, f"{name}/{path.name}")
                )
                stats.record(name, kept=1, label=target.label)
    if not samples:
        raise ValueError(f"no samples survived ingestion: {stats.to_json()}")
    return samples, stats


def combine_training_sets(
    first: list[ImageSample],
    second: list[ImageSample],
    augmentation_schedule: list[dict] | None = None,
) -> list[ImageSample]:
    """Merge two cleaned datasets under one shared augmentation schedule.

    Each schedule entry is a kwargs dict for :func:`augment_image`; every
    entry is applied to every sample of both datasets, so both sources see
    identical enrichment.
    """
    merged = list(first) + list(second)
    if not augmentation_schedule:
        return merged
    out = list(merged)
    for params in augmentation_schedule:
        out.extend(augment_image(s, **params) for s in merged)
    return out
