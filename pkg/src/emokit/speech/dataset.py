"""Speech training-set construction across the harmonized corpora.

Input is a manifest CSV with ``path,label,dataset`` columns. Every kept
clip yields exactly six feature rows: the original plus the five
augmentation variants, all sharing the clip's harmonized label.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..core import DROP, LabelMap, UNIFIED_LABEL_NAMES, harmonize_label, identity_label_map
from ..face.preprocess import IngestionStats
from .audio import NoAudioStreamError, standardize_audio
from .augment import AugmentationKind, AugmentationParams, apply_augmentation
from .features import FeatureConfig, extract_features

VARIANTS_PER_CLIP = len(AugmentationKind)  # original + 5 augmentations


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    label: str
    dataset: str


def read_manifest(path: str | Path) -> list[ManifestEntry]:
    with open(path, newline="") as fh:
        return [
            ManifestEntry(row["path"], row["label"], row["dataset"])
            for row in csv.DictReader(fh)
        ]


def write_manifest(entries: list[ManifestEntry], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["path", "label", "dataset"])
        for e in entries:
            writer.writerow([e.path, e.label, e.dataset])


def build_speech_training_set(
    entries: list[ManifestEntry],
    label_maps: dict[str, LabelMap] | None = None,
    seed: int = 0,
    config: FeatureConfig = FeatureConfig(),
    params: AugmentationParams = AugmentationParams(),
) -> tuple[np.ndarray, np.ndarray, IngestionStats]:
    """Returns (features, labels, stats); 6 rows per kept clip, exactly."""
    stats = IngestionStats()
    rows: list[np.ndarray] = []
    labels: list[int] = []
    for entry in entries:
        stats.record(entry.dataset, raw=1)
        label_map = (label_maps or {}).get(entry.dataset) or identity_label_map()
        if entry.label not in label_map:
            stats.record(entry.dataset, reason="unmapped_label")
            continue
        target = harmonize_label(entry.label, label_map)
        if target is DROP:
            stats.record(entry.dataset, reason="dropped_label")
            continue
        try:
            clip = standardize_audio(entry.path, config.sample_rate)
        except NoAudioStreamError:
            stats.record(entry.dataset, reason="unreadable")
            continue
        if len(clip.samples) < config.frame_length:
            stats.record(entry.dataset, reason="too_short")
            continue
        for kind in AugmentationKind:
            variant = apply_augmentation(clip, kind, clip_id=entry.path, seed=seed,
                                         params=params)
            rows.append(extract_features(variant, config))
            labels.append(target.index)
        stats.record(entry.dataset, kept=1, label=target.label)
    if not rows:
        return np.zeros((0, config.vector_length)), np.zeros(0, dtype=np.int64), stats
    return np.stack(rows), np.asarray(labels, dtype=np.int64), stats


def save_feature_cache(
    features: np.ndarray, labels: np.ndarray, config: FeatureConfig, directory: str | Path
) -> Path:
    """Flat binary matrix plus a JSON header (shape, config hash, label order)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    features.astype(np.float64).tofile(directory / "features.bin")
    labels.astype(np.int64).tofile(directory / "labels.bin")
    header = {
        "shape": list(features.shape),
        "dtype": "float64",
        "config_hash": config.hash(),
        "label_order": list(UNIFIED_LABEL_NAMES),
    }
    (directory / "header.json").write_text(json.dumps(header, indent=2))
    return directory


def load_feature_cache(
    directory: str | Path, config: FeatureConfig | None = None
) -> tuple[np.ndarray, np.ndarray, dict]:
    directory = Path(directory)
    header = json.loads((directory / "header.json").read_text())
    if config is not None and header["config_hash"] != config.hash():
        raise ValueError("feature cache was built with a different config")
    shape = tuple(header["shape"])
    features = np.fromfile(directory / "features.bin", dtype=np.float64).reshape(shape)
    labels = np.fromfile(directory / "labels.bin", dtype=np.int64)
    return features, labels, header
