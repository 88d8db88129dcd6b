#!/usr/bin/env python3
"""Build an augmented speech feature matrix from a clip manifest.

Each manifest row points at a WAV clip with an emotion label. Every accepted
clip is expanded into six rows (the original plus five seeded augmentations)
of flattened frame-level features (zero-crossing rate, RMS energy, and 20
MFCCs per frame). The resulting matrix and label vector are written to a
compressed cache keyed by the feature configuration.
"""

from __future__ import annotations

import argparse

from emokit.speech.dataset import (
    FeatureConfig,
    build_speech_training_set,
    read_manifest,
    save_feature_cache,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("manifest", help="CSV manifest of clips (path, label, dataset)")
    parser.add_argument("output", help="destination cache directory")
    parser.add_argument("--seed", type=int, default=0, help="augmentation seed")
    args = parser.parse_args()

    config = FeatureConfig()
    entries = read_manifest(args.manifest)
    features, labels, stats = build_speech_training_set(entries, seed=args.seed, config=config)
    cache_path = save_feature_cache(features, labels, config, args.output)
    print(f"clips read:     {stats.total_raw}")
    print(f"clips kept:     {stats.total_kept}")
    rejects: dict[str, int] = {}
    for per_dataset in stats.per_dataset.values():
        for reason, count in per_dataset["rejects"].items():
            rejects[reason] = rejects.get(reason, 0) + count
    for reason, count in sorted(rejects.items()):
        print(f"rejected ({reason}): {count}")
    print(f"feature matrix: {features.shape} -> {cache_path}")


if __name__ == "__main__":
    main()
