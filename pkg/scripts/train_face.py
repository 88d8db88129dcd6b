#!/usr/bin/env python3
"""Train the facial expression CNN on a directory tree of labelled images.

Expects one subdirectory per emotion label under each dataset root (e.g.
``root/happiness/*.png``). Images are face-detected, quality-filtered,
cropped, and resized before training. Writes a model checkpoint and a CSV
of per-epoch metrics.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from emokit.face.detect import BlobFaceDetector
from emokit.face.model import FaceCnnConfig, fer_train, save_face_model
from emokit.face.preprocess import build_face_training_set


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("datasets", nargs="+", help="dataset roots with per-label subdirectories")
    parser.add_argument("--out", default="face_model.pt", help="checkpoint destination")
    parser.add_argument("--history", default="face_history.csv", help="per-epoch metrics CSV")
    parser.add_argument("--epochs", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--batch-size", type=int, default=64)
    args = parser.parse_args()

    roots = {Path(root).name: Path(root) for root in args.datasets}
    samples, stats = build_face_training_set(roots, BlobFaceDetector())
    print(f"images read: {stats.total_raw}, kept: {stats.total_kept}")
    rejects: dict[str, int] = {}
    for per_dataset in stats.per_dataset.values():
        for reason, count in per_dataset["rejects"].items():
            rejects[reason] = rejects.get(reason, 0) + count
    for reason, count in sorted(rejects.items()):
        print(f"rejected ({reason}): {count}")
    if not samples:
        raise SystemExit("no usable training images")

    images = np.stack([sample.pixels for sample in samples]).astype(np.float32)
    labels = np.array([sample.label.index for sample in samples])

    config = FaceCnnConfig()
    model, history = fer_train(
        images,
        labels,
        config,
        epochs=args.epochs,
        seed=args.seed,
        batch_size=args.batch_size,
    )
    save_face_model(model, config, args.seed, args.out)
    Path(args.history).write_text(history.to_csv(), encoding="utf-8")
    print(f"best validation accuracy: {max(history.val_accuracy):.4f}")
    print(f"checkpoint: {args.out}")


if __name__ == "__main__":
    main()
