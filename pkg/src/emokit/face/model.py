"""The 7-class facial expression CNN: config, training, and inference."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch
from torch import nn

from ..core import EmotionDistribution, UNIFIED_LABEL_NAMES, UNIFIED_LABELS
from ..modeling import (
    TrainHistory,
    predict_proba,
    seed_everything,
    stratified_split,
    train_classifier,
)


@dataclass(frozen=True)
class FaceCnnConfig:
    """4 conv blocks holding 5 conv layers total, 32/64 filters up front."""

    input_size: int = 48
    block_filters: tuple = ((32, 64), (128,), (128,), (256,))
    batch_norm: bool = True
    pool_size: int = 2
    block_dropout: float = 0.25
    dense_units: int = 128
    head_dropout: float = 0.5
    learning_rate: float = 1e-3
    n_classes: int = 7

    def __post_init__(self):
        if self.n_classes != 7:
            raise ValueError("face head must be 7-wide")
        flat = [f for block in self.block_filters for f in block]
        if flat != sorted(flat):
            raise ValueError("filter counts must be non-decreasing across blocks")


def build_face_cnn(config: FaceCnnConfig = FaceCnnConfig()) -> nn.Sequential:
    layers: list[nn.Module] = []
    in_ch = 1
    for block in config.block_filters:
        for out_ch in block:
            layers.append(nn.Conv2d(in_ch, out_ch, kernel_size=3, padding=1))
            layers.append(nn.ReLU())
            in_ch = out_ch
        if config.batch_norm:
            layers.append(nn.BatchNorm2d(in_ch))
        layers.append(nn.MaxPool2d(config.pool_size))
        layers.append(nn.Dropout(config.block_dropout))
    side = config.input_size // config.pool_size ** len(config.block_filters)
    layers += [
        nn.Flatten(),
        nn.Linear(in_ch * side * side, config.dense_units),
        nn.ReLU(),
        nn.Dropout(config.head_dropout),
        nn.Linear(config.dense_units, config.n_classes),
    ]
    return nn.Sequential(*layers)


def _to_tensor(images: np.ndarray, input_size: int) -> torch.Tensor:
    x = np.asarray(images, dtype=np.float32)
    if x.ndim == 2:
        x = x[None]
    if x.shape[-2:] != (input_size, input_size):
        raise ValueError(
            f"shape mismatch: expected {input_size}x{input_size} images, got {x.shape[-2:]}"
        )
    return torch.from_numpy(x / 255.0).unsqueeze(1)


def fer_train(
    images: np.ndarray,
    labels: np.ndarray,
    config: FaceCnnConfig = FaceCnnConfig(),
    *,
    epochs: int = 30,
    seed: int = 0,
    batch_size: int = 64,
    validation_fraction: float = 0.2,
    stop_at_accuracy: float | None = None,
) -> tuple[nn.Sequential, TrainHistory]:
    """Train on a stratified split; returns the model and its curves."""
    if len(images) == 0:
        raise ValueError("empty dataset")
    seed_everything(seed)
    model = build_face_cnn(config)
    x = _to_tensor(images, config.input_size)
    y = torch.from_numpy(np.asarray(labels, dtype=np.int64))
    if validation_fraction > 0:
        train_idx, val_idx = stratified_split(y.numpy(), validation_fraction, seed)
        x_val, y_val = x[val_idx], y[val_idx]
        x, y = x[train_idx], y[train_idx]
    else:
        x_val = y_val = None
    history = train_classifier(
        model, x, y,
        epochs=epochs, seed=seed, n_classes=config.n_classes,
        batch_size=batch_size, learning_rate=config.learning_rate,
        x_val=x_val, y_val=y_val, stop_at_accuracy=stop_at_accuracy,
    )
    return model, history


def fer_forward(
    image: np.ndarray, model: nn.Sequential, input_size: int = 48
) -> EmotionDistribution:
    """Forward one image through the trained CNN."""
    x = _to_tensor(image, input_size)
    probs = predict_proba(model, x)[0].astype(np.float64)
    return EmotionDistribution(probs / probs.sum())


def save_face_model(model: nn.Sequential, config: FaceCnnConfig, seed: int,
                    path: str | Path) -> None:
    """Persist weights plus a metadata file recording config, seed, label order."""
    path = Path(path)
    torch.save(model.state_dict(), path)
    meta = {
        "config": {k: getattr(config, k) for k in (
            "input_size", "block_filters", "batch_norm", "pool_size",
            "block_dropout", "dense_units", "head_dropout", "learning_rate",
            "n_classes")},
        "seed": seed,
        "label_order": list(UNIFIED_LABEL_NAMES),
    }
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta, indent=2))


def load_face_model(path: str | Path) -> tuple[nn.Sequential, dict]:
    path = Path(path)
    meta = json.loads(path.with_suffix(path.suffix + ".json").read_text())
    cfg_raw = dict(meta["config"])
    cfg_raw["block_filters"] = tuple(tuple(b) for b in cfg_raw["block_filters"])
    config = FaceCnnConfig(**cfg_raw)
    model = build_face_cnn(config)
    model.load_state_dict(torch.load(path, weights_only=True))
    return model, meta
