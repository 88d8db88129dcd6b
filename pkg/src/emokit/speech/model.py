"""The 7-class speech emotion CNN over flattened feature vectors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from ..core import EmotionDistribution
from ..modeling import (
    TrainHistory,
    predict_proba,
    seed_everything,
    stratified_split,
    train_classifier,
)


@dataclass(frozen=True)
class SpeechCnnConfig:
    """Seven conv layers leading with a 512-filter, kernel-5 block."""

    input_length: int = 4048
    conv_filters: tuple = (512, 512, 256, 256, 128, 128, 64)
    kernel_size: int = 5
    pool_size: int = 4
    dropout: float = 0.2
    dense_units: int = 512
    learning_rate: float = 1e-3
    n_classes: int = 7

    def __post_init__(self):
        if self.n_classes != 7:
            raise ValueError("speech head must be 7-wide")
        if len(self.conv_filters) != 7:
            raise ValueError("architecture uses exactly 7 convolution layers")
        if self.conv_filters[0] != 512:
            raise ValueError("first block uses 512 filters")


def build_speech_cnn(config: SpeechCnnConfig = SpeechCnnConfig()) -> nn.Sequential:
    layers: list[nn.Module] = []
    in_ch = 1
    length = config.input_length
    for i, out_ch in enumerate(config.conv_filters):
        layers.append(nn.Conv1d(in_ch, out_ch, config.kernel_size,
                                padding=config.kernel_size // 2))
        layers.append(nn.ReLU())
        layers.append(nn.BatchNorm1d(out_ch))
        if length >= config.pool_size:
            layers.append(nn.MaxPool1d(config.pool_size))
            length //= config.pool_size
        if i % 2 == 1:
            layers.append(nn.Dropout(config.dropout))
        in_ch = out_ch
    layers += [
        nn.Flatten(),
        nn.Linear(in_ch * length, config.dense_units),
        nn.ReLU(),
        nn.BatchNorm1d(config.dense_units),
        nn.Dropout(config.dropout),
        nn.Linear(config.dense_units, config.n_classes),
    ]
    return nn.Sequential(*layers)


def _to_tensor(features: np.ndarray, input_length: int) -> torch.Tensor:
    x = np.asarray(features, dtype=np.float32)
    if x.ndim == 1:
        x = x[None]
    if x.shape[1] != input_length:
        raise ValueError(f"shape mismatch: expected vectors of length {input_length}")
    return torch.from_numpy(x).unsqueeze(1)


def speech_train(
    features: np.ndarray,
    labels: np.ndarray,
    config: SpeechCnnConfig = SpeechCnnConfig(),
    *,
    epochs: int = 30,
    seed: int = 0,
    batch_size: int = 64,
    validation_fraction: float = 0.2,
    stop_at_accuracy: float | None = None,
) -> tuple[nn.Sequential, TrainHistory]:
    if len(features) == 0:
        raise ValueError("empty dataset")
    seed_everything(seed)
    model = build_speech_cnn(config)
    x = _to_tensor(features, config.input_length)
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


def speech_forward(
    features: np.ndarray, model: nn.Sequential, input_length: int = 4048
) -> EmotionDistribution:
    x = _to_tensor(features, input_length)
    probs = predict_proba(model, x)[0].astype(np.float64)
    return EmotionDistribution(probs / probs.sum())
