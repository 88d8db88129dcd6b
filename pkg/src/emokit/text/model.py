"""The 6-class BiLSTM text classifier and the 7-label session summary."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from ..core import EmotionDistribution, TEXT_LABELS, embed_distribution
from ..modeling import (
    TrainHistory,
    predict_proba,
    seed_everything,
    stratified_split,
    train_classifier,
)
from .tokenizer import TokenizerState, tokenize_and_pad


@dataclass(frozen=True)
class TextModelConfig:
    vocab_size: int = 20_002  # vocabulary cap + padding + unknown
    embedding_dim: int = 128
    lstm_units: int = 256
    dropout: float = 0.3
    dense_units: int = 128
    learning_rate: float = 1e-3
    n_classes: int = 6

    def __post_init__(self):
        if self.n_classes != 6:
            raise ValueError("text head must be 6-wide")


class BiLstmClassifier(nn.Module):
    def __init__(self, config: TextModelConfig):
        super().__init__()
        self.embedding = nn.Embedding(config.vocab_size, config.embedding_dim,
                                      padding_idx=0)
        self.lstm = nn.LSTM(config.embedding_dim, config.lstm_units,
                            batch_first=True, bidirectional=True)
        self.norm = nn.BatchNorm1d(2 * config.lstm_units)
        self.dropout = nn.Dropout(config.dropout)
        self.dense = nn.Linear(2 * config.lstm_units, config.dense_units)
        self.head = nn.Linear(config.dense_units, config.n_classes)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        emb = self.embedding(x)
        out, _ = self.lstm(emb)
        pooled = out.mean(dim=1)
        hidden = torch.relu(self.dense(self.dropout(self.norm(pooled))))
        return self.head(hidden)


def text_train(
    sequences: np.ndarray,
    labels: np.ndarray,
    config: TextModelConfig = TextModelConfig(),
    *,
    epochs: int = 20,
    seed: int = 0,
    batch_size: int = 64,
    validation_fraction: float = 0.2,
    stop_at_accuracy: float | None = None,
) -> tuple[BiLstmClassifier, TrainHistory]:
    if len(sequences) == 0:
        raise ValueError("empty corpus")
    seed_everything(seed)
    model = BiLstmClassifier(config)
    x = torch.from_numpy(np.asarray(sequences, dtype=np.int64))
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


def text_forward(
    text: str, tokenizer: TokenizerState, model: BiLstmClassifier
) -> EmotionDistribution:
    """Forward a single document; returns a 6-label distribution."""
    x = torch.from_numpy(tokenize_and_pad([text], tokenizer))
    probs = predict_proba(model, x)[0].astype(np.float64)
    return EmotionDistribution(probs / probs.sum(), TEXT_LABELS)


def text_summary(
    transcript: str,
    tokenizer: TokenizerState,
    model: BiLstmClassifier,
    neutral_threshold: float = 0.5,
) -> EmotionDistribution:
    """6-class forward pass lifted into the unified 7-label space."""
    return embed_distribution(text_forward(transcript, tokenizer, model),
                              neutral_threshold)
