"""Shared training utilities for the three classifier pipelines."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn


class MissingClassError(ValueError):
    """A class is entirely absent from the training split."""


def seed_everything(seed: int) -> None:
    np.random.seed(seed % 2**32)
    torch.manual_seed(seed)


def stratified_split(
    y: np.ndarray, validation_fraction: float, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-class shuffled index split; every class keeps >= 1 training sample."""
    rng = np.random.default_rng(seed)
    train_idx, val_idx = [], []
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        rng.shuffle(idx)
        n_val = int(round(len(idx) * validation_fraction))
        n_val = min(n_val, len(idx) - 1)
        val_idx.extend(idx[:n_val])
        train_idx.extend(idx[n_val:])
    return np.sort(np.array(train_idx)), np.sort(np.array(val_idx))


@dataclass
class TrainHistory:
    """Per-epoch accuracy/loss curves, serializable for external plotting."""

    train_loss: list[float] = field(default_factory=list)
    train_accuracy: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)
    val_accuracy: list[float] = field(default_factory=list)

    def to_csv(self) -> str:
        lines = ["epoch,train_loss,train_accuracy,val_loss,val_accuracy"]
        for i in range(len(self.train_loss)):
            vl = self.val_loss[i] if i < len(self.val_loss) else ""
            va = self.val_accuracy[i] if i < len(self.val_accuracy) else ""
            lines.append(f"{i + 1},{self.train_loss[i]},{self.train_accuracy[i]},{vl},{va}")
        return "\n".join(lines) + "\n"


@torch.no_grad()
def _evaluate(model: nn.Module, x: torch.Tensor, y: torch.Tensor,
              loss_fn: nn.Module) -> tuple[float, float]:
    model.eval()
    logits = model(x)
    loss = float(loss_fn(logits, y))
    acc = float((logits.argmax(dim=1) == y).float().mean())
    return loss, acc


def train_classifier(
    model: nn.Module,
    x_train: torch.Tensor,
    y_train: torch.Tensor,
    *,
    epochs: int,
    seed: int,
    n_classes: int,
    batch_size: int = 64,
    learning_rate: float = 1e-3,
    x_val: torch.Tensor | None = None,
    y_val: torch.Tensor | None = None,
    stop_at_accuracy: float | None = None,
) -> TrainHistory:
    """Adam + cross-entropy training loop, deterministic under a fixed seed."""
    present = set(int(c) for c in torch.unique(y_train))
    missing = sorted(set(range(n_classes)) - present)
    if missing:
        raise MissingClassError(f"missing class(es) in training split: {missing}")

    torch.manual_seed(seed)
    optimizer = torch.optim.Adam(model.parameters(), lr=learning_rate)
    loss_fn = nn.CrossEntropyLoss()
    history = TrainHistory()
    n = len(x_train)
    order_rng = np.random.default_rng(seed)
    for _ in range(epochs):
        model.train()
        perm = torch.from_numpy(order_rng.permutation(n))
        epoch_loss, epoch_correct = 0.0, 0
        for start in range(0, n, batch_size):
            idx = perm[start : start + batch_size]
            xb, yb = x_train[idx], y_train[idx]
            optimizer.zero_grad()
            logits = model(xb)
            loss = loss_fn(logits, yb)
            loss.backward()
            optimizer.step()
            epoch_loss += float(loss.detach()) * len(idx)
            epoch_correct += int((logits.argmax(dim=1) == yb).sum())
        history.train_loss.append(epoch_loss / n)
        history.train_accuracy.append(epoch_correct / n)
        if x_val is not None and y_val is not None:
            vl, va = _evaluate(model, x_val, y_val, loss_fn)
            history.val_loss.append(vl)
            history.val_accuracy.append(va)
        if stop_at_accuracy is not None and history.train_accuracy[-1] >= stop_at_accuracy:
            break
    return history


@torch.no_grad()
def predict_proba(model: nn.Module, x: torch.Tensor) -> np.ndarray:
    model.eval()
    return torch.softmax(model(x), dim=1).numpy()
