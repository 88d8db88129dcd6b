"""Classification metrics, confusion matrices, and per-class reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

import numpy as np
from sklearn.metrics import precision_recall_fscore_support, roc_auc_score

from ..core import UNIFIED_LABEL_NAMES


def format_percent(value: float, decimals: int = 2) -> str:
    """Percent string with half-up rounding (the tables' convention)."""
    q = Decimal(1).scaleb(-decimals) if decimals else Decimal(1)
    pct = (Decimal(repr(value)) * 100).quantize(q, rounding=ROUND_HALF_UP)
    return f"{pct}%"


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are true labels, columns predicted, canonical label order."""

    counts: np.ndarray
    labels: tuple[str, ...] = UNIFIED_LABEL_NAMES

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64).copy()
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)
        n = len(self.labels)
        if counts.shape != (n, n):
            raise ValueError(f"expected {n}x{n} counts, got {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")

    @classmethod
    def from_predictions(cls, y_true, y_pred, labels=UNIFIED_LABEL_NAMES) -> "ConfusionMatrix":
        n = len(labels)
        counts = np.zeros((n, n), dtype=np.int64)
        for t, p in zip(y_true, y_pred):
            counts[t, p] += 1
        return cls(counts, labels)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.counts) / self.total)

    def row_normalized(self) -> np.ndarray:
        counts = self.counts.astype(np.float64)
        sums = counts.sum(axis=1, keepdims=True)
        with np.errstate(invalid="ignore"):
            out = np.where(sums > 0, counts / sums, 0.0)
        return out


@dataclass(frozen=True)
class MetricReport:
    """Support-weighted summary metrics for one classifier."""

    accuracy: float
    loss: float
    precision: float
    recall: float
    f1: float
    auc: float
    excluded_classes: tuple[str, ...] = ()

    def as_row(self) -> tuple[float, ...]:
        return (self.accuracy, self.loss, self.precision, self.recall, self.f1, self.auc)


def compute_metrics(
    y_true: np.ndarray,
    y_prob: np.ndarray,
    labels: tuple[str, ...] = UNIFIED_LABEL_NAMES,
) -> tuple[MetricReport, ConfusionMatrix]:
    """Accuracy/loss plus support-weighted precision, recall, F1, AUC.

    Classes with zero support are excluded from the weighting and flagged
    on the report. Loss is mean categorical cross-entropy.
    """
    y_true = np.asarray(y_true, dtype=np.int64)
    y_prob = np.asarray(y_prob, dtype=np.float64)
    if len(y_true) != len(y_prob):
        raise ValueError("y_true and y_prob lengths differ")
    if np.any(y_prob < 0) or np.any(np.abs(y_prob.sum(axis=1) - 1) > 1e-6):
        raise ValueError("probability rows must be valid distributions")
    y_pred = y_prob.argmax(axis=1)
    cm = ConfusionMatrix.from_predictions(y_true, y_pred, labels)
    accuracy = float((y_pred == y_true).mean())
    loss = float(-np.mean(np.log(np.clip(y_prob[np.arange(len(y_true)), y_true],
                                         1e-12, None))))
    present = np.unique(y_true)
    precision, recall, f1, _ = precision_recall_fscore_support(
        y_true, y_pred, labels=present, average="weighted", zero_division=0
    )
    # support-weighted one-vs-rest AUC over classes that have both outcomes
    aucs, supports = [], []
    for cls in present:
        positives = y_true == cls
        if positives.all():
            continue
        aucs.append(roc_auc_score(positives, y_prob[:, cls]))
        supports.append(positives.sum())
    auc = float(np.average(aucs, weights=supports)) if aucs else float("nan")
    excluded = tuple(labels[i] for i in range(len(labels)) if i not in present)
    report = MetricReport(
        accuracy=accuracy, loss=loss, precision=float(precision),
        recall=float(recall), f1=float(f1), auc=auc, excluded_classes=excluded,
    )
    return report, cm


@dataclass(frozen=True)
class PerClassReport:
    """Per-class precision/recall/F1 with unweighted-macro overall row."""

    rows: dict[str, dict[str, float | None]]
    overall: dict[str, float | None]

    def to_text(self) -> str:
        def fmt(v, decimals):
            return "—" if v is None else format_percent(v, decimals)

        width = max(len(name) for name in list(self.rows) + ["Overall"])
        lines = [f"{'Class':<{width}}  {'Precision':>9}  {'Recall':>9}  {'F1':>9}"]
        for name, row in self.rows.items():
            lines.append(
                f"{name:<{width}}  {fmt(row['precision'], 0):>9}  "
                f"{fmt(row['recall'], 0):>9}  {fmt(row['f1'], 0):>9}"
            )
        lines.append(
            f"{'Overall':<{width}}  {fmt(self.overall['precision'], 2):>9}  "
            f"{fmt(self.overall['recall'], 2):>9}  {fmt(self.overall['f1'], 2):>9}"
        )
        return "\n".join(lines)


def per_class_report(cm: ConfusionMatrix) -> PerClassReport:
    counts = cm.counts
    rows: dict[str, dict[str, float | None]] = {}
    for i, name in enumerate(cm.labels):
        tp = counts[i, i]
        support = counts[i].sum()
        predicted = counts[:, i].sum()
        precision = float(tp / predicted) if predicted else None
        recall = float(tp / support) if support else None
        if precision and recall:
            f1 = 2 * precision * recall / (precision + recall)
        elif precision is not None and recall is not None:
            f1 = 0.0
        else:
            f1 = None
        rows[name] = {"precision": precision, "recall": recall, "f1": f1}
    overall = {}
    for key in ("precision", "recall", "f1"):
        defined = [r[key] for r in rows.values() if r[key] is not None]
        overall[key] = float(np.mean(defined)) if defined else None
    return PerClassReport(rows, overall)
