"""Aggregation of per-model evaluation artifacts into multimodal views."""
from __future__ import annotations

import numpy as np

from ..evalharness.metrics import ConfusionMatrix, MetricReport


def aggregate_metric_rows(rows: list[MetricReport]) -> MetricReport:
    """Multimodal metric row: the arithmetic mean of each per-model field."""
    if not rows:
        raise ValueError("no metric rows to aggregate")
    matrix = np.array([r.as_row() for r in rows])
    acc, loss, precision, recall, f1, auc = matrix.mean(axis=0)
    excluded = tuple(sorted({c for r in rows for c in r.excluded_classes}))
    return MetricReport(
        accuracy=float(acc), loss=float(loss), precision=float(precision),
        recall=float(recall), f1=float(f1), auc=float(auc),
        excluded_classes=excluded,
    )


def fuse_confusion(matrices: list[ConfusionMatrix]) -> ConfusionMatrix:
    """Element-wise sum of counts; total count is preserved exactly."""
    if not matrices:
        raise ValueError("no confusion matrices to fuse")
    labels = matrices[0].labels
    if any(m.labels != labels for m in matrices):
        raise ValueError("confusion matrices use different label orders")
    counts = np.sum([m.counts for m in matrices], axis=0)
    return ConfusionMatrix(counts, labels)
