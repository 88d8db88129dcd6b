"""Weakly labeled text corpus construction from heterogeneous sources.

Source corpora arrive as ``text,label`` CSVs with incompatible label
vocabularies (28-class, 3-class, ...). Instead of mapping those labels,
every document is re-labeled through the keyword dictionary; documents
with zero keyword hits are dropped and counted.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from ..core import TextEmotionLabel
from ..face.preprocess import IngestionStats
from .cleaning import clean_text
from .keywords import UNLABELED, KeywordDictionary, keyword_classify


@dataclass(frozen=True)
class TextSample:
    raw: str
    cleaned: str
    source_label: str | None = None
    weak_label: TextEmotionLabel | None = None


def read_corpus_csv(path: str | Path) -> list[tuple[str, str | None]]:
    with open(path, newline="") as fh:
        return [(row["text"], row.get("label")) for row in csv.DictReader(fh)]


def write_corpus_csv(rows: list[tuple[str, str]], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["text", "label"])
        writer.writerows(rows)


def build_text_training_set(
    datasets: dict[str, list[tuple[str, str | None]]],
    dictionary: KeywordDictionary,
) -> tuple[list[TextSample], IngestionStats]:
    """Weak-label every document; UNLABELED documents are dropped."""
    stats = IngestionStats()
    samples: list[TextSample] = []
    for name, rows in datasets.items():
        stats.record(name)
        for text, source_label in rows:
            stats.record(name, raw=1)
            label = keyword_classify(text, dictionary)
            if label is UNLABELED:
                stats.record(name, reason="unlabeled")
                continue
            samples.append(TextSample(text, clean_text(text), source_label, label))
            stats.record(name, kept=1, label=label.label)
    return samples, stats
