"""Per-emotion keyword dictionary and weak labeling.

The dictionary holds, for each of the six text emotions, a ranked list of
its most frequent non-stop-word keywords. Weak labeling scores a document
by counting dictionary hits per class; zero hits means the sample stays
unlabeled and is dropped from training.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from ..core import TextEmotionLabel, TEXT_LABELS
from .cleaning import clean_text, tokenize

UNLABELED = None


@dataclass(frozen=True)
class KeywordDictionary:
    """keywords[label] is frequency-ranked, ties alphabetical."""

    keywords: dict[TextEmotionLabel, tuple[str, ...]]
    stop_words: frozenset[str] = frozenset()

    def __post_init__(self):
        for label, words in self.keywords.items():
            clash = set(words) & self.stop_words
            if clash:
                raise ValueError(f"keywords for {label.label} include stop words: {sorted(clash)}")

    def to_json(self) -> str:
        return json.dumps(
            {label.label: list(self.keywords.get(label, ())) for label in TEXT_LABELS},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str, stop_words: frozenset[str] = frozenset()) -> "KeywordDictionary":
        raw = json.loads(text)
        return cls(
            {TextEmotionLabel.from_name(name): tuple(words) for name, words in raw.items()},
            stop_words,
        )


def top_keywords(
    labeled_corpus: dict[TextEmotionLabel, list[str]],
    k: int = 200,
    stop_words: set[str] | frozenset[str] = frozenset(),
) -> KeywordDictionary:
    """K most frequent non-stop-word tokens per class, deterministic order."""
    out: dict[TextEmotionLabel, tuple[str, ...]] = {}
    for label in TEXT_LABELS:
        counts: Counter[str] = Counter()
        for doc in labeled_corpus.get(label, []):
            for token in tokenize(clean_text(doc)):
                if token not in stop_words:
                    counts[token] += 1
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        out[label] = tuple(token for token, _ in ranked[:k])
    return KeywordDictionary(out, frozenset(stop_words))


def keyword_classify(text: str, dictionary: KeywordDictionary) -> TextEmotionLabel | None:
    """Count dictionary keywords present in the cleaned text per class.

    Argmax with ties broken by the canonical 6-label order; zero total
    hits returns UNLABELED.
    """
    tokens = set(tokenize(clean_text(text)))
    best_label, best_score = None, 0
    for label in TEXT_LABELS:
        score = sum(1 for kw in dictionary.keywords.get(label, ()) if kw in tokens)
        if score > best_score:
            best_label, best_score = label, score
    return best_label if best_score > 0 else UNLABELED


def save_dictionary(dictionary: KeywordDictionary, path: str | Path) -> None:
    Path(path).write_text(dictionary.to_json())


def load_dictionary(path: str | Path) -> KeywordDictionary:
    return KeywordDictionary.from_json(Path(path).read_text())
