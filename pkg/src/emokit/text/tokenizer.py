"""Vocabulary fitting, integer encoding, and post-padding."""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cleaning import clean_text, tokenize

PAD_INDEX = 0
UNKNOWN_INDEX = 1


@dataclass(frozen=True)
class TokenizerState:
    """Frozen token -> index table. 0 is padding, 1 is unknown."""

    vocabulary: dict[str, int]
    max_len: int
    corpus_hash: str

    def __post_init__(self):
        indices = sorted(self.vocabulary.values())
        if indices and (indices[0] < 2 or indices != list(range(2, 2 + len(indices)))):
            raise ValueError("vocabulary indices must be dense starting at 2")

    def to_json(self) -> str:
        return json.dumps(
            {"vocabulary": self.vocabulary, "max_len": self.max_len,
             "corpus_hash": self.corpus_hash},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "TokenizerState":
        raw = json.loads(text)
        return cls(raw["vocabulary"], raw["max_len"], raw["corpus_hash"])


def fit_tokenizer(
    texts: list[str], max_len: int = 40, vocab_cap: int = 20_000
) -> TokenizerState:
    """Assign dense indices to the most frequent tokens of the fit corpus."""
    counts: Counter[str] = Counter()
    for text in texts:
        counts.update(tokenize(clean_text(text)))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:vocab_cap]
    vocabulary = {token: i + 2 for i, (token, _) in enumerate(ranked)}
    digest = hashlib.sha256("\n".join(texts).encode()).hexdigest()[:16]
    return TokenizerState(vocabulary, max_len, digest)


def tokenize_and_pad(texts: list[str], tokenizer: TokenizerState) -> np.ndarray:
    """(n x max_len) integer matrix: unknown -> 1, post-padded with 0,
    truncation keeps the first max_len tokens."""
    rows = np.full((len(texts), tokenizer.max_len), PAD_INDEX, dtype=np.int64)
    for i, text in enumerate(texts):
        tokens = tokenize(clean_text(text))[: tokenizer.max_len]
        for j, token in enumerate(tokens):
            rows[i, j] = tokenizer.vocabulary.get(token, UNKNOWN_INDEX)
    return rows


def save_tokenizer(tokenizer: TokenizerState, path: str | Path) -> None:
    Path(path).write_text(tokenizer.to_json())


def load_tokenizer(path: str | Path) -> TokenizerState:
    return TokenizerState.from_json(Path(path).read_text())
