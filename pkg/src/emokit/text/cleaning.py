"""Regex text cleaning and data-driven stop-word construction."""
from __future__ import annotations

import re

_URL_RE = re.compile(r"https?://\S+|www\.\S+")
_MENTION_RE = re.compile(r"@\w+")
_NON_ALPHA_RE = re.compile(r"[^a-z\s]+")
_WS_RE = re.compile(r"\s+")


def clean_text(raw: str) -> str:
    """Lowercase; strip URLs, @mentions, digits, punctuation; collapse
    whitespace. Idempotent and never lengthens the string."""
    text = raw.lower()
    text = _URL_RE.sub(" ", text)
    text = _MENTION_RE.sub(" ", text)
    text = _NON_ALPHA_RE.sub("", text)
    return _WS_RE.sub(" ", text).strip()


def tokenize(cleaned: str) -> list[str]:
    return cleaned.split()


def build_stopwords(
    labeled_corpus: dict[str, list[str]],
    base_list: set[str] | None = None,
    df_ceiling: float = 0.5,
) -> set[str]:
    """Base list plus tokens too common in every class to be informative.

    A token joins the stop-word set when its document frequency exceeds
    the ceiling in every emotion class: it appears everywhere, so it
    cannot discriminate between classes.
    """
    stop = set(base_list or ())
    class_dfs: list[dict[str, float]] = []
    for docs in labeled_corpus.values():
        if not docs:
            continue
        counts: dict[str, int] = {}
        for doc in docs:
            for token in set(tokenize(clean_text(doc))):
                counts[token] = counts.get(token, 0) + 1
        class_dfs.append({t: c / len(docs) for t, c in counts.items()})
    if class_dfs:
        candidates = set.intersection(*(set(df) for df in class_dfs))
        for token in candidates:
            if all(df[token] > df_ceiling for df in class_dfs):
                stop.add(token)
    return stop
