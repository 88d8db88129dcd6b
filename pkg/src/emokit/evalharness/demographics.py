"""Demographic survey summaries with a non-disclosure bucket."""
from __future__ import annotations

NON_DISCLOSURE = "undisclosed"


def demographic_summary(surveys: list[dict[str, str | None]]) -> dict[str, dict[str, float]]:
    """Answer proportions per question; missing/None answers count as
    non-disclosure. Each question's proportions sum to 1."""
    if not surveys:
        raise ValueError("no surveys")
    questions = sorted({q for s in surveys for q in s})
    out: dict[str, dict[str, float]] = {}
    for question in questions:
        counts: dict[str, int] = {}
        for survey in surveys:
            answer = survey.get(question)
            key = NON_DISCLOSURE if answer in (None, "") else str(answer)
            counts[key] = counts.get(key, 0) + 1
        total = len(surveys)
        out[question] = {answer: n / total for answer, n in sorted(counts.items())}
    return out
