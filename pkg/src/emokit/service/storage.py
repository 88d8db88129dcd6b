"""Durable session persistence: event logs, trial log, media-byte guard.

Retained artifacts are JSON-lines event logs (one file per session) plus
the global trial log. A schema guard refuses to persist anything that
looks like raw media, so frames and audio can never leak into durable
storage.
"""
from __future__ import annotations

import json
import time
from pathlib import Path

from ..ephemeral import EphemeralStore, recovery_sweep

# Longest numeric sequence a retained artifact may contain. Distributions
# (7), tallies, and movement metrics are tiny; media buffers are not.
MAX_SEQUENCE_LENGTH = 64

_MEDIA_KEYS = {"samples", "pixels", "frames", "audio", "image", "waveform"}


class MediaInArtifactError(ValueError):
    """A retained artifact carried raw media bytes."""


def assert_no_media(payload, _key: str = "") -> None:
    if isinstance(payload, (bytes, bytearray, memoryview)):
        raise MediaInArtifactError(f"raw bytes under key {_key!r}")
    if isinstance(payload, dict):
        for key, value in payload.items():
            if str(key).lower() in _MEDIA_KEYS:
                raise MediaInArtifactError(f"media-like key {key!r} in retained artifact")
            assert_no_media(value, str(key))
    elif isinstance(payload, (list, tuple)):
        if len(payload) > MAX_SEQUENCE_LENGTH and all(
            isinstance(v, (int, float)) for v in payload
        ):
            raise MediaInArtifactError(
                f"numeric sequence of length {len(payload)} under key {_key!r}"
            )
        for value in payload:
            assert_no_media(value, _key)


class SessionStorage:
    """Filesystem layout: sessions/<id>.jsonl, ephemeral/<id>/, trial_log.jsonl."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)
        self.ephemeral_root = self.root / "ephemeral"
        self.ephemeral_root.mkdir(parents=True, exist_ok=True)
        self.trial_log_path = self.root / "trial_log.jsonl"

    def sweep_orphans(self) -> int:
        """Destroy ephemeral media left behind by crashed sessions."""
        return recovery_sweep(self.ephemeral_root)

    def ephemeral_store(self, session_id: str) -> EphemeralStore:
        return EphemeralStore(self.ephemeral_root / session_id)

    def event_log_path(self, session_id: str) -> Path:
        return self.root / "sessions" / f"{session_id}.jsonl"

    def append_event(self, session_id: str, event: str, payload: dict | None = None) -> dict:
        record = {"timestamp": time.time(), "event": event, "payload": payload or {}}
        assert_no_media(record)
        with open(self.event_log_path(session_id), "a") as fh:
            fh.write(json.dumps(record) + "\n")
        return record

    def read_events(self, session_id: str) -> list[dict]:
        path = self.event_log_path(session_id)
        if not path.exists():
            return []
        return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]
