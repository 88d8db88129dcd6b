"""Harmonization of raw dataset labels into the unified taxonomy.

Every source corpus ships its own label vocabulary ("happy", "calm",
"contempt", numeric codes, ...). A ``LabelMap`` is a total, case-folded
mapping from that vocabulary onto the unified labels, with ``DROP`` for
labels outside the taxonomy (the sample is discarded and counted).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .taxonomy import EmotionLabel


class _Drop:
    """Sentinel target: sample is out of taxonomy and must be discarded."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DROP"


DROP = _Drop()


class UnmappedLabelError(KeyError):
    def __init__(self, raw: str):
        super().__init__(f"unmapped label: {raw!r}")
        self.raw = raw


@dataclass(frozen=True)
class LabelMap:
    """Case-insensitive raw-label -> EmotionLabel | DROP mapping."""

    mapping: dict

    def __post_init__(self):
        folded = {}
        for raw, target in self.mapping.items():
            if not (target is DROP or isinstance(target, EmotionLabel)):
                raise ValueError(f"target for {raw!r} must be an EmotionLabel or DROP")
            folded[raw.strip().casefold()] = target
        object.__setattr__(self, "mapping", folded)

    @property
    def source_vocabulary(self) -> tuple[str, ...]:
        return tuple(sorted(self.mapping))

    def __contains__(self, raw: str) -> bool:
        return raw.strip().casefold() in self.mapping


def harmonize_label(raw: str, label_map: LabelMap):
    """Deterministically map a raw dataset label; unknown labels raise."""
    key = raw.strip().casefold()
    if key not in label_map.mapping:
        raise UnmappedLabelError(raw)
    return label_map.mapping[key]


def identity_label_map(extra: dict | None = None) -> LabelMap:
    """Map for sources already using the unified names (plus overrides)."""
    mapping: dict = {l.label: l for l in EmotionLabel}
    if extra:
        mapping.update(extra)
    return LabelMap(mapping)


def parse_label_map(text: str) -> LabelMap:
    """Parse the plain-text map format: ``raw_label -> unified_label|DROP``."""
    mapping: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: expected 'raw -> target', got {line!r}")
        raw, _, target = line.partition("->")
        target = target.strip()
        if target.upper() == "DROP":
            mapping[raw.strip()] = DROP
        else:
            mapping[raw.strip()] = EmotionLabel.from_name(target)
    return LabelMap(mapping)


def load_label_map(path: str | Path) -> LabelMap:
    return parse_label_map(Path(path).read_text())


def dump_label_map(label_map: LabelMap) -> str:
    lines = []
    for raw in label_map.source_vocabulary:
        target = label_map.mapping[raw]
        name = "DROP" if target is DROP else target.label
        lines.append(f"{raw} -> {name}")
    return "\n".join(lines) + "\n"
