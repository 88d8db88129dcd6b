"""Human-feedback trial records and their per-class true/false tallies."""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from ..core import UNIFIED_LABEL_NAMES
from .metrics import format_percent

logger = logging.getLogger(__name__)

BODY_TARGETS = ("low", "moderate", "high")


class Component(Enum):
    FACE = "face"
    BODY = "body"
    SPEECH = "speech"
    TEXT = "text"
    MULTIMODAL = "multimodal"


def valid_targets(component: Component) -> tuple[str, ...]:
    return BODY_TARGETS if component is Component.BODY else UNIFIED_LABEL_NAMES


@dataclass(frozen=True)
class TrialRecord:
    session_id: str
    phase: int
    component: Component
    target_class: str
    correct: bool
    timestamp: float = field(default_factory=time.time)

    def __post_init__(self):
        if self.phase not in (1, 2):
            raise ValueError("phase must be 1 or 2")
        if self.target_class not in valid_targets(self.component):
            raise ValueError(
                f"invalid target {self.target_class!r} for component {self.component.value}"
            )

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "phase": self.phase,
            "component": self.component.value,
            "target_class": self.target_class,
            "correct": self.correct,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "TrialRecord":
        return cls(
            raw["session_id"], raw["phase"], Component(raw["component"]),
            raw["target_class"], raw["correct"], raw.get("timestamp", 0.0),
        )


def append_trial_log(records: list[TrialRecord], path: str | Path) -> None:
    """Append-only JSON-lines log, one record per line."""
    with open(path, "a") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict()) + "\n")


def read_trial_log(path: str | Path) -> list[TrialRecord]:
    path = Path(path)
    if not path.exists():
        return []
    return [
        TrialRecord.from_dict(json.loads(line))
        for line in path.read_text().splitlines()
        if line.strip()
    ]


@dataclass(frozen=True)
class TallyRow:
    true_count: int
    false_count: int

    @property
    def total(self) -> int:
        return self.true_count + self.false_count

    @property
    def accuracy(self) -> float:
        return self.true_count / self.total

    @property
    def accuracy_pct(self) -> str:
        return format_percent(self.accuracy, 2)


@dataclass(frozen=True)
class TrialTable:
    """Per (component, class) tallies with per-component overall rows."""

    rows: dict[Component, dict[str, TallyRow]]

    def overall(self, component: Component) -> TallyRow:
        per_class = self.rows[component]
        return TallyRow(
            sum(r.true_count for r in per_class.values()),
            sum(r.false_count for r in per_class.values()),
        )

    def to_dict(self) -> dict:
        out = {}
        for component, per_class in self.rows.items():
            block = {
                cls: {"true": r.true_count, "false": r.false_count,
                      "accuracy": r.accuracy_pct}
                for cls, r in per_class.items()
            }
            o = self.overall(component)
            block["overall"] = {"true": o.true_count, "false": o.false_count,
                                "accuracy": o.accuracy_pct}
            out[component.value] = block
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"{'Component':<12} {'Class':<10} {'True':>5} {'False':>5} {'Accuracy':>9}"]
        for component, per_class in self.rows.items():
            for cls, row in per_class.items():
                lines.append(
                    f"{component.value:<12} {cls:<10} {row.true_count:>5} "
                    f"{row.false_count:>5} {row.accuracy_pct:>9}"
                )
            o = self.overall(component)
            lines.append(
                f"{component.value:<12} {'overall':<10} {o.true_count:>5} "
                f"{o.false_count:>5} {o.accuracy_pct:>9}"
            )
        return "\n".join(lines)


def tally_trials(records: list[TrialRecord]) -> TrialTable:
    """Count true/false feedback per (component, class), in target order."""
    counts: dict[Component, dict[str, list[int]]] = {}
    for record in records:
        per_class = counts.setdefault(record.component, {})
        pair = per_class.setdefault(record.target_class, [0, 0])
        pair[0 if record.correct else 1] += 1
    rows = {}
    for component in Component:
        if component not in counts:
            continue
        ordered = {
            cls: TallyRow(*counts[component][cls])
            for cls in valid_targets(component)
            if cls in counts[component]
        }
        rows[component] = ordered
    return TrialTable(rows)


def diff_against_reference(
    table: TrialTable, reference: dict[tuple[str, str], str]
) -> list[dict]:
    """Compare formatted accuracies against printed reference values.

    Returns a list of discrepancy records; each is also logged, never
    silently patched. Keys are (component, class) with "overall" rows.
    """
    discrepancies = []
    for (component_name, cls), expected in reference.items():
        component = Component(component_name)
        row = table.overall(component) if cls == "overall" else table.rows[component][cls]
        actual = row.accuracy_pct
        if actual != expected:
            record = {
                "component": component_name,
                "class": cls,
                "computed": actual,
                "reference": expected,
            }
            discrepancies.append(record)
            logger.warning(
                "tally discrepancy: %s/%s computed %s vs reference %s",
                component_name, cls, actual, expected,
            )
    return discrepancies
