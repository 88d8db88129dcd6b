#!/usr/bin/env python3
"""Tally a trial feedback log and print the accuracy table.

Reads an append-only JSON-lines trial log (one record per line), aggregates
true/false feedback per component and target class, and prints an aligned
text table. Optionally diffs the computed percentages against a reference
JSON file of the form {"component/class": "94.72%", ...}; any divergence is
printed and logged, never patched over.
"""

from __future__ import annotations

import argparse
import json

from emokit.evalharness import diff_against_reference, read_trial_log, tally_trials


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("log", help="path to the JSON-lines trial log")
    parser.add_argument("--reference", help="JSON file of expected percentages to diff against")
    parser.add_argument("--json", action="store_true", help="emit the table as JSON instead of text")
    args = parser.parse_args()

    records = read_trial_log(args.log)
    table = tally_trials(records)
    print(table.to_json() if args.json else table.to_text())

    if args.reference:
        with open(args.reference, encoding="utf-8") as handle:
            raw = json.load(handle)
        reference = {tuple(key.split("/", 1)): value for key, value in raw.items()}
        diffs = diff_against_reference(table, reference)
        if not diffs:
            print("all tallies match the reference")
        for diff in diffs:
            print(
                f"DISCREPANCY {diff['component']}/{diff['class']}: "
                f"computed {diff['computed']} vs reference {diff['reference']}"
            )


if __name__ == "__main__":
    main()
