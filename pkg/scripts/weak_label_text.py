#!/usr/bin/env python3
"""Weakly label a text corpus with a keyword dictionary.

Reads a CSV corpus of documents (text, optional existing label), cleans each
document, assigns a label by keyword frequency (ties broken in canonical
label order, no hits left unlabeled), and writes the labelled corpus plus a
summary of the label distribution.
"""

from __future__ import annotations

import argparse
from collections import Counter

from emokit.text.dataset import build_text_training_set, read_corpus_csv, write_corpus_csv
from emokit.text.keywords import load_dictionary


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("corpus", help="input CSV of documents")
    parser.add_argument("dictionary", help="keyword dictionary JSON")
    parser.add_argument("output", help="destination CSV for the labelled corpus")
    args = parser.parse_args()

    documents = read_corpus_csv(args.corpus)
    dictionary = load_dictionary(args.dictionary)
    samples, stats = build_text_training_set({"corpus": documents}, dictionary)
    rows = [(sample.cleaned, sample.weak_label.label) for sample in samples]
    write_corpus_csv(rows, args.output)

    print(f"documents read: {stats.total_raw}, labelled: {stats.total_kept}")
    rejects = Counter()
    for per_dataset in stats.per_dataset.values():
        rejects.update(per_dataset["rejects"])
    for reason, count in sorted(rejects.items()):
        print(f"skipped ({reason}): {count}")
    for label, count in sorted(Counter(row[1] for row in rows).items()):
        print(f"{label}: {count}")


if __name__ == "__main__":
    main()
