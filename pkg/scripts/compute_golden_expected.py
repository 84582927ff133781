#!/usr/bin/env python3
"""Standalone oracle for the golden fixture.

Recomputes the expected pipeline output and report from first principles,
without importing the package, and writes them next to the fixture. Run once
to (re)freeze the expected files; the test suite then compares the real
pipeline against these byte-for-byte.
"""

import csv
import io
import json
from collections import Counter, OrderedDict
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

MIN_COUNT = 3
OTHER = "other"


def norm(label):
    return " ".join(label.lower().replace("-", " ").replace("_", " ").split())


def main():
    rows = []
    with open(FIXTURES / "golden_triples.csv", newline="") as fh:
        for row in csv.reader(fh):
            if not row or all(not c.strip() for c in row):
                continue
            row = row + [""] * (5 - len(row))
            rows.append({
                "subject": row[0].strip(),
                "predicate": norm(row[1]),
                "object": row[2].strip(),
                "paper_id": row[3].strip(),
                "source": row[4].strip(),
                "mult": 1,
            })

    counts_before = Counter(r["predicate"] for r in rows)

    # Stage 1: rare-relation consolidation (relabel).
    rare = {p for p, n in counts_before.items() if n < MIN_COUNT}
    for r in rows:
        if r["predicate"] in rare:
            r["predicate"] = OTHER

    # Stage 2: curated merge map.
    merge_map = {}
    with open(FIXTURES / "golden_merge_map.csv", newline="") as fh:
        for row in csv.reader(fh):
            if row and row[0].strip():
                merge_map[norm(row[0])] = norm(row[1])
    merged = 0
    for r in rows:
        if r["predicate"] in merge_map:
            r["predicate"] = merge_map[r["predicate"]]
            merged += 1

    # Stage 3: exact-match dedup on normalized key, summing multiplicity.
    folded = OrderedDict()
    for r in rows:
        key = (norm(r["subject"]), r["predicate"], norm(r["object"]))
        if key in folded:
            folded[key]["mult"] += r["mult"]
        else:
            folded[key] = r
    out_rows = list(folded.values())

    # Stage 4: abbreviation check.
    abbrev = set()
    with open(FIXTURES / "golden_abbreviations.csv", newline="") as fh:
        for row in csv.reader(fh):
            if row and row[0].strip():
                abbrev.add(norm(row[0]))
    missing = []
    for r in out_rows:
        if r["predicate"] not in abbrev and r["predicate"] not in missing:
            missing.append(r["predicate"])

    counts_after = Counter()
    for r in out_rows:
        counts_after[r["predicate"]] += r["mult"]
    report = {
        "relations_consolidated": len(rare),
        "relations_merged": merged,
        "duplicates_removed": len(rows) - len(out_rows),
        "labels_missing_abbrev": missing,
        "triples_in": len(rows),
        "triples_out": len(out_rows),
        "relation_counts_before": dict(sorted(counts_before.items())),
        "relation_counts_after": dict(sorted(counts_after.items())),
        "rows_rejected": 0,
    }

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in out_rows:
        writer.writerow([
            r["subject"], r["predicate"], r["object"],
            r["paper_id"], r["source"], str(r["mult"]),
        ])
    (FIXTURES / "golden_expected_output.csv").write_text(buf.getvalue())
    (FIXTURES / "golden_expected_report.json").write_text(
        json.dumps(report, indent=2) + "\n"
    )
    print(f"frozen: {len(out_rows)} triples, report {report}")


if __name__ == "__main__":
    main()
