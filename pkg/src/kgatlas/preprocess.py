"""Four-stage cleaning pipeline: rare-relation consolidation, semantic label
merging, exact-match deduplication, abbreviation validation.

Merge proposals are review artifacts only; the applied merge map is always a
curated input. Deduplication folds duplicates into multiplicity so corpus
frequency survives the graph-distortion fix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Set, Tuple

from kgatlas.ingest import check_integrity
from kgatlas.model import (
    AbbrevTable,
    MergeMap,
    Triplet,
    normalize_label,
    predicate_counts,
)


@dataclass
class PipelineConfig:
    min_relation_count: int = 3
    long_tail_action: str = "relabel"  # or "drop"
    other_label: str = "other"
    similarity_threshold: float = 0.6
    merge_map: MergeMap = field(default_factory=MergeMap)
    abbrev: AbbrevTable = field(default_factory=AbbrevTable)
    second_consolidation_pass: bool = False

    def __post_init__(self):
        if not 0.0 <= self.similarity_threshold <= 1.0:
            raise ValueError("similarity_threshold must be in [0, 1]")
        if self.min_relation_count < 1:
            raise ValueError("min_relation_count must be >= 1")
        if self.long_tail_action not in ("drop", "relabel"):
            raise ValueError("long_tail_action must be 'drop' or 'relabel'")


@dataclass
class PipelineReport:
    relations_consolidated: int = 0
    relations_merged: int = 0
    duplicates_removed: int = 0
    labels_missing_abbrev: List[str] = field(default_factory=list)
    triples_in: int = 0
    triples_out: int = 0
    relation_counts_before: Dict[str, int] = field(default_factory=dict)
    relation_counts_after: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "relations_consolidated": self.relations_consolidated,
            "relations_merged": self.relations_merged,
            "duplicates_removed": self.duplicates_removed,
            "labels_missing_abbrev": list(self.labels_missing_abbrev),
            "triples_in": self.triples_in,
            "triples_out": self.triples_out,
            "relation_counts_before": dict(sorted(self.relation_counts_before.items())),
            "relation_counts_after": dict(sorted(self.relation_counts_after.items())),
        }


def consolidate_rare_relations(
    triples: List[Triplet],
    min_count: int = 3,
    action: str = "relabel",
    other_label: str = "other",
) -> Tuple[List[Triplet], int]:
    """Drop or relabel triples whose predicate's weighted count is below
    min_count. Returns (triples, number of distinct relations consolidated).
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    counts = predicate_counts(triples)
    rare = {label for label, n in counts.items() if n < min_count}
    if not rare:
        return list(triples), 0
    out: List[Triplet] = []
    for t in triples:
        if normalize_label(t.predicate) in rare:
            if action == "relabel":
                out.append(t.with_predicate(other_label))
            # drop: skip
        else:
            out.append(t)
    return out, len(rare)


def levenshtein(a: str, b: str) -> int:
    """Edit distance via the two-row dynamic program."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (ca != cb),
            ))
        prev = cur
    return prev[len(b)]


def label_similarity(a: str, b: str) -> float:
    """1 - levenshtein/max length; identical labels score 1."""
    if a == b:
        return 1.0
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def propose_merge_candidates(
    labels: Iterable[str], threshold: float = 0.6
) -> List[Tuple[str, str, float]]:
    """All unordered label pairs at or above the similarity threshold.

    Output is a review artifact sorted by descending score then
    lexicographic pair; it is never auto-applied.
    """
    unique = sorted(set(labels))
    out: List[Tuple[str, str, float]] = []
    for i, a in enumerate(unique):
        for b in unique[i + 1 :]:
            score = label_similarity(a, b)
            if score >= threshold:
                out.append((a, b, score))
    out.sort(key=lambda item: (-item[2], item[0], item[1]))
    return out


def apply_merge_map(triples: List[Triplet], merge_map: MergeMap) -> List[Triplet]:
    """Replace each predicate found as a variant key with its canonical label.

    MergeMap validation guarantees idempotence: applying twice is a no-op.
    """
    return [
        t.with_predicate(canonical)
        if (canonical := merge_map.resolve(normalize_label(t.predicate)))
        != normalize_label(t.predicate)
        else t
        for t in triples
    ]


def deduplicate(triples: List[Triplet]) -> List[Triplet]:
    """Fold triples with equal normalized keys, summing multiplicity.

    First-occurrence order and provenance are kept.
    """
    folded: Dict[Tuple[str, str, str], Triplet] = {}
    for t in triples:
        key = t.key
        if key in folded:
            first = folded[key]
            folded[key] = first.with_multiplicity(first.multiplicity + t.multiplicity)
        else:
            folded[key] = t
    return list(folded.values())


def run_pipeline(
    triples: List[Triplet], config: PipelineConfig
) -> Tuple[List[Triplet], PipelineReport]:
    """Apply consolidation, merging, dedup, and abbreviation validation in
    order; optionally re-consolidate after merging since merging shifts
    counts.
    """
    report = PipelineReport(
        triples_in=len(triples),
        relation_counts_before=predicate_counts(triples),
    )

    current, consolidated = consolidate_rare_relations(
        triples, config.min_relation_count, config.long_tail_action, config.other_label
    )
    report.relations_consolidated = consolidated

    before_merge = current
    current = apply_merge_map(current, config.merge_map)
    report.relations_merged = sum(
        1 for a, b in zip(before_merge, current) if a.predicate != b.predicate
    )

    if config.second_consolidation_pass:
        current, again = consolidate_rare_relations(
            current, config.min_relation_count, config.long_tail_action,
            config.other_label,
        )
        report.relations_consolidated += again

    pre_dedup = len(current)
    current = deduplicate(current)
    report.duplicates_removed = pre_dedup - len(current)

    integrity = check_integrity(current, config.abbrev)
    report.labels_missing_abbrev = integrity.missing_abbreviations

    report.triples_out = len(current)
    report.relation_counts_after = predicate_counts(current)
    return current, report
