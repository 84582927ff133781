"""Shared domain types and canonical label normalization.

All relation and entity labels flow through :func:`normalize_label` so that
encoding variants (case, hyphen vs. space, stray whitespace) collapse to a
single canonical form before any downstream stage sees them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from kgatlas.errors import (
    AliasCollisionError,
    EmptyAliasError,
    MergeChainError,
    MergeSelfError,
)

_WS_RE = re.compile(r"\s+")

DEFAULT_YEAR_RANGE = (1996, 2019)


@lru_cache(maxsize=1 << 16)
def normalize_label(label: str) -> str:
    """Lowercase, map hyphens/underscores to spaces, collapse whitespace, trim.

    Idempotent; empty input yields the empty string (callers reject empties).
    Cached: corpora repeat a small label vocabulary heavily.
    """
    out = label.lower().replace("-", " ").replace("_", " ")
    return _WS_RE.sub(" ", out).strip()


@dataclass(frozen=True)
class Triplet:
    """A subject-predicate-object statement with provenance and multiplicity."""

    subject: str
    predicate: str
    object: str
    paper_id: Optional[str] = None
    source: Optional[str] = None
    multiplicity: int = 1

    def __post_init__(self):
        for name in ("subject", "predicate", "object"):
            if not getattr(self, name).strip():
                raise ValueError(f"Triplet.{name} must be non-empty")
        if self.multiplicity < 1:
            raise ValueError("Triplet.multiplicity must be >= 1")

    @property
    def key(self) -> Tuple[str, str, str]:
        """Deduplication identity: normalized (subject, predicate, object)."""
        return (
            normalize_label(self.subject),
            normalize_label(self.predicate),
            normalize_label(self.object),
        )

    def with_predicate(self, predicate: str) -> "Triplet":
        return replace(self, predicate=predicate)

    def with_multiplicity(self, multiplicity: int) -> "Triplet":
        return replace(self, multiplicity=multiplicity)


@dataclass(frozen=True)
class PaperRecord:
    """Corpus document metadata."""

    paper_id: str
    title: str = ""
    year: Optional[int] = None
    journal: str = ""
    authors: Tuple[str, ...] = ()
    institutions: Tuple[str, ...] = ()


@dataclass(frozen=True)
class AbbrevTable:
    """Bijective mapping from canonical relation labels to short aliases."""

    entries: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        seen: Dict[str, str] = {}
        for label, alias in self.entries.items():
            if not alias.strip():
                raise EmptyAliasError(f"label {label!r} maps to an empty alias")
            if alias in seen:
                raise AliasCollisionError(
                    f"alias {alias!r} shared by {seen[alias]!r} and {label!r}"
                )
            seen[alias] = label

    def alias_for(self, label: str) -> str:
        """Alias for a relation label, or empty string when unmapped."""
        return self.entries.get(normalize_label(label), "")

    def __contains__(self, label: str) -> bool:
        return normalize_label(label) in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MergeMap:
    """Curated variant -> canonical relation label mapping.

    Chains and self-mappings are rejected up front, which makes application
    idempotent by construction.
    """

    entries: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for variant, canonical in self.entries.items():
            if variant == canonical:
                raise MergeSelfError(f"{variant!r} maps to itself")
            if canonical in self.entries:
                raise MergeChainError(
                    f"canonical target {canonical!r} is also a variant key"
                )

    def resolve(self, label: str) -> str:
        return self.entries.get(label, label)

    def __len__(self) -> int:
        return len(self.entries)


def predicate_counts(triples: List[Triplet]) -> Dict[str, int]:
    """Multiplicity-weighted frequency of each normalized predicate."""
    counts: Dict[str, int] = {}
    for t in triples:
        label = normalize_label(t.predicate)
        counts[label] = counts.get(label, 0) + t.multiplicity
    return counts
