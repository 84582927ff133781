"""Knowledge-graph triple pipeline, analytics, layout, and explorer service."""

from kgatlas.model import AbbrevTable, MergeMap, PaperRecord, Triplet, normalize_label

__all__ = [
    "AbbrevTable",
    "MergeMap",
    "PaperRecord",
    "Triplet",
    "normalize_label",
]

__version__ = "0.1.0"
