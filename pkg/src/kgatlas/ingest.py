"""Parsers for triple files, abbreviation tables, merge maps, and paper
metadata, plus load-time integrity checks.

Formats are deliberately boring: UTF-8 comma-delimited (tab via flag) with
standard quoting, or JSON lines. Malformed rows reject the row, never the
file; undecodable bytes are fatal.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import BinaryIO, Dict, Iterable, List, Optional, Tuple, Union

from kgatlas.errors import (
    DuplicatePaperIdError,
    EncodingError,
    KgError,
    YearRangeError,
)
from kgatlas.model import (
    DEFAULT_YEAR_RANGE,
    AbbrevTable,
    MergeMap,
    PaperRecord,
    Triplet,
    normalize_label,
)

Stream = Union[bytes, BinaryIO]


@dataclass
class IntegrityReport:
    """Outcome of load-time quality control."""

    missing_abbreviations: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    triples_read: int = 0
    rows_rejected: int = 0

    def to_dict(self) -> dict:
        return {
            "missing_abbreviations": list(self.missing_abbreviations),
            "warnings": list(self.warnings),
            "triples_read": self.triples_read,
            "rows_rejected": self.rows_rejected,
        }


@dataclass
class ParseResult:
    """Triples recovered from a stream plus per-row rejection count."""

    triples: List[Triplet]
    rows_rejected: int = 0
    warnings: List[str] = field(default_factory=list)


def _decode(stream: Stream) -> str:
    data = stream if isinstance(stream, bytes) else stream.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"input is not valid UTF-8: {exc}") from None


def _csv_rows(text: str, delimiter: str) -> Iterable[List[str]]:
    return csv.reader(io.StringIO(text), delimiter=delimiter)


def parse_triplets(
    stream: Stream,
    format: str = "delimited",
    delimiter: str = ",",
    has_header: bool = False,
) -> ParseResult:
    """Parse a triples file.

    Delimited columns: subject, predicate, object[, paper_id[, source
    [, multiplicity]]]. JSON lines use the same keys. Predicates are
    normalized at parse time; subjects/objects are trimmed only.
    """
    text = _decode(stream)
    triples: List[Triplet] = []
    rejected = 0
    warnings: List[str] = []

    if format == "json-lines":
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                triples.append(_triplet_from_fields(
                    obj["subject"], obj["predicate"], obj["object"],
                    obj.get("paper_id"), obj.get("source"),
                    int(obj.get("multiplicity", 1)),
                ))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                rejected += 1
                warnings.append(f"line {lineno}: rejected ({exc})")
    elif format == "delimited":
        rows = _csv_rows(text, delimiter)
        if has_header:
            next(rows, None)
        for lineno, row in enumerate(rows, start=1 + int(has_header)):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 3:
                rejected += 1
                warnings.append(f"row {lineno}: fewer than 3 fields")
                continue
            try:
                mult = int(row[5]) if len(row) > 5 and row[5].strip() else 1
                triples.append(_triplet_from_fields(
                    row[0], row[1], row[2],
                    row[3] if len(row) > 3 else None,
                    row[4] if len(row) > 4 else None,
                    mult,
                ))
            except ValueError as exc:
                rejected += 1
                warnings.append(f"row {lineno}: rejected ({exc})")
    else:
        raise ValueError(f"unknown format {format!r}")

    return ParseResult(triples=triples, rows_rejected=rejected, warnings=warnings)


def _triplet_from_fields(
    subject: str,
    predicate: str,
    object_: str,
    paper_id: Optional[str],
    source: Optional[str],
    multiplicity: int,
) -> Triplet:
    return Triplet(
        subject=subject.strip(),
        predicate=normalize_label(predicate),
        object=object_.strip(),
        paper_id=(paper_id.strip() or None) if paper_id else None,
        source=(source.strip() or None) if source else None,
        multiplicity=multiplicity,
    )


def serialize_triplets(
    triples: List[Triplet],
    delimiter: str = ",",
    include_multiplicity: bool = False,
) -> bytes:
    """Inverse of delimited parse_triplets; round-trips parsed data."""
    out = io.StringIO()
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    for t in triples:
        row = [t.subject, t.predicate, t.object, t.paper_id or "", t.source or ""]
        if include_multiplicity:
            row.append(str(t.multiplicity))
        writer.writerow(row)
    return out.getvalue().encode("utf-8")


def parse_abbreviations(
    stream: Stream, delimiter: str = ",", has_header: bool = False
) -> AbbrevTable:
    """Parse a two-column (label, alias) file into a validated AbbrevTable."""
    text = _decode(stream)
    entries: Dict[str, str] = {}
    rows = _csv_rows(text, delimiter)
    if has_header:
        next(rows, None)
    for row in rows:
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < 2:
            raise KgError(f"abbreviation row needs 2 columns, got {row!r}")
        entries[normalize_label(row[0])] = row[1].strip()
    return AbbrevTable(entries=entries)


def parse_merge_map(
    stream: Stream, delimiter: str = ",", has_header: bool = False
) -> MergeMap:
    """Parse a two-column (variant, canonical) file into a validated MergeMap."""
    text = _decode(stream)
    entries: Dict[str, str] = {}
    rows = _csv_rows(text, delimiter)
    if has_header:
        next(rows, None)
    for row in rows:
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < 2:
            raise KgError(f"merge-map row needs 2 columns, got {row!r}")
        entries[normalize_label(row[0])] = normalize_label(row[1])
    return MergeMap(entries=entries)


def check_integrity(
    triples: List[Triplet],
    abbrev: AbbrevTable,
    rows_rejected: int = 0,
) -> IntegrityReport:
    """Flag predicates that have no abbreviation; never fails."""
    report = IntegrityReport(triples_read=len(triples), rows_rejected=rows_rejected)
    seen = set()
    for t in triples:
        label = normalize_label(t.predicate)
        if label in seen or label in abbrev.entries:
            continue
        seen.add(label)
        report.missing_abbreviations.append(label)
        report.warnings.append(f"relation {label!r} has no abbreviation; flagged for inspection")
    return report


def parse_paper_metadata(
    stream: Stream,
    format: str = "json-lines",
    delimiter: str = ",",
    has_header: bool = False,
    year_range: Tuple[int, int] = DEFAULT_YEAR_RANGE,
    strict: bool = False,
) -> Tuple[List[PaperRecord], List[str]]:
    """Parse paper metadata; returns (records, warnings).

    Delimited columns: paper_id, title, year, journal, authors, institutions
    (the last two ';'-separated). Duplicate ids are fatal; out-of-range years
    warn unless strict.
    """
    text = _decode(stream)
    records: List[PaperRecord] = []
    warnings: List[str] = []
    seen_ids = set()

    def add(paper_id, title, year, journal, authors, institutions):
        if paper_id in seen_ids:
            raise DuplicatePaperIdError(f"duplicate paper_id {paper_id!r}")
        seen_ids.add(paper_id)
        if year is not None and not (year_range[0] <= year <= year_range[1]):
            msg = (
                f"paper {paper_id!r}: year {year} outside range "
                f"{year_range[0]}-{year_range[1]}"
            )
            if strict:
                raise YearRangeError(msg)
            warnings.append(msg)
        records.append(PaperRecord(
            paper_id=paper_id, title=title, year=year, journal=journal,
            authors=tuple(authors), institutions=tuple(institutions),
        ))

    if format == "json-lines":
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            add(
                str(obj["paper_id"]), obj.get("title", ""),
                int(obj["year"]) if obj.get("year") is not None else None,
                obj.get("journal", ""), obj.get("authors", []),
                obj.get("institutions", []),
            )
    elif format == "delimited":
        rows = _csv_rows(text, delimiter)
        if has_header:
            next(rows, None)
        for row in rows:
            if not row or all(not cell.strip() for cell in row):
                continue
            row = row + [""] * (6 - len(row))
            add(
                row[0].strip(), row[1].strip(),
                int(row[2]) if row[2].strip() else None,
                row[3].strip(),
                [a.strip() for a in row[4].split(";") if a.strip()],
                [i.strip() for i in row[5].split(";") if i.strip()],
            )
    else:
        raise ValueError(f"unknown format {format!r}")

    return records, warnings
