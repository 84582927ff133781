"""Candidate triple extraction behind a pluggable backend, with low-value
lexeme filtering and preferred-candidate selection among near-duplicates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Protocol, Sequence

import requests

from kgatlas.errors import BackendError, EmptyDocumentError, EmptyGroupError
from kgatlas.model import Triplet, normalize_label

DEFAULT_LOW_VALUE_TERMS = frozenset({"result", "study"})


@dataclass(frozen=True)
class LowValueLexicon:
    """Normalized terms considered too generic to carry graph structure."""

    terms: FrozenSet[str] = DEFAULT_LOW_VALUE_TERMS

    def __post_init__(self):
        object.__setattr__(
            self, "terms", frozenset(normalize_label(t) for t in self.terms)
        )

    def __contains__(self, term: str) -> bool:
        return normalize_label(term) in self.terms

    @classmethod
    def from_stream(cls, data: bytes) -> "LowValueLexicon":
        terms = {line.strip() for line in data.decode("utf-8").splitlines() if line.strip()}
        return cls(terms=frozenset(terms) | DEFAULT_LOW_VALUE_TERMS)


class ExtractionBackend(Protocol):
    """Callable extraction engine: document text in, candidate triples out."""

    name: str

    def extract(self, document: str) -> List[Triplet]: ...


_STUB_VERBS = r"(favors?|favor|influences?|blocks?|mediates?|supports?|opposes?)"
_STUB_RE = re.compile(rf"(.+?)\s+{_STUB_VERBS}\s+(.+)")


@dataclass
class StubBackend:
    """Deterministic offline backend for tests and demos.

    With ``fixed`` set, emits those triples for any document; otherwise a
    small pattern rule scans each sentence for `<subject> <verb> <object>`.
    """

    name: str = "stub"
    fixed: Sequence[Triplet] = ()

    def extract(self, document: str) -> List[Triplet]:
        if self.fixed:
            return list(self.fixed)
        out: List[Triplet] = []
        for sentence in re.split(r"[.!?\n]+", document):
            m = _STUB_RE.match(sentence.strip())
            if m:
                subject, verb, obj = m.group(1), m.group(2), m.group(3)
                out.append(Triplet(
                    subject=subject.strip(),
                    predicate=normalize_label(re.sub(r"s$", "", verb)),
                    object=obj.strip(),
                ))
        return out


@dataclass
class HttpBackend:
    """Remote extraction engine over a JSON request/response protocol.

    Request body: {"document": text}; expected response:
    {"triples": [{"subject", "predicate", "object"}, ...]}.
    """

    name: str
    endpoint: str
    timeout: float = 30.0

    def __post_init__(self):
        if not self.name:
            raise ValueError("backend name must be non-empty")
        if self.timeout <= 0:
            raise ValueError("backend timeout must be > 0")

    def extract(self, document: str) -> List[Triplet]:
        try:
            resp = requests.post(
                self.endpoint, json={"document": document}, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise BackendError(f"backend {self.name!r} unreachable: {exc}") from None
        if not 200 <= resp.status_code < 300:
            raise BackendError(
                f"backend {self.name!r} returned HTTP {resp.status_code}"
            )
        try:
            body = resp.json()
            return [
                Triplet(
                    subject=item["subject"],
                    predicate=item["predicate"],
                    object=item["object"],
                )
                for item in body["triples"]
            ]
        except (ValueError, KeyError, TypeError) as exc:
            raise BackendError(
                f"backend {self.name!r} sent a malformed response: {exc}"
            ) from None


def extract_triplets(document: str, backend: ExtractionBackend) -> List[Triplet]:
    """Run a backend over one document; candidates are tagged with its name."""
    if not document.strip():
        raise EmptyDocumentError("document is empty")
    candidates = backend.extract(document)
    return [
        Triplet(
            subject=t.subject, predicate=t.predicate, object=t.object,
            paper_id=t.paper_id, source=backend.name, multiplicity=t.multiplicity,
        )
        for t in candidates
    ]


def filter_low_value(
    candidates: List[Triplet], lexicon: Optional[LowValueLexicon] = None
) -> List[Triplet]:
    """Drop candidates whose subject or object is a low-value term."""
    lex = lexicon or LowValueLexicon()
    return [t for t in candidates if t.subject not in lex and t.object not in lex]


def select_preferred(group: List[Triplet]) -> Triplet:
    """Pick the clearest candidate among near-duplicates.

    The group must share normalized subject and predicate; the winner has the
    fewest object tokens, ties broken by lexicographically smallest
    normalized object. Deterministic regardless of input order.
    """
    if not group:
        raise EmptyGroupError("candidate group is empty")
    keys = {(normalize_label(t.subject), normalize_label(t.predicate)) for t in group}
    if len(keys) > 1:
        raise ValueError("group members must share normalized subject and predicate")
    return min(
        group,
        key=lambda t: (
            len(normalize_label(t.object).split()),
            normalize_label(t.object),
        ),
    )


def group_and_select(candidates: List[Triplet]) -> List[Triplet]:
    """Collapse candidates sharing (subject, predicate) to one preferred each."""
    groups: Dict[tuple, List[Triplet]] = {}
    order: List[tuple] = []
    for t in candidates:
        key = (normalize_label(t.subject), normalize_label(t.predicate))
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(t)
    return [select_preferred(groups[key]) for key in order]
