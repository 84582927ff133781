"""Typed errors shared across the package.

Every error carries a stable machine-readable ``code`` so the CLI and the
HTTP service can report failures uniformly.
"""


class KgError(Exception):
    """Base class for all typed errors."""

    code = "E_INTERNAL"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class EncodingError(KgError):
    code = "E_ENCODING"


class AliasCollisionError(KgError):
    code = "E_ALIAS_COLLISION"


class EmptyAliasError(KgError):
    code = "E_EMPTY_ALIAS"


class DuplicatePaperIdError(KgError):
    code = "E_DUP_PAPER_ID"


class YearRangeError(KgError):
    code = "E_YEAR_RANGE"


class BackendError(KgError):
    code = "E_BACKEND"


class EmptyDocumentError(KgError):
    code = "E_EMPTY_DOC"


class EmptyGroupError(KgError):
    code = "E_EMPTY_GROUP"


class MergeChainError(KgError):
    code = "E_MERGE_CHAIN"


class MergeSelfError(KgError):
    code = "E_MERGE_SELF"


class DuplicateTripleError(KgError):
    code = "E_DUPLICATE_TRIPLE"


class UnknownNodeError(KgError):
    code = "E_UNKNOWN_NODE"


class MissingPositionError(KgError):
    code = "E_MISSING_POSITION"
