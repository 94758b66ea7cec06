"""Exception hierarchy shared across the engine, service, and CLI.

Every error carries a stable ``code`` string so the HTTP layer and the CLI
can emit machine-readable errors without inspecting exception types.
"""


class BricolageError(Exception):
    """Base class; ``code`` is the stable machine-readable identifier."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


# --- manifest / collection ------------------------------------------------

class MalformedManifest(BricolageError):
    code = "malformed_manifest"


class DuplicateId(BricolageError):
    code = "duplicate_id"


class InvalidDimension(BricolageError):
    code = "invalid_dimension"


class MissingImage(BricolageError):
    code = "missing_image"


class EmptyStories(BricolageError):
    code = "empty_stories"


class EmptyCollection(BricolageError):
    code = "empty_collection"


# --- palette ----------------------------------------------------------------

class EmptyImage(BricolageError):
    code = "empty_image"


# --- filtering --------------------------------------------------------------

class UnknownId(BricolageError):
    code = "unknown_id"


class InvalidFilter(BricolageError):
    code = "invalid_filter"


# --- layout -----------------------------------------------------------------

class ShelfTooNarrow(BricolageError):
    code = "shelf_too_narrow"


class TooManyPiles(BricolageError):
    code = "too_many_piles"


class WrongLayoutKind(BricolageError):
    code = "wrong_layout_kind"
