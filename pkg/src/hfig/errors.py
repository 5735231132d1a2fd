"""Exception types shared across the data model, layout engine, ingestion, and CLI."""

from __future__ import annotations


class DatasetError(ValueError):
    """Base class for all data-source validation failures.

    ``path`` is a JSON-path string (e.g. ``$.groups[0].measurements[1].min``)
    pointing at the offending field when one is known.
    """

    def __init__(self, message: str, path: str | None = None):
        self.message = message
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class DataSyntaxError(DatasetError):
    """The input is not well-formed JSON (or not decodable as UTF-8)."""


class SchemaError(DatasetError):
    """A required key is missing, an unknown key is present, or a value is ill-typed."""


class RangeError(DatasetError):
    """Recommended/warning bounds are inconsistent with each other."""


class DuplicateError(DatasetError):
    """Repeated measurement id, group label, or sample timestamp."""


class TimeParseError(DatasetError):
    """A tracker entry's start time cannot be normalized to epoch seconds."""


class MappingError(DatasetError):
    """A metric mapping entry is unusable (missing units or ranges)."""


class ConflictError(DatasetError):
    """Two datasets being merged disagree about an existing measurement."""


class LayoutOverflow(Exception):
    """Placed labels cannot all fit inside the canvas.

    Callers should enlarge the canvas or disable measurement labels.
    """
