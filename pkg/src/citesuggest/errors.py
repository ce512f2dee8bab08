"""Exception types shared across the package."""

from __future__ import annotations


class CiteSuggestError(Exception):
    """Base class for all errors raised by this package."""


class MalformedDoi(CiteSuggestError):
    """Input cannot be normalized into a valid DOI."""


class InvalidQuery(CiteSuggestError):
    """Search query is empty or otherwise unusable."""


class InvalidFilter(CiteSuggestError):
    """Filter specification is inconsistent (e.g. year_min > year_max)."""


class MissingScore(CiteSuggestError):
    """An author contribution references a publication without a score entry."""


class NoYearData(CiteSuggestError):
    """An operation needing publication years found none."""


class InvalidSessionFile(CiteSuggestError):
    """Session file is malformed, has a wrong version, or contains bad DOIs."""


class NotFound(CiteSuggestError):
    """Neither data source knows the requested DOI."""


class SourceUnavailable(CiteSuggestError):
    """Transport failure on the upstream sources with no cached fallback."""


class PartialData(CiteSuggestError):
    """One data source failed; the partial record is attached.

    Callers that can live with partial records catch this and read
    ``record`` (a ``SourceRecord`` whose ok-flags say which side is
    missing).
    """

    def __init__(self, message: str, record=None):
        super().__init__(message)
        self.record = record
