"""Session state: the seed selection, staged changes, and persistence.

Include/exclude actions are staged and only take effect on an explicit
update, so the suggestion list stays stable while the user works through
it. Sessions persist as versioned JSON with staged changes committed
first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .doi import normalize_doi
from .errors import InvalidSessionFile, MalformedDoi

SESSION_VERSION = 1


@dataclass(frozen=True)
class SessionState:
    """Immutable snapshot; mutators return new states."""

    selected: tuple[str, ...] = ()
    excluded: tuple[str, ...] = ()
    keyword_text: str = ""
    boost_enabled: bool = True
    staged_inclusions: frozenset[str] = frozenset()
    staged_exclusions: frozenset[str] = frozenset()
    read_dois: frozenset[str] = frozenset()

    def __post_init__(self):
        overlap = set(self.selected) & set(self.excluded)
        if overlap:
            raise ValueError(f"selected and excluded overlap: {sorted(overlap)}")
        if self.staged_inclusions & self.staged_exclusions:
            raise ValueError("a DOI is staged for inclusion and exclusion at once")

    # -- staging -------------------------------------------------------------

    def stage_inclusion(self, doi: str) -> "SessionState":
        doi = normalize_doi(doi)
        if doi in self.selected:
            return self
        return replace(
            self,
            staged_inclusions=self.staged_inclusions | {doi},
            staged_exclusions=self.staged_exclusions - {doi},
        )

    def stage_exclusion(self, doi: str) -> "SessionState":
        doi = normalize_doi(doi)
        if doi in self.excluded:
            return self
        return replace(
            self,
            staged_exclusions=self.staged_exclusions | {doi},
            staged_inclusions=self.staged_inclusions - {doi},
        )

    def unstage(self, doi: str) -> "SessionState":
        doi = normalize_doi(doi)
        return replace(
            self,
            staged_inclusions=self.staged_inclusions - {doi},
            staged_exclusions=self.staged_exclusions - {doi},
        )

    # -- direct selection edits (seed search flow) ----------------------------

    def add_selected(self, doi: str) -> "SessionState":
        doi = normalize_doi(doi)
        if doi in self.selected:
            return self
        return replace(
            self,
            selected=self.selected + (doi,),
            excluded=tuple(d for d in self.excluded if d != doi),
            staged_inclusions=self.staged_inclusions - {doi},
            staged_exclusions=self.staged_exclusions - {doi},
        )

    def remove_selected(self, doi: str) -> "SessionState":
        doi = normalize_doi(doi)
        return replace(
            self, selected=tuple(d for d in self.selected if d != doi)
        )

    # -- keywords and options ---------------------------------------------------

    def with_keywords(self, keyword_text: str) -> "SessionState":
        return replace(self, keyword_text=keyword_text)

    def with_boost(self, enabled: bool) -> "SessionState":
        return replace(self, boost_enabled=enabled)

    def mark_read(self, doi: str) -> "SessionState":
        doi = normalize_doi(doi)
        if doi in self.read_dois:
            return self
        return replace(self, read_dois=self.read_dois | {doi})

    def is_unread(self, doi: str) -> bool:
        return doi not in self.read_dois

    @property
    def has_staged_changes(self) -> bool:
        return bool(self.staged_inclusions or self.staged_exclusions)


def commit_update(state: SessionState) -> SessionState:
    """Apply staged changes: inclusions join the selection (leaving the
    excluded list if present there), exclusions join the excluded list,
    both staging sets are cleared."""
    selected = list(state.selected)
    excluded = list(state.excluded)
    for doi in sorted(state.staged_inclusions):
        if doi not in selected:
            selected.append(doi)
        if doi in excluded:
            excluded.remove(doi)
    for doi in sorted(state.staged_exclusions):
        if doi in selected:
            selected.remove(doi)
        if doi not in excluded:
            excluded.append(doi)
    return replace(
        state,
        selected=tuple(selected),
        excluded=tuple(excluded),
        staged_inclusions=frozenset(),
        staged_exclusions=frozenset(),
    )


def save_session(state: SessionState) -> bytes:
    """Versioned JSON document; staged changes must be committed first."""
    if state.has_staged_changes:
        raise ValueError("commit staged changes before saving a session")
    document = {
        "version": SESSION_VERSION,
        "selected": list(state.selected),
        "excluded": list(state.excluded),
        "keywords": state.keyword_text,
        "boost_enabled": state.boost_enabled,
        "read": sorted(state.read_dois),
    }
    return json.dumps(document, indent=2, sort_keys=True).encode("utf-8")


def load_session(data: bytes | str) -> SessionState:
    """Parse and validate a session document.

    Optional fields default (excluded [], read [], boost_enabled true);
    unknown fields are ignored for forward compatibility.
    """
    try:
        document = json.loads(data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise InvalidSessionFile(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise InvalidSessionFile("session document must be a JSON object")
    if document.get("version") != SESSION_VERSION:
        raise InvalidSessionFile(
            f"unsupported session version: {document.get('version')!r}"
        )
    if "selected" not in document or "keywords" not in document:
        raise InvalidSessionFile("session document lacks required fields")

    def doi_list(key: str, default) -> list[str]:
        raw = document.get(key, default)
        if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
            raise InvalidSessionFile(f"field {key!r} must be a list of strings")
        out = []
        for value in raw:
            try:
                normalized = normalize_doi(value)
            except MalformedDoi as exc:
                raise InvalidSessionFile(f"bad DOI in {key!r}: {value!r}") from exc
            if normalized not in out:
                out.append(normalized)
        return out

    selected = doi_list("selected", None)
    excluded = [d for d in doi_list("excluded", []) if d not in selected]
    read = doi_list("read", [])
    keywords = document.get("keywords")
    if not isinstance(keywords, str):
        raise InvalidSessionFile("field 'keywords' must be a string")
    boost = document.get("boost_enabled", True)
    if not isinstance(boost, bool):
        raise InvalidSessionFile("field 'boost_enabled' must be a boolean")
    return SessionState(
        selected=tuple(selected),
        excluded=tuple(excluded),
        keyword_text=keywords,
        boost_enabled=boost,
        read_dois=frozenset(read),
    )
