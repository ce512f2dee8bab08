"""DOI normalization and detection.

DOIs are the publication identifier everywhere in this package; the
canonical form is lowercase with no URL scheme or resolver prefix.
"""

from __future__ import annotations

import re

from .errors import MalformedDoi

# Prefixes stripped during normalization, checked in this order so that
# "https://dx.doi.org/10.x" loses the scheme before the resolver host.
_PREFIXES = ("http://", "https://", "dx.doi.org/", "doi.org/", "www.doi.org/", "doi:")

# A DOI-looking token inside free text: "10.<registrant>/<suffix>".
_DOI_TOKEN_RE = re.compile(r"10\.\d{4,9}/[^\s]+")

# Punctuation that commonly trails a DOI cited in prose.
_TRAILING_JUNK = ".,;:)]}>\"'"


def normalize_doi(raw: str) -> str:
    """Return the canonical lowercase form of ``raw``.

    Strips surrounding whitespace and the known URL/resolver prefixes.
    Raises MalformedDoi when the residue does not start with "10." or
    still contains whitespace. Idempotent on its own output.
    """
    value = raw.strip()
    if not value:
        raise MalformedDoi("empty DOI")
    value = value.lower()
    changed = True
    while changed:
        changed = False
        for prefix in _PREFIXES:
            if value.startswith(prefix):
                value = value[len(prefix):]
                changed = True
    if not value.startswith("10."):
        raise MalformedDoi(f"not a DOI: {raw!r}")
    if any(ch.isspace() for ch in value):
        raise MalformedDoi(f"DOI contains whitespace: {raw!r}")
    return value


def detect_dois(text: str) -> list[str]:
    """Scan free text for DOIs, normalized and deduplicated in order.

    An empty result means the text should be treated as a keyword query
    instead.
    """
    found: list[str] = []
    seen: set[str] = set()
    for match in _DOI_TOKEN_RE.finditer(text):
        candidate = match.group(0).rstrip(_TRAILING_JUNK)
        try:
            doi = normalize_doi(candidate)
        except MalformedDoi:
            continue
        if doi not in seen:
            seen.add(doi)
            found.append(doi)
    return found
