"""Metadata cleanup: year recovery from DOIs, capitalization, encodings.

All repairs are idempotent; encoding fixes run to a fixpoint so nested
artifacts ("&amp;amp;") fully unwind.
"""

from __future__ import annotations

import html
import re

YEAR_MIN = 1900

_DIGIT_RUN_RE = re.compile(r"\d+")

# Words kept lowercase inside recapitalized titles (never first or last).
SMALL_WORDS = frozenset(
    "a an and as at but by for from in into nor of on or the to via with".split()
)

# UTF-8 byte pairs misread as Latin-1/Windows-1252, seen in upstream
# metadata. Keys never occur in repaired output, so substitution is
# stable.
MOJIBAKE_TABLE = {
    "Ã¡": "á",
    "Ã ": "à",
    "Ã¢": "â",
    "Ã£": "ã",
    "Ã¤": "ä",
    "Ã¥": "å",
    "Ã¦": "æ",
    "Ã§": "ç",
    "Ã©": "é",
    "Ã¨": "è",
    "Ãª": "ê",
    "Ã«": "ë",
    "Ã­": "í",
    "Ã®": "î",
    "Ã¯": "ï",
    "Ã±": "ñ",
    "Ã³": "ó",
    "Ã²": "ò",
    "Ã´": "ô",
    "Ãµ": "õ",
    "Ã¶": "ö",
    "Ã¸": "ø",
    "Ãº": "ú",
    "Ã¹": "ù",
    "Ã»": "û",
    "Ã¼": "ü",
    "Ã½": "ý",
    "Ã": "ß",
    # CP1252 renderings of UTF-8 punctuation (the visible "â€™" family).
    "â€™": "’",
    "â€˜": "‘",
    "â€œ": "“",
    "â€“": "–",
    "â€”": "—",
    # Latin-1 renderings of the same bytes (control characters).
    "â": "’",
    "â": "‘",
    "â": "“",
    "â": "”",
    "â": "–",
    "â": "—",
}


def fix_encoding(text: str) -> str:
    """Unescape HTML entities and replace known mojibake, to a fixpoint."""
    current = text
    while True:
        repaired = html.unescape(current)
        for bad, good in MOJIBAKE_TABLE.items():
            repaired = repaired.replace(bad, good)
        if repaired == current:
            return current
        current = repaired


def recapitalize_title(title: str) -> str:
    """Title-case an ALL-CAPS title; other titles pass through."""
    if not title.isupper():
        return title
    words = title.split()
    out = []
    for position, word in enumerate(words):
        lowered = word.lower()
        if 0 < position < len(words) - 1 and lowered in SMALL_WORDS:
            out.append(lowered)
        else:
            out.append(lowered[:1].upper() + lowered[1:])
    return " ".join(out)


def year_from_doi(doi: str, current_year: int) -> int | None:
    """First plausible four-digit year embedded in the DOI, if any."""
    for run in _DIGIT_RUN_RE.findall(doi):
        if len(run) == 4 and YEAR_MIN <= int(run) <= current_year + 1:
            return int(run)
    return None


def repair_fields(metadata: dict, doi: str, current_year: int) -> dict:
    """Repaired copy of a canonical metadata dict.

    Order: encoding fixes, then recapitalization (so entity-laden caps
    titles are judged on their decoded text), then year recovery.
    """
    repaired = dict(metadata)
    for key in ("title", "venue", "abstract"):
        value = repaired.get(key)
        if isinstance(value, str):
            repaired[key] = fix_encoding(value)
    if repaired.get("authors"):
        repaired["authors"] = [
            fix_encoding(name) if isinstance(name, str) else name
            for name in repaired["authors"]
        ]
    title = repaired.get("title")
    if isinstance(title, str) and title:
        repaired["title"] = recapitalize_title(title)
    if repaired.get("year") is None:
        repaired["year"] = year_from_doi(doi, current_year)
    return repaired
