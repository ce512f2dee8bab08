"""BibTeX export for the selected publications."""

from __future__ import annotations

import re

from .authorship import unify_name
from .model import Publication
from .repair import SMALL_WORDS

# characters with reserved meaning that must be backslash-escaped in values
ESCAPED_CHARS = "{}%&#_"

_ALNUM = re.compile(r"[^0-9a-z]+")


def escape_value(text: str) -> str:
    for ch in ESCAPED_CHARS:
        text = text.replace(ch, "\\" + ch)
    return text


def _surname_part(publication: Publication) -> str:
    if not publication.authors:
        return ""
    unified = unify_name(publication.authors[0])
    surname = unified.partition(",")[0]
    return _ALNUM.sub("", surname)


def _title_part(title: str) -> str:
    for word in title.split():
        cleaned = _ALNUM.sub("", word.lower())
        if cleaned and cleaned not in SMALL_WORDS:
            return cleaned
    return ""


def citation_key(publication: Publication) -> str:
    """Surname of the first author, year, first significant title word."""
    parts = [
        _surname_part(publication),
        str(publication.year) if publication.year is not None else "",
        _title_part(publication.title),
    ]
    key = "".join(parts)
    return key or "ref"


def _entry_fields(publication: Publication) -> list[tuple[str, str]]:
    fields: list[tuple[str, str]] = []
    if publication.authors:
        fields.append(("author", escape_value(" and ".join(publication.authors))))
    if publication.title:
        fields.append(("title", escape_value(publication.title)))
    if publication.year is not None:
        fields.append(("year", str(publication.year)))
    if publication.venue:
        fields.append(("journal", escape_value(publication.venue)))
    fields.append(("doi", escape_value(publication.doi)))
    return fields


def export_bibtex(publications: list[Publication]) -> str:
    """Render entries in the given order.

    Keys are deduplicated: every member of a colliding group gets a
    letter suffix in order of appearance; unique keys stay bare.
    """
    base_keys = [citation_key(p) for p in publications]
    collisions = {k for k in base_keys if base_keys.count(k) > 1}
    seen: dict[str, int] = {}
    entries = []
    for publication, base in zip(publications, base_keys):
        if base in collisions:
            index = seen.get(base, 0)
            seen[base] = index + 1
            key = base + _letter_suffix(index)
        else:
            key = base
        kind = "article" if publication.venue else "misc"
        lines = [f"@{kind}{{{key},"]
        fields = _entry_fields(publication)
        for name, value in fields[:-1]:
            lines.append(f"  {name} = {{{value}}},")
        name, value = fields[-1]
        lines.append(f"  {name} = {{{value}}}")
        lines.append("}")
        entries.append("\n".join(lines))
    return "\n\n".join(entries) + ("\n" if entries else "")


def _letter_suffix(index: int) -> str:
    # a, b, ..., z, aa, ab, ... for pathological collision counts
    letters = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        letters = chr(ord("a") + rem) + letters
    return letters
