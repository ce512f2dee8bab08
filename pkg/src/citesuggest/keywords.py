"""Boost-keyword specification: parsing, rendering, and title matching.

The text syntax is the wire format used in session files, CLI flags, and
the HTTP API: keywords separated by commas, alternatives for one keyword
separated by a vertical bar, e.g. ``"CIT, VISUAL, MAP, PUBLI|LITERAT"``.
Matching is case-insensitive exact substring matching, so specs are
canonically uppercase and users are expected to provide word stems.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class KeywordSpec:
    """Ordered keyword groups; each group is a tuple of alternative stems."""

    groups: tuple[tuple[str, ...], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.groups)

    def group_label(self, index: int) -> str:
        return "|".join(self.groups[index])


EMPTY_SPEC = KeywordSpec()


def parse_keyword_spec(text: str) -> KeywordSpec:
    """Parse the comma/vertical-bar syntax into a KeywordSpec.

    Tolerant: tokens are trimmed and uppercased, empty tokens and empty
    groups are dropped, order is preserved. Empty input yields the empty
    spec.
    """
    groups = []
    for chunk in text.split(","):
        alternatives = tuple(
            token.strip().upper() for token in chunk.split("|") if token.strip()
        )
        if alternatives:
            groups.append(alternatives)
    return KeywordSpec(tuple(groups))


def render_keyword_spec(spec: KeywordSpec) -> str:
    """Canonical text form; parse(render(spec)) == spec."""
    return ", ".join("|".join(group) for group in spec.groups)


def count_keyword_matches(title: str, spec: KeywordSpec) -> tuple[int, list[int]]:
    """Number of keyword groups matching the title, and which ones.

    A group matches iff any of its alternatives occurs as a
    case-insensitive substring; each group counts at most once no matter
    how often it occurs.
    """
    folded = title.casefold()
    matched = [
        index
        for index, group in enumerate(spec.groups)
        if any(alt.casefold() in folded for alt in group)
    ]
    return len(matched), matched


@dataclass(frozen=True)
class MatchSpan:
    """Half-open character range [start, end) matched by group_index."""

    start: int
    end: int
    group_index: int


def _fold_with_origin(text: str) -> tuple[str, list[int]]:
    # Case folding may expand characters (ß -> ss); keep a map from each
    # folded character back to its original index so spans stay aligned.
    folded: list[str] = []
    origin: list[int] = []
    for index, char in enumerate(text):
        for folded_char in char.casefold():
            folded.append(folded_char)
            origin.append(index)
    return "".join(folded), origin


def match_spans(text: str, spec: KeywordSpec) -> list[MatchSpan]:
    """All non-overlapping occurrences of any alternative, left to right.

    Greedy scan: at each position the earliest-starting match wins; on a
    tie the longest alternative, then the lowest group index. Spans are
    reported in original-text coordinates and drive title highlighting in
    lists, search results, and the network view.
    """
    folded, origin = _fold_with_origin(text)
    # Longest first so ties at one start position prefer the longer
    # highlight; group order breaks remaining ties.
    alternatives = [
        (alt.casefold(), group_index)
        for group_index, group in enumerate(spec.groups)
        for alt in group
    ]
    alternatives.sort(key=lambda item: (-len(item[0]), item[1]))
    spans: list[MatchSpan] = []
    position = 0
    while position < len(folded):
        best_start = -1
        best_end = -1
        best_group = -1
        for needle, group_index in alternatives:
            start = folded.find(needle, position)
            if start != -1 and (best_start == -1 or start < best_start):
                best_start, best_end, best_group = start, start + len(needle), group_index
        if best_start == -1:
            break
        spans.append(MatchSpan(origin[best_start], origin[best_end - 1] + 1, best_group))
        position = best_end
    return spans
