"""Independent brute-force reference implementations used as test oracles.

Everything here works from a flat edge list and deliberately shares no
code with the package: candidates are found by scanning all nodes,
link counts by scanning every edge, ranking by an explicitly spelled-out
composite sort key.
"""

from __future__ import annotations


def naive_candidates(
    edges: list[tuple[str, str]],
    nodes: set[str],
    selected: set[str],
    excluded: set[str],
) -> set[str]:
    """All nodes with any citation link to a selected one, by full scan."""
    result = set()
    for node in nodes:
        for citing, cited in edges:
            if citing == node and cited in selected:
                result.add(node)
            if cited == node and citing in selected:
                result.add(node)
    return result - selected - excluded


def naive_breakdown(
    doi: str,
    edges: list[tuple[str, str]],
    selected: set[str],
    titles: dict[str, str],
    groups: list[list[str]],
    boost_enabled: bool,
    is_selected: bool = False,
) -> tuple[int, int, int, int]:
    """(outgoing, incoming, boost, score) by scanning every edge."""
    others = selected - {doi} if is_selected else selected
    outgoing = 0
    incoming = 0
    for citing, cited in edges:
        if citing == doi and cited in others:
            outgoing += 1
        if cited == doi and citing in others:
            incoming += 1
    if is_selected:
        incoming += 1
    title = titles.get(doi, "").upper()
    boost = sum(1 for group in groups if any(alt.upper() in title for alt in group))
    base = outgoing + incoming
    score = base * (2**boost) if boost_enabled else base
    return outgoing, incoming, boost, score


def naive_rank_order(breakdowns: dict[str, tuple[int, int, int, int]]) -> list[str]:
    """DOIs sorted by score desc, incoming desc, outgoing desc, doi asc."""
    return sorted(
        breakdowns,
        key=lambda d: (
            -breakdowns[d][3],
            -breakdowns[d][1],
            -breakdowns[d][0],
            d,
        ),
    )


def naive_match_spans(text: str, alternatives: list[tuple[str, int]]) -> list[tuple[int, int, int]]:
    """Exhaustive left-to-right non-overlapping scan on lowercased text.

    alternatives: (needle, group_index) pairs. At each position every
    candidate start is probed by direct string comparison; earliest start
    wins, then longest needle, then lowest group index.
    """
    lowered = text.lower()
    spans: list[tuple[int, int, int]] = []
    position = 0
    while position < len(lowered):
        candidates = []
        for needle, group_index in alternatives:
            lowered_needle = needle.lower()
            for start in range(position, len(lowered) - len(lowered_needle) + 1):
                if lowered[start : start + len(lowered_needle)] == lowered_needle:
                    candidates.append((start, -len(lowered_needle), group_index))
                    break
        if not candidates:
            break
        start, neg_len, group_index = min(candidates)
        spans.append((start, start - neg_len, group_index))
        position = start - neg_len
    return spans


def naive_network_edges(
    links: dict[str, tuple[set[str], set[str]]],
    emitted: set[str],
    selected: set[str],
) -> set[tuple[str, str]]:
    """All (citing, cited) pairs among emitted nodes with at least one
    selected endpoint, by checking every ordered pair."""
    result = set()
    for a in emitted:
        for b in emitted:
            if a == b or (a not in selected and b not in selected):
                continue
            citing_a, cited_by_a = links.get(a, (set(), set()))
            citing_b, cited_by_b = links.get(b, (set(), set()))
            if b in citing_a or a in cited_by_b:
                result.add((a, b))
    return result


def naive_parse_bibtex(text: str) -> list[tuple[str, str, dict[str, str]]]:
    """Character-walking parser: (entry type, key, {field: raw value}).

    Brace depth is tracked by hand; a backslash protects the next
    character from counting. Field values keep their escape sequences,
    see naive_bibtex_unescape.
    """
    entries: list[tuple[str, str, dict[str, str]]] = []
    i = 0
    while True:
        at = text.find("@", i)
        if at == -1:
            break
        open_brace = text.find("{", at)
        kind = text[at + 1 : open_brace].strip().lower()
        comma = text.find(",", open_brace)
        key = text[open_brace + 1 : comma].strip()
        fields: dict[str, str] = {}
        depth = 1
        j = comma + 1
        start = j
        while depth > 0:
            ch = text[j]
            if ch == "\\":
                j += 2
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    _naive_add_field(fields, text[start:j])
            elif ch == "," and depth == 1:
                _naive_add_field(fields, text[start:j])
                start = j + 1
            j += 1
        entries.append((kind, key, fields))
        i = j
    return entries


def _naive_add_field(fields: dict[str, str], chunk: str) -> None:
    if "=" not in chunk:
        return
    name, _, value = chunk.partition("=")
    value = value.strip()
    if value.startswith("{") and value.endswith("}"):
        value = value[1:-1]
    fields[name.strip().lower()] = value


def naive_bibtex_unescape(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        if value[i] == "\\" and i + 1 < len(value) and value[i + 1] in "{}%&#_":
            out.append(value[i + 1])
            i += 2
        else:
            out.append(value[i])
            i += 1
    return "".join(out)
