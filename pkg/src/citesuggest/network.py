"""Layout-agnostic citation-network payload for the graph views.

Nodes cover the selected publications, the top suggestions, the keyword
groups, and the top authors; edges link citations, keyword matches, and
authorships. Layout (cluster or timeline) is a client concern.
"""

from __future__ import annotations

from dataclasses import dataclass

from .authorship import AuthorRecord, author_initials
from .errors import NoYearData
from .keywords import KeywordSpec, count_keyword_matches
from .model import ScoreBreakdown, SuggestionEntry, SuggestionList, Tag


@dataclass(frozen=True)
class NetworkSettings:
    """Display bounds and toggles echoed back in every payload."""

    n_suggested: int = 20
    n_authors: int = 5
    show_keywords: bool = True
    show_authors: bool = True

    def __post_init__(self):
        if self.n_suggested < 0 or self.n_authors < 0:
            raise ValueError("display counts must be non-negative")

    def as_dict(self) -> dict:
        return {
            "n_suggested": self.n_suggested,
            "n_authors": self.n_authors,
            "show_keywords": self.show_keywords,
            "show_authors": self.show_authors,
        }


@dataclass(frozen=True)
class PubNode:
    doi: str
    selected: bool
    year: int | None
    score: ScoreBreakdown
    tags: frozenset[Tag]
    unread: bool

    def as_dict(self) -> dict:
        return {
            "doi": self.doi,
            "selected": self.selected,
            "year": self.year,
            "score": self.score.as_dict(),
            "tags": sorted(tag.value for tag in self.tags),
            "unread": self.unread,
        }


@dataclass(frozen=True)
class KeywordNode:
    group_index: int
    label: str

    def as_dict(self) -> dict:
        return {"group_index": self.group_index, "label": self.label}


@dataclass(frozen=True)
class AuthorNode:
    author_key: str
    initials: str
    score: int
    center_year: int | None

    def as_dict(self) -> dict:
        return {
            "author_key": self.author_key,
            "initials": self.initials,
            "score": self.score,
            "center_year": self.center_year,
        }


@dataclass(frozen=True)
class NetworkPayload:
    pub_nodes: tuple[PubNode, ...]
    keyword_nodes: tuple[KeywordNode, ...]
    author_nodes: tuple[AuthorNode, ...]
    citation_edges: tuple[tuple[str, str], ...]
    keyword_edges: tuple[tuple[int, str], ...]
    author_edges: tuple[tuple[str, str], ...]
    settings_echo: NetworkSettings

    def as_dict(self) -> dict:
        return {
            "pub_nodes": [node.as_dict() for node in self.pub_nodes],
            "keyword_nodes": [node.as_dict() for node in self.keyword_nodes],
            "author_nodes": [node.as_dict() for node in self.author_nodes],
            "citation_edges": [
                {"from": a, "to": b} for a, b in self.citation_edges
            ],
            "keyword_edges": [
                {"group_index": g, "doi": doi} for g, doi in self.keyword_edges
            ],
            "author_edges": [
                {"author_key": key, "doi": doi} for key, doi in self.author_edges
            ],
            "settings_echo": self.settings_echo.as_dict(),
        }


def build_network(
    selected: list[SuggestionEntry] | tuple[SuggestionEntry, ...],
    suggestions: SuggestionList,
    spec: KeywordSpec,
    ranked_authors: list[AuthorRecord] | tuple[AuthorRecord, ...],
    settings: NetworkSettings = NetworkSettings(),
    read_dois: frozenset[str] = frozenset(),
) -> NetworkPayload:
    """Assemble the payload; deterministic for identical inputs.

    Node order: selected publications sorted by DOI, then suggestions in
    rank order truncated to n_suggested. Citation edges require at least
    one selected endpoint; author edges point only at selected
    publications. All edge lists are deduplicated and sorted.
    """
    selected_entries = sorted(selected, key=lambda e: e.publication.doi)
    suggested_entries = suggestions.entries[: settings.n_suggested]

    pub_nodes: list[PubNode] = []
    emitted: dict[str, tuple[SuggestionEntry, bool]] = {}
    for entry, is_selected in [(e, True) for e in selected_entries] + [
        (e, False) for e in suggested_entries
    ]:
        doi = entry.publication.doi
        if doi in emitted:
            continue
        emitted[doi] = (entry, is_selected)
        pub_nodes.append(
            PubNode(
                doi=doi,
                selected=is_selected,
                year=entry.publication.year,
                score=entry.breakdown,
                tags=entry.tags,
                unread=doi not in read_dois,
            )
        )

    edges: set[tuple[str, str]] = set()
    for doi, (entry, is_selected) in emitted.items():
        pub = entry.publication
        for target in pub.citing:
            if target in emitted and (is_selected or emitted[target][1]):
                edges.add((doi, target))
        for source in pub.cited_by:
            if source in emitted and (is_selected or emitted[source][1]):
                edges.add((source, doi))

    keyword_nodes: list[KeywordNode] = []
    keyword_edges: set[tuple[int, str]] = set()
    if settings.show_keywords:
        keyword_nodes = [
            KeywordNode(group_index=g, label="|".join(group))
            for g, group in enumerate(spec.groups)
        ]
        for node in pub_nodes:
            _, matched = count_keyword_matches(
                emitted[node.doi][0].publication.title, spec
            )
            keyword_edges.update((g, node.doi) for g in matched)

    author_nodes: list[AuthorNode] = []
    author_edges: set[tuple[str, str]] = set()
    if settings.show_authors:
        selected_dois = {e.publication.doi for e in selected_entries}
        for record in list(ranked_authors)[: settings.n_authors]:
            try:
                center = author_center_year(record)
            except NoYearData:
                center = None
            author_nodes.append(
                AuthorNode(
                    author_key=record.key,
                    initials=author_initials(record.display_name),
                    score=record.score,
                    center_year=center,
                )
            )
            author_edges.update(
                (record.key, c.doi)
                for c in record.contributions
                if c.doi in selected_dois
            )

    return NetworkPayload(
        pub_nodes=tuple(pub_nodes),
        keyword_nodes=tuple(keyword_nodes),
        author_nodes=tuple(author_nodes),
        citation_edges=tuple(sorted(edges)),
        keyword_edges=tuple(sorted(keyword_edges)),
        author_edges=tuple(sorted(author_edges)),
        settings_echo=settings,
    )


def timeline_domain(payload: NetworkPayload) -> tuple[int, int]:
    """Inclusive year range over publication nodes with a known year."""
    years = [node.year for node in payload.pub_nodes if node.year is not None]
    if not years:
        raise NoYearData("no publication node has a known year")
    return min(years), max(years)


def author_center_year(record: AuthorRecord) -> int:
    """Center of the author's span of selected publications, half-up."""
    if record.year_span is None:
        raise NoYearData(f"author {record.key} has no dated contributions")
    first, last = record.year_span
    return (first + last + 1) // 2
