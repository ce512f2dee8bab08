"""Suggestion scoring: candidate set, score breakdowns, tags, ranking, filters."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InvalidFilter
from .index import CitationIndex
from .keywords import EMPTY_SPEC, KeywordSpec, count_keyword_matches
from .model import Publication, ScoreBreakdown, SuggestionEntry, SuggestionList, Tag

# "A term such as survey in the title" marks likely literature surveys;
# the list is deliberately short and can be overridden per call.
SURVEY_TERMS = ("survey", "review", "overview", "state of the art")

# Classification thresholds (strict comparisons; the boundary values
# themselves do not qualify).
HIGHLY_CITED_PER_YEAR = 10.0
UNNOTED_PER_YEAR = 1.0
SURVEY_REFERENCES = 100
SURVEY_REFERENCES_WITH_TERM = 50
NEW_WITHIN_YEARS = 2


def candidate_set(
    selected: frozenset[str] | set[str],
    excluded: frozenset[str] | set[str],
    index: CitationIndex,
) -> set[str]:
    """Every DOI linked by citation to at least one selected publication.

    Selected and excluded DOIs are removed from the result.
    """
    selected = frozenset(selected)
    excluded = frozenset(excluded)
    if selected & excluded:
        raise ValueError("selected and excluded sets overlap")
    linked: set[str] = set()
    for doi in selected:
        linked |= index.citing(doi)
        linked |= index.cited_by(doi)
    return linked - selected - excluded


def score_candidate(
    doi: str,
    selected: frozenset[str] | set[str],
    index: CitationIndex,
    spec: KeywordSpec = EMPTY_SPEC,
    boost_enabled: bool = True,
    title: str = "",
) -> ScoreBreakdown:
    """Score a non-selected publication against the current selection.

    Candidates whose metadata is not loaded yet score with an empty title
    and therefore boost 0.
    """
    selected = frozenset(selected)
    outgoing = len(index.citing(doi) & selected)
    incoming = len(index.cited_by(doi) & selected)
    boost, _ = count_keyword_matches(title, spec)
    return ScoreBreakdown.compute(outgoing, incoming, boost, boost_enabled)


def score_selected(
    doi: str,
    selected: frozenset[str] | set[str],
    index: CitationIndex,
    spec: KeywordSpec = EMPTY_SPEC,
    boost_enabled: bool = True,
    title: str = "",
) -> ScoreBreakdown:
    """Centrality score of a selected publication.

    Links are counted against the other selected publications, plus one
    virtual self-citation on the incoming side so the score is never
    zero.
    """
    others = frozenset(selected) - {doi}
    outgoing = len(index.citing(doi) & others)
    incoming = len(index.cited_by(doi) & others) + 1
    boost, _ = count_keyword_matches(title, spec)
    return ScoreBreakdown.compute(outgoing, incoming, boost, boost_enabled)


def classify(
    pub: Publication,
    current_year: int,
    survey_terms: tuple[str, ...] = SURVEY_TERMS,
) -> frozenset[Tag]:
    """Characterization tags from citation statistics and metadata.

    Citations per year use age = current_year - year + 1, so a
    current-year publication has age 1. Publications with unknown year
    get neither the per-year tags nor NEW.
    """
    tags: set[Tag] = set()
    if pub.year is not None:
        age = max(current_year - pub.year + 1, 1)
        citations_per_year = pub.n_cited_by / age
        if citations_per_year > HIGHLY_CITED_PER_YEAR:
            tags.add(Tag.HIGHLY_CITED)
        if citations_per_year < UNNOTED_PER_YEAR:
            tags.add(Tag.UNNOTED)
        if is_new_year(pub.year, current_year):
            tags.add(Tag.NEW)
    title = pub.title.casefold()
    if pub.n_citing > SURVEY_REFERENCES or (
        pub.n_citing > SURVEY_REFERENCES_WITH_TERM
        and any(term in title for term in survey_terms)
    ):
        tags.add(Tag.LITERATURE_SURVEY)
    return frozenset(tags)


def is_new_year(year: int | None, current_year: int) -> bool:
    """Published at most NEW_WITHIN_YEARS calendar years before."""
    return year is not None and year >= current_year - NEW_WITHIN_YEARS


def rank_key(entry: SuggestionEntry) -> tuple[int, int, int, str]:
    b = entry.breakdown
    return (-b.score, -b.incoming, -b.outgoing, entry.publication.doi)


def rank(
    entries: list[SuggestionEntry] | tuple[SuggestionEntry, ...],
    total_candidates: int | None = None,
) -> SuggestionList:
    """Deterministic total order: score desc, incoming desc, outgoing
    desc, DOI asc."""
    ordered = tuple(sorted(entries, key=rank_key))
    total = len(ordered) if total_candidates is None else total_candidates
    return SuggestionList(
        entries=ordered, total_candidates=total, loaded_count=len(ordered)
    )


def boost_glyph_level(boost: int) -> int:
    """Chevron count for the score glyph: one per matched group, capped at 3."""
    return min(boost, 3)


@dataclass(frozen=True)
class FilterSpec:
    """Restrictions on the suggestion list; all criteria are optional."""

    title_query: str | None = None
    year_min: int | None = None
    year_max: int | None = None
    tag: Tag | None = None

    def __post_init__(self):
        if (
            self.year_min is not None
            and self.year_max is not None
            and self.year_min > self.year_max
        ):
            raise InvalidFilter(f"year_min {self.year_min} > year_max {self.year_max}")

    def is_empty(self) -> bool:
        return (
            self.title_query is None
            and self.year_min is None
            and self.year_max is None
            and self.tag is None
        )

    def matches(self, entry: SuggestionEntry) -> bool:
        pub = entry.publication
        if self.title_query is not None:
            if self.title_query.casefold() not in pub.title.casefold():
                return False
        if self.year_min is not None or self.year_max is not None:
            # A year filter is an explicit constraint: entries with
            # unknown year are dropped rather than passed through.
            if pub.year is None:
                return False
            if self.year_min is not None and pub.year < self.year_min:
                return False
            if self.year_max is not None and pub.year > self.year_max:
                return False
        if self.tag is not None and self.tag not in entry.tags:
            return False
        return True


def apply_filter(suggestions: SuggestionList, spec: FilterSpec) -> SuggestionList:
    """Order-preserving subsequence of the list; updates the counts."""
    if spec.is_empty():
        return suggestions
    kept = tuple(entry for entry in suggestions.entries if spec.matches(entry))
    return replace(suggestions, entries=kept, loaded_count=len(kept))
