"""Derived-artifact pipeline: committed session state in, suggestion
ranking, author ranking, and network payload out.

Stages: candidate discovery over the selected publications' links,
metadata loading for the top window of the base ranking, scoring and
characterization, author disambiguation and ranking, network assembly.
Every stage is deterministic for identical inputs, which makes whole
service responses byte-reproducible on fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..authorship import (
    DEFAULT_CONFIG,
    AuthorRecord,
    AuthorScoreConfig,
    disambiguate,
    rank_authors,
)
from ..gateway import SourceGateway
from ..index import CitationIndex
from ..keywords import EMPTY_SPEC, KeywordSpec, parse_keyword_spec
from ..model import Publication, ScoreBreakdown, SuggestionEntry, SuggestionList
from ..network import NetworkPayload, NetworkSettings, build_network
from ..scoring import candidate_set, classify, rank, score_candidate, score_selected
from ..session import SessionState


@dataclass(frozen=True)
class DerivedState:
    """Everything recomputed from a committed state, as one atomic unit."""

    spec: KeywordSpec
    current_year: int
    selected_entries: tuple[SuggestionEntry, ...]
    suggestions: SuggestionList
    candidate_order: tuple[str, ...]
    author_records: tuple[AuthorRecord, ...]
    authors_default: tuple[AuthorRecord, ...]
    network: NetworkPayload
    load_errors: tuple[tuple[str, str], ...]

    @property
    def selected_scores(self) -> dict[str, ScoreBreakdown]:
        return {e.publication.doi: e.breakdown for e in self.selected_entries}

    def rank_authors_with(self, config: AuthorScoreConfig) -> list[AuthorRecord]:
        if config == DEFAULT_CONFIG:
            return list(self.authors_default)
        return rank_authors(
            list(self.author_records), self.selected_scores, config, self.current_year
        )


EMPTY_DERIVED = DerivedState(
    spec=EMPTY_SPEC,
    current_year=0,
    selected_entries=(),
    suggestions=SuggestionList(),
    candidate_order=(),
    author_records=(),
    authors_default=(),
    network=build_network([], SuggestionList(), EMPTY_SPEC, []),
    load_errors=(),
)


def recompute(
    state: SessionState, gateway: SourceGateway, window_count: int = 1
) -> DerivedState:
    """Run the full pipeline for a committed state.

    Candidate metadata is loaded only for the leading window (window size
    times window_count) of the boost-free base ranking; the rest stay
    link-only until the client asks for more. Per-DOI load failures do
    not abort the run, they are reported in load_errors.
    """
    spec = parse_keyword_spec(state.keyword_text)
    current_year = gateway.config.effective_year()
    selected_set = frozenset(state.selected)
    errors: dict[str, str] = {}

    selected_pubs: dict[str, Publication] = {}
    if state.selected:
        results = gateway.load_suggestion_metadata(
            list(state.selected), 0, limit=len(state.selected)
        )
        for result in results:
            if result.publication is not None:
                selected_pubs[result.doi] = result.publication
            if result.error:
                errors[result.doi] = result.error
            elif result.partial:
                errors[result.doi] = "partial"

    seed_index = CitationIndex.from_publications(selected_pubs.values())
    candidates = candidate_set(selected_set, frozenset(state.excluded), seed_index)

    # Window selection ignores keyword boosts: titles of unloaded
    # candidates are unknown, so the base ranking must not depend on them.
    base: dict[str, ScoreBreakdown] = {
        doi: score_candidate(doi, selected_set, seed_index, boost_enabled=False)
        for doi in candidates
    }
    candidate_order = tuple(
        sorted(
            candidates,
            key=lambda d: (-base[d].score, -base[d].incoming, -base[d].outgoing, d),
        )
    )

    window = gateway.config.window_size * max(window_count, 1)
    loaded_pubs: dict[str, Publication] = {}
    if candidate_order:
        for result in gateway.load_suggestion_metadata(
            list(candidate_order), 0, limit=window
        ):
            if result.publication is not None:
                loaded_pubs[result.doi] = result.publication
            if result.error:
                errors[result.doi] = result.error
            elif result.partial:
                errors[result.doi] = "partial"

    full_index = CitationIndex.from_publications(
        list(selected_pubs.values()) + list(loaded_pubs.values())
    )

    entries = []
    for doi in candidate_order:
        publication = loaded_pubs.get(doi)
        if publication is None:
            continue
        breakdown = score_candidate(
            doi,
            selected_set,
            full_index,
            spec,
            state.boost_enabled,
            publication.title,
        )
        entries.append(
            SuggestionEntry(publication, breakdown, classify(publication, current_year))
        )
    suggestions = rank(entries, total_candidates=len(candidates))

    selected_entries = []
    for doi in state.selected:
        publication = selected_pubs.get(doi)
        if publication is None:
            continue
        breakdown = score_selected(
            doi,
            selected_set,
            full_index,
            spec,
            state.boost_enabled,
            publication.title,
        )
        selected_entries.append(
            SuggestionEntry(publication, breakdown, classify(publication, current_year))
        )

    author_records = tuple(disambiguate(list(selected_pubs.values()), spec))
    selected_scores = {e.publication.doi: e.breakdown for e in selected_entries}
    authors_default = tuple(
        rank_authors(list(author_records), selected_scores, DEFAULT_CONFIG, current_year)
    )

    network = build_network(
        selected_entries,
        suggestions,
        spec,
        authors_default,
        NetworkSettings(),
        read_dois=state.read_dois,
    )

    return DerivedState(
        spec=spec,
        current_year=current_year,
        selected_entries=tuple(selected_entries),
        suggestions=suggestions,
        candidate_order=candidate_order,
        author_records=author_records,
        authors_default=authors_default,
        network=network,
        load_errors=tuple(sorted(errors.items())),
    )
