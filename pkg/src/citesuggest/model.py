"""Shared domain types: publications, score breakdowns, characterization tags."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Tag(str, enum.Enum):
    """Heuristic characterization of a publication.

    Serialized as lower-snake strings in filters, JSON payloads, and CLI
    flags.
    """

    HIGHLY_CITED = "highly_cited"
    LITERATURE_SURVEY = "literature_survey"
    NEW = "new"
    UNNOTED = "unnoted"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class ScoreBreakdown:
    """Per-publication score explanation.

    outgoing: citation links to selected publications
    incoming: citation links from selected publications (for selected
        publications this includes the virtual self-citation)
    boost: number of matched keyword groups
    score: final value, (outgoing + incoming) * 2**boost when the boost is
        enabled, plain sum otherwise
    """

    outgoing: int
    incoming: int
    boost: int
    score: int

    @classmethod
    def compute(
        cls, outgoing: int, incoming: int, boost: int, boost_enabled: bool = True
    ) -> "ScoreBreakdown":
        base = outgoing + incoming
        score = base * 2**boost if boost_enabled else base
        return cls(outgoing=outgoing, incoming=incoming, boost=boost, score=score)

    def as_dict(self) -> dict[str, int]:
        """Wire form used by the HTTP API and CLI JSON output."""
        return {"s": self.score, "o": self.outgoing, "i": self.incoming, "b": self.boost}


@dataclass(frozen=True)
class Publication:
    """A publication keyed by DOI, with metadata and citation-link sets.

    ``citing`` holds outgoing references, ``cited_by`` incoming citations;
    both only the locally materialized part. ``n_citing``/``n_cited_by``
    are the source-reported totals and may exceed the local sets.
    ``references_known`` is False when the source data lacks outgoing
    references entirely (surfaced to users, since it silently depresses
    suggestion quality).
    """

    doi: str
    title: str = ""
    authors: tuple[str, ...] = ()
    year: int | None = None
    venue: str | None = None
    abstract: str | None = None
    orcids: tuple[str | None, ...] = ()
    citing: frozenset[str] = frozenset()
    cited_by: frozenset[str] = frozenset()
    n_citing: int = 0
    n_cited_by: int = 0
    references_known: bool = True

    def __post_init__(self):
        # No stored self-loops, and totals never undercount the
        # materialized sets.
        citing = frozenset(self.citing) - {self.doi}
        cited_by = frozenset(self.cited_by) - {self.doi}
        object.__setattr__(self, "citing", citing)
        object.__setattr__(self, "cited_by", cited_by)
        object.__setattr__(self, "authors", tuple(self.authors))
        object.__setattr__(self, "orcids", tuple(self.orcids))
        object.__setattr__(self, "n_citing", max(self.n_citing, len(citing)))
        object.__setattr__(self, "n_cited_by", max(self.n_cited_by, len(cited_by)))

    def orcid_for(self, author_index: int) -> str | None:
        if 0 <= author_index < len(self.orcids):
            return self.orcids[author_index]
        return None


@dataclass(frozen=True)
class SuggestionEntry:
    """One ranked suggestion: the publication, its score, and its tags."""

    publication: Publication
    breakdown: ScoreBreakdown
    tags: frozenset[Tag] = frozenset()


@dataclass(frozen=True)
class SuggestionList:
    """Ranked suggestions plus candidate-pool statistics.

    total_candidates counts every candidate before truncation;
    loaded_count those whose metadata has been loaded (only these appear
    in ``entries``).
    """

    entries: tuple[SuggestionEntry, ...] = ()
    total_candidates: int = 0
    loaded_count: int = 0
