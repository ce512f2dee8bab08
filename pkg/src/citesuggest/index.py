"""In-memory citation index: doi -> (citing set, cited-by set).

Built from whatever link sets are materialized on publications and
symmetrized, so an edge is visible from both endpoints no matter which
side reported it. Indexes are treated as immutable snapshots once built;
updates replace the whole snapshot.
"""

from __future__ import annotations

from collections.abc import Iterable

from .model import Publication

_EMPTY: frozenset[str] = frozenset()


class CitationIndex:
    """Directed citation graph; edge (a, b) means "a cites b"."""

    def __init__(self):
        self._out: dict[str, set[str]] = {}
        self._in: dict[str, set[str]] = {}

    @classmethod
    def from_publications(cls, publications: Iterable[Publication]) -> "CitationIndex":
        index = cls()
        for pub in publications:
            index._touch(pub.doi)
            for target in pub.citing:
                index.add_edge(pub.doi, target)
            for source in pub.cited_by:
                index.add_edge(source, pub.doi)
        return index

    def _touch(self, doi: str):
        self._out.setdefault(doi, set())
        self._in.setdefault(doi, set())

    def add_edge(self, citing_doi: str, cited_doi: str):
        if citing_doi == cited_doi:
            return
        self._touch(citing_doi)
        self._touch(cited_doi)
        self._out[citing_doi].add(cited_doi)
        self._in[cited_doi].add(citing_doi)

    def citing(self, doi: str) -> frozenset[str]:
        """DOIs that ``doi`` cites (outgoing references)."""
        links = self._out.get(doi)
        return frozenset(links) if links else _EMPTY

    def cited_by(self, doi: str) -> frozenset[str]:
        """DOIs citing ``doi`` (incoming citations)."""
        links = self._in.get(doi)
        return frozenset(links) if links else _EMPTY

    def cites(self, citing_doi: str, cited_doi: str) -> bool:
        return cited_doi in self._out.get(citing_doi, _EMPTY)

    def nodes(self) -> frozenset[str]:
        return frozenset(self._out)

    def edges(self) -> list[tuple[str, str]]:
        """All (citing, cited) pairs, sorted for determinism."""
        return sorted(
            (source, target)
            for source, targets in self._out.items()
            for target in targets
        )
