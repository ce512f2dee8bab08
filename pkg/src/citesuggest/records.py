"""Merged source records: what the gateway fetches, caches, and serves."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .model import Publication


@dataclass(frozen=True)
class SourceRecord:
    """One publication's merged data from both sources.

    citing/cited_by are stored sorted so serialization is bit-stable.
    citations_skipped_large means link retrieval was skipped because the
    incoming-citation count reached the configured threshold; the totals
    stay populated.
    """

    doi: str
    metadata: dict = field(default_factory=dict)
    citing: tuple[str, ...] = ()
    cited_by: tuple[str, ...] = ()
    citing_total: int = 0
    cited_by_total: int = 0
    fetched_at: float = 0.0
    metadata_ok: bool = False
    citations_ok: bool = False
    citations_skipped_large: bool = False
    served_stale: bool = False

    def __post_init__(self):
        object.__setattr__(self, "citing", tuple(sorted(set(self.citing))))
        object.__setattr__(self, "cited_by", tuple(sorted(set(self.cited_by))))

    def to_dict(self) -> dict:
        return {
            "doi": self.doi,
            "metadata": self.metadata,
            "citing": list(self.citing),
            "cited_by": list(self.cited_by),
            "citing_total": self.citing_total,
            "cited_by_total": self.cited_by_total,
            "fetched_at": self.fetched_at,
            "metadata_ok": self.metadata_ok,
            "citations_ok": self.citations_ok,
            "citations_skipped_large": self.citations_skipped_large,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SourceRecord":
        return cls(
            doi=data["doi"],
            metadata=data.get("metadata") or {},
            citing=tuple(data.get("citing") or ()),
            cited_by=tuple(data.get("cited_by") or ()),
            citing_total=data.get("citing_total", 0),
            cited_by_total=data.get("cited_by_total", 0),
            fetched_at=data.get("fetched_at", 0.0),
            metadata_ok=data.get("metadata_ok", False),
            citations_ok=data.get("citations_ok", False),
            citations_skipped_large=data.get("citations_skipped_large", False),
        )

    def as_stale(self) -> "SourceRecord":
        return replace(self, served_stale=True)

    def to_publication(self) -> Publication:
        metadata = self.metadata
        return Publication(
            doi=self.doi,
            title=metadata.get("title") or "",
            authors=tuple(metadata.get("authors") or ()),
            year=metadata.get("year"),
            venue=metadata.get("venue"),
            abstract=metadata.get("abstract"),
            orcids=tuple(metadata.get("orcids") or ()),
            citing=frozenset(self.citing),
            cited_by=frozenset(self.cited_by),
            n_citing=self.citing_total,
            n_cited_by=self.cited_by_total,
            references_known=self.citations_ok and not self.citations_skipped_large,
        )
