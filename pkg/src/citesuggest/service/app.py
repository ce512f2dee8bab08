"""HTTP surface: session lifecycle, search, suggestions, authors,
network payloads, and exports over JSON."""

from __future__ import annotations

import json
from contextlib import asynccontextmanager
from typing import Callable

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .. import __version__
from ..authorship import DEFAULT_CONFIG, AuthorRecord, AuthorScoreConfig, author_initials
from ..bibtex import export_bibtex
from ..doi import detect_dois
from ..errors import (
    CiteSuggestError,
    InvalidFilter,
    InvalidQuery,
    InvalidSessionFile,
    MalformedDoi,
    NotFound,
    PartialData,
    SourceUnavailable,
)
from ..gateway import SourceGateway
from ..keywords import KeywordSpec, match_spans
from ..model import Publication, SuggestionEntry, Tag
from ..network import NetworkSettings, build_network
from ..scoring import FilterSpec, apply_filter, boost_glyph_level
from ..session import SessionState, commit_update, load_session, save_session
from .config import ServiceConfig, build_gateway
from .pipeline import recompute
from .store import SessionHandle, SessionStore, Snapshot

_ERROR_STATUS: dict[type, int] = {
    MalformedDoi: 400,
    InvalidQuery: 400,
    InvalidFilter: 400,
    InvalidSessionFile: 400,
    NotFound: 404,
    SourceUnavailable: 502,
}


class ApiError(Exception):
    def __init__(self, status: int, kind: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.kind = kind
        self.detail = detail


class CreateSessionBody(BaseModel):
    document: dict | None = None


class SearchBody(BaseModel):
    q: str


class SelectBody(BaseModel):
    dois: list[str]


class StageBody(BaseModel):
    include: list[str] = []
    exclude: list[str] = []


class KeywordsBody(BaseModel):
    text: str
    boost_enabled: bool = True


class ReadBody(BaseModel):
    doi: str


def create_app(
    config: ServiceConfig | None = None, gateway: SourceGateway | None = None
) -> FastAPI:
    """Application factory; a prebuilt gateway may be injected for tests."""
    config = config or ServiceConfig()
    gateway = gateway or build_gateway(config)
    store = SessionStore()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        gateway.close()

    app = FastAPI(title="citesuggest", version=__version__, lifespan=lifespan)

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"type": exc.kind, "detail": exc.detail}},
        )

    @app.exception_handler(CiteSuggestError)
    async def handle_domain_error(request: Request, exc: CiteSuggestError):
        status = _ERROR_STATUS.get(type(exc), 400)
        return JSONResponse(
            status_code=status,
            content={"error": {"type": type(exc).__name__, "detail": str(exc)}},
        )

    def get_handle(session_id: str) -> SessionHandle:
        handle = store.get(session_id)
        if handle is None:
            raise ApiError(404, "UnknownSession", f"no session {session_id!r}")
        return handle

    def apply_change(
        handle: SessionHandle,
        mutate: Callable[[SessionState], SessionState],
        grow_window: bool = False,
    ) -> Snapshot:
        """Serialize writers per session; recompute outside the read lock
        so snapshot reads stay fast, then publish state and derived
        artifacts together."""
        with handle.write_lock:
            with handle.lock:
                new_state = mutate(handle.state)
                if grow_window:
                    handle.window_count += 1
                elif new_state == handle.state:
                    return handle.snapshot()
                handle.state = new_state
                handle.revision += 1
                revision = handle.revision
                window_count = handle.window_count
            derived = recompute(new_state, gateway, window_count)
            with handle.lock:
                handle.derived = derived
                handle.derived_revision = revision
            return handle.snapshot()

    # -- payload builders ----------------------------------------------------

    def publication_payload(publication: Publication) -> dict:
        return {
            "doi": publication.doi,
            "title": publication.title,
            "authors": list(publication.authors),
            "year": publication.year,
            "venue": publication.venue,
            "abstract": publication.abstract,
            "n_citing": publication.n_citing,
            "n_cited_by": publication.n_cited_by,
            "references_known": publication.references_known,
        }

    def span_payload(title: str, spec: KeywordSpec) -> list[dict]:
        return [
            {"start": span.start, "end": span.end, "group_index": span.group_index}
            for span in match_spans(title, spec)
        ]

    def entry_payload(
        entry: SuggestionEntry, spec: KeywordSpec, read_dois: frozenset[str]
    ) -> dict:
        publication = entry.publication
        return {
            "publication": publication_payload(publication),
            "breakdown": entry.breakdown.as_dict(),
            "glyph_level": boost_glyph_level(entry.breakdown.boost),
            "tags": sorted(tag.value for tag in entry.tags),
            "unread": publication.doi not in read_dois,
            "title_spans": span_payload(publication.title, spec),
        }

    def author_payload(record: AuthorRecord) -> dict:
        return {
            "key": record.key,
            "display_name": record.display_name,
            "initials": author_initials(record.display_name),
            "orcid": record.orcid,
            "score": record.score,
            "contribution_count": len(record.contributions),
            "dois": [c.doi for c in record.contributions],
            "year_span": list(record.year_span) if record.year_span else None,
            "keyword_hits": sorted(record.keyword_hits),
            "name_variants": sorted(record.name_variants),
            "coauthors": sorted(record.coauthors),
        }

    def session_payload(snapshot: Snapshot) -> dict:
        state = snapshot.state
        derived = snapshot.derived
        return {
            "id": snapshot.id,
            "revision": snapshot.revision,
            "derived_revision": snapshot.derived_revision,
            "selected": list(state.selected),
            "excluded": list(state.excluded),
            "keywords": state.keyword_text,
            "boost_enabled": state.boost_enabled,
            "staged": {
                "include": sorted(state.staged_inclusions),
                "exclude": sorted(state.staged_exclusions),
            },
            "read": sorted(state.read_dois),
            "selected_entries": [
                entry_payload(entry, derived.spec, state.read_dois)
                for entry in derived.selected_entries
            ],
            "suggestions": {
                "total_candidates": derived.suggestions.total_candidates,
                "loaded_count": derived.suggestions.loaded_count,
            },
            "load_errors": [
                {"doi": doi, "error": kind} for doi, kind in derived.load_errors
            ],
        }

    # -- session lifecycle -----------------------------------------------------

    @app.get("/")
    def root():
        return {"service": "citesuggest", "version": __version__}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody | None = None):
        handle = store.create()
        if body is not None and body.document is not None:
            state = load_session(json.dumps(body.document))
            return session_payload(apply_change(handle, lambda _: state))
        return session_payload(handle.snapshot())

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_payload(get_handle(session_id).snapshot())

    # -- search and selection ---------------------------------------------------

    @app.post("/sessions/{session_id}/search")
    def search(session_id: str, body: SearchBody):
        get_handle(session_id)
        query = body.q.strip()
        if not query:
            raise InvalidQuery("empty search query")
        dois = detect_dois(query)
        if dois:
            results = []
            for doi in dois:
                results.append(_resolve_publication(doi))
            return {"kind": "doi", "results": results}
        token_spec = KeywordSpec(
            groups=tuple((token.upper(),) for token in query.split())
        )
        results = []
        for publication in gateway.search(query):
            results.append(
                {
                    "publication": publication_payload(publication),
                    "title_spans": span_payload(publication.title, token_spec),
                }
            )
        return {"kind": "query", "results": results}

    def _resolve_publication(doi: str) -> dict:
        try:
            record = gateway.fetch_record(doi)
        except PartialData as exc:
            if exc.record is None:
                return {"doi": doi, "error": "unavailable"}
            return {
                "publication": publication_payload(exc.record.to_publication()),
                "partial": True,
                "served_stale": False,
            }
        except NotFound:
            return {"doi": doi, "error": "not_found"}
        except SourceUnavailable:
            return {"doi": doi, "error": "unavailable"}
        return {
            "publication": publication_payload(record.to_publication()),
            "partial": False,
            "served_stale": record.served_stale,
        }

    @app.post("/sessions/{session_id}/select")
    def select(session_id: str, body: SelectBody):
        handle = get_handle(session_id)

        def mutate(state: SessionState) -> SessionState:
            for doi in body.dois:
                state = state.add_selected(doi)
            return state

        return session_payload(apply_change(handle, mutate))

    @app.post("/sessions/{session_id}/stage")
    def stage(session_id: str, body: StageBody):
        handle = get_handle(session_id)
        with handle.write_lock, handle.lock:
            state = handle.state
            for doi in body.include:
                state = state.stage_inclusion(doi)
            for doi in body.exclude:
                state = state.stage_exclusion(doi)
            if state != handle.state:
                handle.state = state
                handle.revision += 1
            snapshot = handle.snapshot()
        return session_payload(snapshot)

    @app.post("/sessions/{session_id}/update")
    def update(session_id: str):
        handle = get_handle(session_id)
        if not handle.update_gate.acquire(blocking=False):
            raise ApiError(
                409, "UpdateInFlight", "another update for this session is running"
            )
        try:
            return session_payload(apply_change(handle, commit_update))
        finally:
            handle.update_gate.release()

    @app.put("/sessions/{session_id}/keywords")
    def put_keywords(session_id: str, body: KeywordsBody):
        # the keyword syntax is tolerant, any text parses
        handle = get_handle(session_id)
        return session_payload(
            apply_change(
                handle,
                lambda s: s.with_keywords(body.text).with_boost(body.boost_enabled),
            )
        )

    @app.post("/sessions/{session_id}/read")
    def mark_read(session_id: str, body: ReadBody):
        handle = get_handle(session_id)
        return session_payload(apply_change(handle, lambda s: s.mark_read(body.doi)))

    # -- derived artifacts -------------------------------------------------------

    def suggestions_payload(
        snapshot: Snapshot,
        offset: int,
        limit: int,
        title: str | None,
        year_min: int | None,
        year_max: int | None,
        tag: str | None,
    ) -> dict:
        if offset < 0 or limit < 0:
            raise InvalidFilter("offset and limit must be non-negative")
        tag_filter = None
        if tag is not None:
            try:
                tag_filter = Tag(tag)
            except ValueError:
                raise InvalidFilter(f"unknown tag {tag!r}") from None
        spec = FilterSpec(
            title_query=title, year_min=year_min, year_max=year_max, tag=tag_filter
        )
        derived = snapshot.derived
        filtered = apply_filter(derived.suggestions, spec)
        page = filtered.entries[offset : offset + limit]
        return {
            "revision": snapshot.derived_revision,
            "total_candidates": filtered.total_candidates,
            "loaded_count": derived.suggestions.loaded_count,
            "filtered_count": len(filtered.entries),
            "offset": offset,
            "limit": limit,
            "entries": [
                entry_payload(entry, derived.spec, snapshot.state.read_dois)
                for entry in page
            ],
        }

    @app.get("/sessions/{session_id}/suggestions")
    def get_suggestions(
        session_id: str,
        offset: int = 0,
        limit: int = 50,
        title: str | None = None,
        year_min: int | None = None,
        year_max: int | None = None,
        tag: str | None = None,
    ):
        snapshot = get_handle(session_id).snapshot()
        return suggestions_payload(
            snapshot, offset, limit, title, year_min, year_max, tag
        )

    @app.get("/sessions/{session_id}/suggestions/more")
    def get_more_suggestions(
        session_id: str,
        offset: int = 0,
        limit: int = 50,
        title: str | None = None,
        year_min: int | None = None,
        year_max: int | None = None,
        tag: str | None = None,
    ):
        handle = get_handle(session_id)
        snapshot = apply_change(handle, lambda s: s, grow_window=True)
        return suggestions_payload(
            snapshot, offset, limit, title, year_min, year_max, tag
        )

    @app.get("/sessions/{session_id}/authors")
    def get_authors(
        session_id: str,
        weight_score: bool | None = None,
        boost_first: bool | None = None,
        boost_new: bool | None = None,
        top: int | None = None,
    ):
        snapshot = get_handle(session_id).snapshot()
        if weight_score is None and boost_first is None and boost_new is None:
            config_used = DEFAULT_CONFIG
        else:
            config_used = AuthorScoreConfig(
                weight_by_publication_score=(
                    True if weight_score is None else weight_score
                ),
                boost_first_author=True if boost_first is None else boost_first,
                boost_new=True if boost_new is None else boost_new,
            )
        ranked = snapshot.derived.rank_authors_with(config_used)
        if top is not None:
            if top < 0:
                raise InvalidFilter("top must be non-negative")
            ranked = ranked[:top]
        return {
            "revision": snapshot.derived_revision,
            "config": {
                "weight_score": config_used.weight_by_publication_score,
                "boost_first": config_used.boost_first_author,
                "boost_new": config_used.boost_new,
            },
            "authors": [author_payload(record) for record in ranked],
        }

    @app.get("/sessions/{session_id}/network")
    def get_network(
        session_id: str,
        n_suggested: int = 20,
        n_authors: int = 5,
        keywords: bool = True,
        authors: bool = True,
    ):
        snapshot = get_handle(session_id).snapshot()
        derived = snapshot.derived
        try:
            settings = NetworkSettings(
                n_suggested=n_suggested,
                n_authors=n_authors,
                show_keywords=keywords,
                show_authors=authors,
            )
        except ValueError as exc:
            raise InvalidFilter(str(exc)) from None
        payload = build_network(
            derived.selected_entries,
            derived.suggestions,
            derived.spec,
            derived.authors_default,
            settings,
            read_dois=snapshot.state.read_dois,
        )
        return {"revision": snapshot.derived_revision, **payload.as_dict()}

    # -- exports and publication lookup ----------------------------------------

    @app.get("/sessions/{session_id}/export/bibtex")
    def export_bibtex_file(session_id: str):
        snapshot = get_handle(session_id).snapshot()
        text = export_bibtex(
            [entry.publication for entry in snapshot.derived.selected_entries]
        )
        return Response(
            content=text,
            media_type="application/x-bibtex",
            headers={
                "Content-Disposition": 'attachment; filename="citesuggest.bib"'
            },
        )

    @app.get("/sessions/{session_id}/export/session")
    def export_session_file(session_id: str):
        snapshot = get_handle(session_id).snapshot()
        try:
            payload = save_session(snapshot.state)
        except ValueError as exc:
            raise ApiError(400, "StagedChanges", str(exc)) from None
        return Response(
            content=payload,
            media_type="application/json",
            headers={
                "Content-Disposition": 'attachment; filename="session.json"'
            },
        )

    @app.get("/publications/{doi:path}")
    def get_publication(doi: str):
        return _resolve_publication_strict(doi)

    def _resolve_publication_strict(doi: str) -> dict:
        try:
            record = gateway.fetch_record(doi)
        except PartialData as exc:
            if exc.record is None:
                raise SourceUnavailable(str(exc)) from None
            return {
                "publication": publication_payload(exc.record.to_publication()),
                "partial": True,
                "served_stale": False,
            }
        return {
            "publication": publication_payload(record.to_publication()),
            "partial": False,
            "served_stale": record.served_stale,
        }

    return app
