"""Headless command line driver: seed, suggest, filter, export.

Exit codes: 0 ok, 2 usage, 3 data error (malformed DOIs, specs, or
files), 4 upstream unavailable. All error output is a single JSON object
on stderr so scripts can parse failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .authorship import AuthorScoreConfig, author_initials, top_authors
from .bibtex import export_bibtex
from .doi import normalize_doi
from .errors import (
    CiteSuggestError,
    InvalidFilter,
    InvalidQuery,
    InvalidSessionFile,
    MalformedDoi,
    NotFound,
    SourceUnavailable,
)
from .model import SuggestionEntry, Tag
from .scoring import FilterSpec, apply_filter, boost_glyph_level
from .service.config import ServiceConfig, build_gateway, load_config
from .service.pipeline import recompute
from .session import SessionState, commit_update, load_session, save_session

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_UPSTREAM = 4

TITLE_WIDTH = 80


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SourceUnavailable as exc:
        _print_error(exc)
        return EXIT_UPSTREAM
    except (FileNotFoundError, IsADirectoryError) as exc:
        _print_error(exc, kind="FileError")
        return EXIT_DATA
    except json.JSONDecodeError as exc:
        _print_error(exc, kind="InvalidJson")
        return EXIT_DATA
    except ValueError as exc:
        _print_error(exc, kind="ValueError")
        return EXIT_DATA
    except CiteSuggestError as exc:
        _print_error(exc)
        return EXIT_DATA


def _print_error(exc: Exception, kind: str | None = None) -> None:
    payload = {"error": {"type": kind or type(exc).__name__, "detail": str(exc)}}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, ensure_ascii=False))


# -- argument plumbing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citesuggest",
        description="Citation-based literature discovery from seed publications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    suggest = sub.add_parser("suggest", help="rank suggestions for seed DOIs")
    suggest.add_argument(
        "--seed",
        action="append",
        required=True,
        metavar="DOI[,DOI...]",
        help="seed DOI, repeatable or comma separated",
    )
    suggest.add_argument("--keywords", default="", help="boost keyword groups")
    suggest.add_argument(
        "--no-boost", action="store_true", help="show keyword matches without boosting"
    )
    suggest.add_argument("--top", type=_non_negative, default=None)
    suggest.add_argument(
        "--filter-tag", choices=sorted(tag.value for tag in Tag), default=None
    )
    suggest.add_argument(
        "--filter-year", type=_year_range, default=None, metavar="A..B"
    )
    suggest.add_argument("--filter-title", default=None, metavar="TEXT")
    _source_options(suggest)
    _format_options(suggest)
    suggest.set_defaults(handler=cmd_suggest)

    authors = sub.add_parser("authors", help="rank authors of a session's selection")
    authors.add_argument("--session", required=True, metavar="FILE")
    authors.add_argument("--weight-score", action="store_true")
    authors.add_argument("--boost-first", action="store_true")
    authors.add_argument("--boost-new", action="store_true")
    authors.add_argument("--top", type=_non_negative, default=None)
    _source_options(authors)
    _format_options(authors)
    authors.set_defaults(handler=cmd_authors)

    export = sub.add_parser("export", help="export a session's selection as BibTeX")
    export.add_argument("--session", required=True, metavar="FILE")
    export.add_argument(
        "--bibtex", required=True, metavar="OUT", help="output path, - for stdout"
    )
    _source_options(export)
    export.set_defaults(handler=cmd_export)

    session = sub.add_parser("session", help="create and edit session files")
    session_sub = session.add_subparsers(dest="session_command", required=True)

    new = session_sub.add_parser("new", help="write an empty session file")
    new.add_argument("--out", required=True, metavar="FILE")
    new.set_defaults(handler=cmd_session_new)

    add = session_sub.add_parser("add", help="add DOIs to the selection")
    add.add_argument("--session", required=True, metavar="FILE")
    add.add_argument("dois", nargs="+", metavar="DOI")
    add.add_argument("--out", default=None, metavar="FILE")
    add.set_defaults(handler=cmd_session_add)

    stage = session_sub.add_parser(
        "stage", help="preview staged include/exclude changes without applying"
    )
    stage.add_argument("--session", required=True, metavar="FILE")
    stage.add_argument("--include", action="append", default=[], metavar="DOI")
    stage.add_argument("--exclude", action="append", default=[], metavar="DOI")
    stage.set_defaults(handler=cmd_session_stage)

    update = session_sub.add_parser(
        "update", help="apply include/exclude changes and save"
    )
    update.add_argument("--session", required=True, metavar="FILE")
    update.add_argument("--include", action="append", default=[], metavar="DOI")
    update.add_argument("--exclude", action="append", default=[], metavar="DOI")
    update.add_argument("--out", default=None, metavar="FILE")
    update.set_defaults(handler=cmd_session_update)

    save = session_sub.add_parser(
        "save", help="validate and canonically rewrite a session file"
    )
    save.add_argument("--session", required=True, metavar="FILE")
    save.add_argument("--out", default=None, metavar="FILE")
    save.set_defaults(handler=cmd_session_save)

    search = sub.add_parser("search", help="query the metadata source")
    search.add_argument("query", metavar="QUERY")
    _source_options(search)
    _format_options(search)
    search.set_defaults(handler=cmd_search)

    cache = sub.add_parser("cache", help="inspect or clear the record cache")
    cache_sub = cache.add_subparsers(dest="cache_command", required=True)
    for name, handler in (("stats", cmd_cache_stats), ("clear", cmd_cache_clear)):
        cache_cmd = cache_sub.add_parser(name)
        cache_cmd.add_argument("--config", default=None, metavar="FILE")
        cache_cmd.add_argument("--cache-dir", default=None, metavar="DIR")
        cache_cmd.set_defaults(handler=handler)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)
    _source_options(serve)
    serve.set_defaults(handler=cmd_serve)

    return parser


def _source_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--fixture", default=None, metavar="FILE", help="offline fixture data file"
    )
    parser.add_argument("--config", default=None, metavar="FILE")
    parser.add_argument("--cache-dir", default=None, metavar="DIR")
    parser.add_argument(
        "--current-year", type=int, default=None, help="pin the reference year"
    )


def _format_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="stable JSON output")
    group.add_argument(
        "--table", action="store_true", help="human-readable table (default)"
    )


def _non_negative(raw: str) -> int:
    value = int(raw)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _year_range(raw: str) -> tuple[int | None, int | None]:
    if ".." not in raw:
        raise argparse.ArgumentTypeError("expected A..B, A.., or ..B")
    low, _, high = raw.partition("..")
    try:
        return (int(low) if low else None, int(high) if high else None)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _service_config(args) -> ServiceConfig:
    config = load_config(getattr(args, "config", None))
    overrides = {}
    if getattr(args, "fixture", None):
        overrides["fixture_path"] = args.fixture
    if getattr(args, "current_year", None) is not None:
        overrides["current_year"] = args.current_year
    if getattr(args, "cache_dir", None):
        overrides["cache_dir"] = args.cache_dir
    if getattr(args, "host", None):
        overrides["host"] = args.host
    if getattr(args, "port", None) is not None:
        overrides["port"] = args.port
    return replace(config, **overrides)


def _seed_list(chunks: list[str]) -> tuple[str, ...]:
    seeds: list[str] = []
    for chunk in chunks:
        for raw in chunk.split(","):
            raw = raw.strip()
            if not raw:
                continue
            doi = normalize_doi(raw)
            if doi not in seeds:
                seeds.append(doi)
    if not seeds:
        raise MalformedDoi("no seed DOIs given")
    return tuple(seeds)


def _truncate(text: str, width: int = TITLE_WIDTH) -> str:
    if len(text) <= width:
        return text
    return text[: width - 1] + "…"


def _load_session_file(path: str) -> SessionState:
    with open(path, "rb") as handle:
        return load_session(handle.read())


def _write_session_file(state: SessionState, path: str) -> None:
    with open(path, "wb") as handle:
        handle.write(save_session(state))


# -- commands ------------------------------------------------------------------


def cmd_suggest(args) -> int:
    state = SessionState(
        selected=_seed_list(args.seed),
        keyword_text=args.keywords,
        boost_enabled=not args.no_boost,
    )
    gateway = build_gateway(_service_config(args))
    try:
        derived = recompute(state, gateway)
    finally:
        gateway.close()
    tag = Tag(args.filter_tag) if args.filter_tag else None
    year_min, year_max = args.filter_year or (None, None)
    spec = FilterSpec(
        title_query=args.filter_title, year_min=year_min, year_max=year_max, tag=tag
    )
    filtered = apply_filter(derived.suggestions, spec)
    entries = filtered.entries[: args.top] if args.top is not None else filtered.entries

    if args.json:
        _emit(
            {
                "total_candidates": filtered.total_candidates,
                "loaded_count": derived.suggestions.loaded_count,
                "filtered_count": len(filtered.entries),
                "shown": len(entries),
                "entries": [_entry_row(entry) for entry in entries],
                "load_errors": [
                    {"doi": doi, "error": kind} for doi, kind in derived.load_errors
                ],
            }
        )
    else:
        print(
            f"{len(entries)} of {filtered.total_candidates} candidates"
            f" ({derived.suggestions.loaded_count} loaded)"
        )
        header = f"{'s':>5} {'o':>3} {'i':>3} {'b':>2}  {'year':>4}  doi / title"
        print(header)
        for entry in entries:
            breakdown = entry.breakdown
            year = entry.publication.year if entry.publication.year else "----"
            tags = ",".join(sorted(t.value for t in entry.tags))
            print(
                f"{breakdown.score:>5} {breakdown.outgoing:>3} {breakdown.incoming:>3}"
                f" {breakdown.boost:>2}  {year:>4}  {entry.publication.doi}"
                f"  {_truncate(entry.publication.title)}"
                + (f"  [{tags}]" if tags else "")
            )
    return EXIT_OK


def _entry_row(entry: SuggestionEntry) -> dict:
    breakdown = entry.breakdown
    return {
        "doi": entry.publication.doi,
        "title": entry.publication.title,
        "year": entry.publication.year,
        "s": breakdown.score,
        "o": breakdown.outgoing,
        "i": breakdown.incoming,
        "b": breakdown.boost,
        "glyph_level": boost_glyph_level(breakdown.boost),
        "tags": sorted(tag.value for tag in entry.tags),
    }


def cmd_authors(args) -> int:
    state = _load_session_file(args.session)
    gateway = build_gateway(_service_config(args))
    try:
        derived = recompute(state, gateway)
    finally:
        gateway.close()
    config = AuthorScoreConfig(
        weight_by_publication_score=args.weight_score,
        boost_first_author=args.boost_first,
        boost_new=args.boost_new,
    )
    ranked = derived.rank_authors_with(config)
    if args.top is not None:
        ranked = top_authors(ranked, args.top)

    if args.json:
        _emit(
            {
                "config": {
                    "weight_score": config.weight_by_publication_score,
                    "boost_first": config.boost_first_author,
                    "boost_new": config.boost_new,
                },
                "authors": [
                    {
                        "key": record.key,
                        "display_name": record.display_name,
                        "initials": author_initials(record.display_name),
                        "orcid": record.orcid,
                        "score": record.score,
                        "contribution_count": len(record.contributions),
                        "dois": [c.doi for c in record.contributions],
                        "year_span": list(record.year_span)
                        if record.year_span
                        else None,
                    }
                    for record in ranked
                ],
            }
        )
    else:
        print(f"{'score':>6} {'pubs':>4}  author")
        for record in ranked:
            print(
                f"{record.score:>6} {len(record.contributions):>4}"
                f"  {record.display_name}"
            )
    return EXIT_OK


def cmd_export(args) -> int:
    state = _load_session_file(args.session)
    gateway = build_gateway(_service_config(args))
    try:
        derived = recompute(state, gateway)
    finally:
        gateway.close()
    publications = [entry.publication for entry in derived.selected_entries]
    text = export_bibtex(publications)
    if args.bibtex == "-":
        sys.stdout.write(text)
    else:
        with open(args.bibtex, "w", encoding="utf-8") as handle:
            handle.write(text)
    missing = dict(derived.load_errors)
    dropped = [doi for doi in state.selected if doi in missing and missing[doi] != "partial"]
    if dropped:
        _print_error(
            RuntimeError(
                "export incomplete, missing: " + ", ".join(sorted(dropped))
            ),
            kind="IncompleteExport",
        )
        if any(missing[doi] == "unavailable" for doi in dropped):
            return EXIT_UPSTREAM
        return EXIT_DATA
    return EXIT_OK


def cmd_session_new(args) -> int:
    _write_session_file(SessionState(), args.out)
    _emit({"written": args.out, "selected": []})
    return EXIT_OK


def cmd_session_add(args) -> int:
    state = _load_session_file(args.session)
    for doi in args.dois:
        state = state.add_selected(doi)
    out = args.out or args.session
    _write_session_file(state, out)
    _emit({"written": out, "selected": list(state.selected)})
    return EXIT_OK


def cmd_session_stage(args) -> int:
    state = _load_session_file(args.session)
    for doi in args.include:
        state = state.stage_inclusion(doi)
    for doi in args.exclude:
        state = state.stage_exclusion(doi)
    preview = commit_update(state)
    _emit(
        {
            "staged": {
                "include": sorted(state.staged_inclusions),
                "exclude": sorted(state.staged_exclusions),
            },
            "would_select": list(preview.selected),
            "would_exclude": list(preview.excluded),
        }
    )
    return EXIT_OK


def cmd_session_update(args) -> int:
    state = _load_session_file(args.session)
    for doi in args.include:
        state = state.stage_inclusion(doi)
    for doi in args.exclude:
        state = state.stage_exclusion(doi)
    state = commit_update(state)
    out = args.out or args.session
    _write_session_file(state, out)
    _emit(
        {
            "written": out,
            "selected": list(state.selected),
            "excluded": list(state.excluded),
        }
    )
    return EXIT_OK


def cmd_session_save(args) -> int:
    state = _load_session_file(args.session)
    out = args.out or args.session
    _write_session_file(state, out)
    _emit({"written": out, "selected": list(state.selected)})
    return EXIT_OK


def cmd_search(args) -> int:
    if not args.query.strip():
        raise InvalidQuery("empty search query")
    gateway = build_gateway(_service_config(args))
    try:
        results = gateway.search(args.query)
    finally:
        gateway.close()
    if args.json:
        _emit(
            {
                "query": args.query,
                "results": [
                    {
                        "doi": publication.doi,
                        "title": publication.title,
                        "year": publication.year,
                        "authors": list(publication.authors),
                    }
                    for publication in results
                ],
            }
        )
    else:
        for publication in results:
            year = publication.year if publication.year else "----"
            print(f"{year:>4}  {publication.doi}  {_truncate(publication.title)}")
    return EXIT_OK


def cmd_cache_stats(args) -> int:
    gateway = build_gateway(_service_config(args))
    try:
        _emit(gateway.cache.stats())
    finally:
        gateway.close()
    return EXIT_OK


def cmd_cache_clear(args) -> int:
    gateway = build_gateway(_service_config(args))
    try:
        _emit({"removed": gateway.cache.clear()})
    finally:
        gateway.close()
    return EXIT_OK


def cmd_serve(args) -> int:
    import logging

    import uvicorn

    from .service import create_app

    logging.basicConfig(
        level=logging.INFO, format="%(asctime)s %(levelname)s %(name)s %(message)s"
    )
    config = _service_config(args)
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
