"""Citation-based literature discovery engine.

Ranks suggested publications from a selected seed set by citation-link
counts, optionally boosted by user keywords; characterizes and filters
publications; ranks authors; and serves an HTTP API for the interactive
three-panel interface.
"""

from .doi import detect_dois, normalize_doi
from .errors import (
    CiteSuggestError,
    InvalidFilter,
    InvalidQuery,
    InvalidSessionFile,
    MalformedDoi,
    MissingScore,
    NotFound,
    NoYearData,
    PartialData,
    SourceUnavailable,
)
from .index import CitationIndex
from .keywords import (
    KeywordSpec,
    MatchSpan,
    count_keyword_matches,
    match_spans,
    parse_keyword_spec,
    render_keyword_spec,
)
from .authorship import (
    DEFAULT_CONFIG,
    AuthorRecord,
    AuthorScoreConfig,
    disambiguate,
    rank_authors,
    top_authors,
    unify_name,
)
from .bibtex import citation_key, export_bibtex
from .cache import RecordCache
from .gateway import GatewayConfig, SourceGateway
from .model import Publication, ScoreBreakdown, SuggestionEntry, SuggestionList, Tag
from .network import NetworkPayload, NetworkSettings, build_network
from .scoring import (
    FilterSpec,
    apply_filter,
    boost_glyph_level,
    candidate_set,
    classify,
    rank,
    score_candidate,
    score_selected,
)
from .session import SessionState, load_session, save_session
from .sources import (
    CrossrefStyleMetadataSource,
    FixtureSource,
    OpenCitationsStyleSource,
)

__version__ = "0.1.0"
