"""Service configuration: defaults, config file, environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

from ..cache import RecordCache
from ..gateway import GatewayConfig, SourceGateway
from ..sources import (
    CrossrefStyleMetadataSource,
    FixtureSource,
    OpenCitationsStyleSource,
)

ENV_PREFIX = "CITESUGGEST_"


@dataclass(frozen=True)
class ServiceConfig:
    metadata_base_url: str = "https://api.crossref.org"
    citations_base_url: str = "https://opencitations.net/index/api/v1"
    mailto: str | None = None
    cache_dir: str | None = None
    cache_ttl_days: float = 30.0
    parallelism: int = 4
    fixture_path: str | None = None
    current_year: int | None = None
    host: str = "127.0.0.1"
    port: int = 8722


_INT_FIELDS = {"parallelism", "current_year", "port"}
_FLOAT_FIELDS = {"cache_ttl_days"}


def load_config(
    path: str | None = None, env: dict[str, str] | None = None
) -> ServiceConfig:
    """Build a config from defaults, an optional JSON file, then
    environment variables (CITESUGGEST_<FIELD>), highest priority last."""
    config = ServiceConfig()
    known = {f.name for f in fields(ServiceConfig)}
    if path is not None:
        with open(path, encoding="utf-8") as handle:
            document = json.load(handle)
        if not isinstance(document, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = sorted(set(document) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        config = replace(config, **document)
    environment = os.environ if env is None else env
    overrides = {}
    for name in known:
        raw = environment.get(ENV_PREFIX + name.upper())
        if raw is None:
            continue
        overrides[name] = _coerce(name, raw)
    return replace(config, **overrides)


def _coerce(name: str, raw: str):
    if name in _INT_FIELDS:
        return int(raw)
    if name in _FLOAT_FIELDS:
        return float(raw)
    return raw


def build_gateway(config: ServiceConfig) -> SourceGateway:
    """Wire the upstream sources; a fixture path switches the service to
    fully offline operation."""
    if config.fixture_path:
        fixture = FixtureSource(config.fixture_path)
        metadata, citations = fixture, fixture
    else:
        metadata = CrossrefStyleMetadataSource(
            base_url=config.metadata_base_url, mailto=config.mailto
        )
        citations = OpenCitationsStyleSource(base_url=config.citations_base_url)
    ttl_seconds = config.cache_ttl_days * 86400.0
    return SourceGateway(
        metadata,
        citations,
        cache=RecordCache(directory=config.cache_dir, ttl_seconds=ttl_seconds),
        config=GatewayConfig(
            parallelism=config.parallelism,
            ttl_seconds=ttl_seconds,
            current_year=config.current_year,
        ),
    )
