"""HTTP service wiring the engine together for the web client."""

from .app import create_app
from .config import ServiceConfig, build_gateway, load_config
from .pipeline import DerivedState, recompute
from .store import SessionStore

__all__ = [
    "DerivedState",
    "ServiceConfig",
    "SessionStore",
    "build_gateway",
    "create_app",
    "load_config",
    "recompute",
]
