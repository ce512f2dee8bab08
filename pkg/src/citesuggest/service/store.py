"""In-memory session registry with per-session write serialization."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from ..session import SessionState
from .pipeline import EMPTY_DERIVED, DerivedState


@dataclass
class Snapshot:
    """Immutable read view: one state revision plus the derived
    artifacts labeled with the revision they were computed from."""

    id: str
    state: SessionState
    revision: int
    derived: DerivedState
    derived_revision: int
    window_count: int


class SessionHandle:
    def __init__(self, session_id: str):
        self.id = session_id
        self.state = SessionState()
        self.revision = 0
        self.derived: DerivedState = EMPTY_DERIVED
        self.derived_revision = 0
        self.window_count = 1
        # guards field access, held only for quick reads and swaps
        self.lock = threading.RLock()
        # serializes whole mutate-and-recompute operations
        self.write_lock = threading.Lock()
        # held for the duration of a commit-and-recompute update; a
        # second concurrent update must be rejected, not queued
        self.update_gate = threading.Lock()

    def snapshot(self) -> Snapshot:
        with self.lock:
            return Snapshot(
                id=self.id,
                state=self.state,
                revision=self.revision,
                derived=self.derived,
                derived_revision=self.derived_revision,
                window_count=self.window_count,
            )


class SessionStore:
    """Session ids are sequential: the service is single-user, ids only
    need to be unique and stable within one process."""

    def __init__(self):
        self._sessions: dict[str, SessionHandle] = {}
        self._lock = threading.Lock()
        self._counter = 0

    def create(self) -> SessionHandle:
        with self._lock:
            self._counter += 1
            handle = SessionHandle(f"s{self._counter}")
            self._sessions[handle.id] = handle
            return handle

    def get(self, session_id: str) -> SessionHandle | None:
        with self._lock:
            return self._sessions.get(session_id)

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)
