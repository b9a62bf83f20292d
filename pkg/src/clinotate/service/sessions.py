"""In-memory session store for uploaded rule packages.

Each session holds at most one package; uploads swap the whole compiled
bundle by a single reference assignment, so annotate calls observe either
the old or the new matcher, never a half-compiled one.  Entries expire after
a TTL and can optionally spill to disk so a restarted server can reload
them lazily.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from pathlib import Path

from ..ruleset import (
    CompiledMatchers,
    RulePackage,
    compile_rule_package,
    parse_rule_package,
    serialize_rule_package,
)


@dataclass(frozen=True)
class SessionRuleset:
    package: RulePackage
    compiled: CompiledMatchers
    archive: bytes
    updated_at: float


def build_bundle(package: RulePackage, now: float | None = None) -> SessionRuleset:
    return SessionRuleset(
        package=package,
        compiled=compile_rule_package(package),
        archive=serialize_rule_package(package),
        updated_at=time.time() if now is None else now,
    )


class SessionStore:
    def __init__(self, ttl_seconds: float = 24 * 3600, spill_dir: Path | None = None):
        self._ttl = ttl_seconds
        self._spill_dir = Path(spill_dir) if spill_dir else None
        self._lock = threading.Lock()
        self._sessions: dict[str, SessionRuleset] = {}
        if self._spill_dir:
            self._spill_dir.mkdir(parents=True, exist_ok=True)

    def put(self, session_id: str, bundle: SessionRuleset) -> None:
        with self._lock:
            self._sessions[session_id] = bundle
        if self._spill_dir:
            (self._spill_dir / f"{session_id}.zip").write_bytes(bundle.archive)

    def get(self, session_id: str) -> SessionRuleset | None:
        now = time.time()
        with self._lock:
            bundle = self._sessions.get(session_id)
            if bundle is not None and now - bundle.updated_at > self._ttl:
                del self._sessions[session_id]
                bundle = None
        if bundle is None and self._spill_dir:
            spilled = self._spill_dir / f"{session_id}.zip"
            if spilled.exists() and now - spilled.stat().st_mtime <= self._ttl:
                package = parse_rule_package(spilled.read_bytes())
                bundle = build_bundle(package, now=spilled.stat().st_mtime)
                with self._lock:
                    self._sessions.setdefault(session_id, bundle)
        return bundle

    def evict_expired(self) -> int:
        now = time.time()
        with self._lock:
            expired = [sid for sid, b in self._sessions.items()
                       if now - b.updated_at > self._ttl]
            for sid in expired:
                del self._sessions[sid]
        return len(expired)
