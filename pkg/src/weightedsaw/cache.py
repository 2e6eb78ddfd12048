"""Content-addressed cache of aggregate tables.

One JSON file per configuration, named by the sha256 of the canonical
configuration (which embeds the code version). Files are written to a
temporary name and renamed into place, and each carries a checksum of its
payload so that edited or truncated entries are detected on load.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .enumeration import CODE_VERSION, AggregateTable, EnumConfig
from .errors import CacheCorruption

ENV_VAR = "WEIGHTEDSAW_CACHE"


def dumps(obj) -> str:
    """Canonical JSON used for every artifact (stable key order, fixed separators)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def resolve_cache_dir(flag: Optional[str]) -> Optional[Path]:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    audited: int = 0


def _content(table: AggregateTable) -> str:
    # meta records how the table was produced (backend, node count), not what it contains
    data = table.to_json()
    data.pop("meta", None)
    return dumps(data)


class TableCache:
    def __init__(self, root, audit_fraction: float = 0.0):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.audit_fraction = audit_fraction
        self.stats = CacheStats()

    def path_for(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def load(self, key: str) -> Optional[AggregateTable]:
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            digest = entry["payload_sha256"]
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorruption(f"{path}: unreadable cache entry ({exc})") from None
        if entry.get("key") != key or entry.get("version") != CODE_VERSION:
            raise CacheCorruption(f"{path}: entry does not belong to this key/version")
        if hashlib.sha256(dumps(payload).encode()).hexdigest() != digest:
            raise CacheCorruption(f"{path}: payload checksum mismatch")
        return AggregateTable.from_json(payload)

    def store(self, key: str, table: AggregateTable) -> Path:
        payload = table.to_json()
        entry = {
            "key": key,
            "version": CODE_VERSION,
            "payload_sha256": hashlib.sha256(dumps(payload).encode()).hexdigest(),
            "payload": payload,
        }
        path = self.path_for(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(dumps(entry))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def _should_audit(self, key: str) -> bool:
        if self.audit_fraction <= 0:
            return False
        return random.Random(key).random() < self.audit_fraction

    def get_or_compute(self, cfg: EnumConfig, compute: Callable[[EnumConfig], AggregateTable]) -> AggregateTable:
        key = cfg.config_hash()
        cached = self.load(key)
        if cached is None:
            self.stats.misses += 1
            table = compute(cfg)
            self.store(key, table)
            # return what a later hit would return, so cold and warm runs agree byte for byte
            return self.load(key)
        self.stats.hits += 1
        if self._should_audit(key):
            self.stats.audited += 1
            fresh = compute(cfg)
            if _content(fresh) != _content(cached):
                raise CacheCorruption(f"{self.path_for(key)}: audit recomputation differs from the cached table")
        return cached
