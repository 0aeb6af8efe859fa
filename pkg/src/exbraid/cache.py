"""On-disk JSON cache for weight systems and truncated fusion products.

Disabled unless a directory is configured, either explicitly through
:func:`configure` or via the ``EXBRAID_CACHE_DIR`` environment variable.
Writes go to a temporary file in the same directory and are renamed into
place, so concurrent writers never leave a partial file behind.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "EXBRAID_CACHE_DIR"

_directory: Path | None = None
_configured = False
stats = {"hits": 0, "misses": 0, "writes": 0}


class CacheError(OSError):
    pass


def configure(path: str | os.PathLike | None) -> Path | None:
    """Select the cache directory; ``None`` falls back to the environment."""
    global _directory, _configured
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is None:
        _directory = None
    else:
        _directory = Path(path)
        try:
            _directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CacheError(f"cannot create cache directory {_directory}: {exc}") from exc
    _configured = True
    return _directory


def directory() -> Path | None:
    if not _configured:
        configure(None)
    return _directory


def _path(kind: str, key: tuple) -> Path | None:
    root = directory()
    if root is None:
        return None
    text = json.dumps([kind, *key], separators=(",", ":"))
    digest = hashlib.sha256(text.encode()).hexdigest()[:24]
    return root / kind / f"{digest}.json"


def load(kind: str, key: tuple):
    path = _path(kind, key)
    if path is None or not path.exists():
        stats["misses"] += 1
        return None
    try:
        doc = json.loads(path.read_text())
    except (OSError, ValueError):
        stats["misses"] += 1
        return None
    if doc.get("key") != json.loads(json.dumps(list(key))):
        stats["misses"] += 1
        return None
    stats["hits"] += 1
    return doc["value"]


def store(kind: str, key: tuple, value) -> None:
    path = _path(kind, key)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"key": list(key), "value": value}, fh, sort_keys=True)
        os.replace(tmp, path)
    except OSError as exc:
        raise CacheError(f"cannot write cache entry {path}: {exc}") from exc
    stats["writes"] += 1
