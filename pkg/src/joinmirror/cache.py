"""On-disk cache for expensive series, keyed by a hash of the generating parameters."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Callable

from .series import TruncatedSeries

log = logging.getLogger(__name__)

CACHE_ENV = "JOINMIRROR_CACHE"


def cache_dir() -> Path | None:
    """Directory named by the environment override, or None (caching off)."""
    path = os.environ.get(CACHE_ENV)
    return Path(path) if path else None


def cache_key(kind: str, **params) -> str:
    blob = json.dumps({"kind": kind, **params}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def cached_series(kind: str, build: Callable[[], TruncatedSeries],
                  directory: Path | None = None, **params) -> TruncatedSeries:
    """Load a series from the cache or build and store it.

    A missing or unreadable entry is rebuilt; unreadable entries also log a warning."""
    directory = directory if directory is not None else cache_dir()
    if directory is None:
        return build()
    directory = Path(directory)
    path = directory / f"{kind}-{cache_key(kind, **params)}.series"
    if path.exists():
        try:
            return TruncatedSeries.loads(path.read_text())
        except (ValueError, KeyError, ZeroDivisionError) as exc:
            log.warning("corrupted cache entry %s (%s); recomputing", path, exc)
    series = build()
    directory.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(series.dumps())
    tmp.replace(path)
    return series


def cache_status(directory: Path | None = None) -> dict:
    directory = directory if directory is not None else cache_dir()
    if directory is None or not Path(directory).exists():
        return {"directory": str(directory) if directory else None, "entries": []}
    entries = sorted(p.name for p in Path(directory).glob("*.series"))
    return {"directory": str(directory), "entries": entries}
