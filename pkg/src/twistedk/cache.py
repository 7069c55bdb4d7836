"""Presentation cache: an in-process dictionary plus an optional JSON directory.

Entries are keyed by (complex digest, degree, ring).  Filling is idempotent,
so concurrent first writes of the same key are harmless; disk writes go
through a temporary file and an atomic rename.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path
from typing import Callable, Optional

from .groups import AbelianGroupPresentation

_lock = threading.Lock()
_memory: dict = {}
_directory: Optional[Path] = None


def set_cache_dir(path) -> None:
    global _directory
    _directory = Path(path) if path is not None else None
    if _directory is not None:
        _directory.mkdir(parents=True, exist_ok=True)


def cache_dir() -> Optional[Path]:
    return _directory


def clear_memory() -> None:
    with _lock:
        _memory.clear()


def _filename(key: tuple) -> str:
    digest, degree, ring = key
    ring = ring.replace("/", "_")
    return f"{digest[:32]}-H{degree}-{ring}.json"


def get_or_compute(key: tuple, compute: Callable[[], AbelianGroupPresentation]) -> AbelianGroupPresentation:
    with _lock:
        hit = _memory.get(key)
    if hit is not None:
        return hit
    directory = _directory
    value = None
    if directory is not None:
        path = directory / _filename(key)
        if path.exists():
            doc = json.loads(path.read_text())
            if doc.get("key") == list(key):
                value = AbelianGroupPresentation.from_json(doc["presentation"])
    if value is None:
        value = compute()
        if directory is not None:
            _write_atomic(directory / _filename(key), {"key": list(key), "presentation": value.to_json()})
    with _lock:
        return _memory.setdefault(key, value)


def _write_atomic(path: Path, doc: dict) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
