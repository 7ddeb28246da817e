"""Append-only JSON-lines cache of exact code sizes keyed by (canonical graph6, s)."""

from __future__ import annotations

import fcntl
import json
import os
from pathlib import Path

DEFAULT_PATH = "gncache.jsonl"
ENV_VAR = "GN_CACHE"


def default_cache_path() -> Path:
    return Path(os.environ.get(ENV_VAR, DEFAULT_PATH))


class ResultCache:
    """Records look like ``{"graph6": ..., "s": 2, "t": 5, "gn_lower": 2, "gn_upper": 3}``.

    The file is read once on construction; later appends take an exclusive
    lock so concurrent writers do not interleave lines.  Unparseable lines
    are skipped.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._data: dict[tuple[str, int], dict] = {}
        if self.path.exists():
            with open(self.path) as fh:
                for line in fh:
                    try:
                        rec = json.loads(line)
                        self._data[(rec["graph6"], int(rec["s"]))] = rec
                    except (ValueError, KeyError, TypeError):
                        continue

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: tuple[str, int]) -> bool:
        return key in self._data

    def get(self, graph6: str, s: int) -> dict | None:
        return self._data.get((graph6, s))

    def put(self, record: dict) -> None:
        key = (record["graph6"], int(record["s"]))
        if key in self._data:
            return
        self._data[key] = record
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
