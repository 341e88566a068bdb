"""Value cache for t-values, keyed by (N, a, index, P, tol).

Backed by an append-only text file when a directory is configured (via
``IMTV_CACHE_DIR`` or explicitly); one record per line::

    N:a:index:P:tol value err
"""

from __future__ import annotations

import logging
import os
import threading
from pathlib import Path

from mpmath import mp, mpf

from .bigreal import BigReal

log = logging.getLogger(__name__)

CACHE_ENV = "IMTV_CACHE_DIR"
CACHE_FILE = "values.txt"


def cache_key(N: int, a: int, index: str, P: int, tol) -> str:
    tol_s = "none" if tol is None else mp.nstr(mpf(tol), 6)
    return f"{N}:{a}:{index}:{P}:{tol_s}"


class ValueCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self._lock = threading.Lock()
        self._mem: dict[str, tuple[str, str] | BigReal] = {}
        self.path = Path(directory) / CACHE_FILE if directory else None
        self.skipped = 0
        if self.path and self.path.exists():
            self._load()

    def _load(self) -> None:
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            fields = line.split()
            if not line.strip():
                continue
            if len(fields) != 3 or fields[0].count(":") != 4:
                log.warning("cache %s:%d: skipping corrupt record %r", self.path, lineno, line)
                self.skipped += 1
                continue
            try:
                mpf(fields[1]), mpf(fields[2])
            except (ValueError, TypeError):
                log.warning("cache %s:%d: skipping unparsable record %r", self.path, lineno, line)
                self.skipped += 1
                continue
            self._mem[fields[0]] = (fields[1], fields[2])

    def get(self, key: str) -> BigReal | None:
        with self._lock:
            hit = self._mem.get(key)
        if hit is None or isinstance(hit, BigReal):
            return hit
        # parse at the stored precision, not the ambient one
        with mp.workdps(max(mp.dps, len(hit[0]))):
            return BigReal(mpf(hit[0]), mpf(hit[1]))

    def put(self, key: str, value: BigReal) -> None:
        rec = (mp.nstr(value.value, mp.dps), mp.nstr(value.err, 6))
        with self._lock:
            # values computed in this session are kept bit-exact
            self._mem[key] = value
            if self.path:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a") as fh:
                    fh.write(f"{key} {rec[0]} {rec[1]}\n")

    def clear(self) -> int:
        with self._lock:
            n = len(self._mem)
            self._mem.clear()
            if self.path and self.path.exists():
                self.path.unlink()
        return n

    def keys(self) -> list[str]:
        with self._lock:
            return sorted(self._mem)

    def __len__(self) -> int:
        return len(self._mem)


_default: ValueCache | None = None


def default_cache() -> ValueCache:
    global _default
    if _default is None:
        _default = ValueCache(os.environ.get(CACHE_ENV) or None)
    return _default


def set_default_cache(cache: ValueCache | None) -> None:
    global _default
    _default = cache
