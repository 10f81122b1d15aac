"""Process-wide memo cache for counts, with optional on-disk persistence.

Keys are canonical nested tuples of ints/strings/None (stable across runs);
values are exact rationals.  The persistent format is line oriented and
human-diffable:

    <repr of key tuple>\t<num>[/<den>]\n

appended as counts are computed; replay is last-write-wins and corrupt lines
are skipped with a warning, degrading to in-memory-only behaviour.
"""

from __future__ import annotations

import ast
import logging
import os
import threading

from .rationals import QQ, fmt, parse

log = logging.getLogger("charnum.cache")


class CountCache:
    def __init__(self):
        self._mem = {}
        self._lock = threading.Lock()
        self._file = None
        self._path = None

    # -- persistence --------------------------------------------------------
    def configure(self, path=None):
        """Attach a cache file (load existing records, append new ones)."""
        with self._lock:
            if self._file is not None:
                self._file.close()
                self._file = None
            self._path = path
            if path is None:
                return
            try:
                if os.path.exists(path):
                    self._load(path)
                self._file = open(path, "a", encoding="utf-8")
            except OSError as exc:
                log.warning("cache persistence disabled (%s)", exc)
                self._file = None

    def _load(self, path):
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    key_text, val_text = line.split("\t")
                    key = ast.literal_eval(key_text)
                    self._mem[key] = parse(val_text)
                except (ValueError, SyntaxError):
                    log.warning("%s:%d: skipping corrupt cache record", path, lineno)

    # -- lookup -------------------------------------------------------------
    def get_or_compute(self, key, compute):
        try:
            return self._mem[key]
        except KeyError:
            pass
        val = compute()
        with self._lock:
            self._mem[key] = val
            if self._file is not None:
                try:
                    self._file.write("%r\t%s\n" % (key, fmt(val)))
                    self._file.flush()
                except OSError as exc:
                    log.warning("cache append failed, in-memory only (%s)", exc)
                    self._file = None
        return val

    def clear(self):
        with self._lock:
            self._mem.clear()

    def __len__(self):
        return len(self._mem)


CACHE = CountCache()


def configure_cache(path=None):
    """Point the shared cache at a file (or detach with None).

    The CHARNUM_CACHE environment variable provides a default path.
    """
    CACHE.configure(path)


_env = os.environ.get("CHARNUM_CACHE")
if _env:
    CACHE.configure(_env)
