"""Versioned JSON cache for computed counts.

Entries are keyed by (pattern text, n); block-refined counts are stored
alongside.  Unknown format versions are rejected rather than migrated.
The CLI is the single writer; writes go through a temp file and rename.
"""

import json
import os
import time

from .seqcore import format_seq

CACHE_VERSION = 1

__all__ = ["CountCache", "default_cache_path", "CACHE_VERSION"]


def default_cache_path():
    """PARTPAT_CACHE when set, otherwise ~/.cache/partpat/counts.json."""
    env = os.environ.get("PARTPAT_CACHE")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME",
                          os.path.join(os.path.expanduser("~"), ".cache"))
    return os.path.join(base, "partpat", "counts.json")


class CountCache:
    def __init__(self, path=None):
        self.path = path or default_cache_path()
        self.counts = {}
        self.blocks = {}
        self.dirty = False
        self._load()

    def _load(self):
        if not os.path.exists(self.path):
            return
        with open(self.path) as fh:
            data = json.load(fh)
        if data.get("version") != CACHE_VERSION:
            raise ValueError("cache file %s has unsupported version %r"
                             % (self.path, data.get("version")))
        self.counts = {k: int(v) for k, v in data.get("counts", {}).items()}
        self.blocks = {
            k: {int(m): int(c) for m, c in v.items()}
            for k, v in data.get("by_blocks", {}).items()
        }

    @staticmethod
    def _key(pattern, n):
        return "%s|%d" % (format_seq(pattern), n)

    def get(self, pattern, n):
        return self.counts.get(self._key(pattern, n))

    def put(self, pattern, n, count):
        key = self._key(pattern, n)
        old = self.counts.get(key)
        if old is not None and old != count:
            raise ValueError("cache disagrees with recomputation at %s" % key)
        if old is None:
            self.counts[key] = count
            self.dirty = True

    def get_blocks(self, pattern, n):
        return self.blocks.get(self._key(pattern, n))

    def put_blocks(self, pattern, n, refined):
        key = self._key(pattern, n)
        old = self.blocks.get(key)
        if old is not None and old != dict(refined):
            raise ValueError("cache disagrees with recomputation at %s" % key)
        if old is None:
            self.blocks[key] = dict(refined)
            self.dirty = True

    def save(self):
        if not self.dirty:
            return
        data = {
            "version": CACHE_VERSION,
            "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
            "counts": dict(sorted(self.counts.items())),
            "by_blocks": {
                k: {str(m): c for m, c in sorted(v.items())}
                for k, v in sorted(self.blocks.items())
            },
        }
        directory = os.path.dirname(self.path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh, sort_keys=True, indent=1)
            fh.write("\n")
        os.replace(tmp, self.path)
        self.dirty = False
