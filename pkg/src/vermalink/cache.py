"""On-disk result cache.

Each entry is a JSON file named by the hash of its key.  The header records
the cache format and the producing build; entries written by another format
or build are ignored rather than migrated.
"""
import hashlib
import json
import os
from importlib import metadata
from pathlib import Path

FORMAT_VERSION = 1


def build_id():
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def cache_dir(override=None):
    if override:
        return Path(override)
    env = os.environ.get("VERMA_LINK_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "vermalink"


class ResultCache:
    def __init__(self, directory=None, enabled=True):
        self.dir = cache_dir(directory)
        self.enabled = enabled

    def _path(self, key):
        blob = json.dumps(key, sort_keys=True, separators=(",", ":"))
        return self.dir / (hashlib.sha256(blob.encode()).hexdigest()[:32] + ".json")

    def get(self, key):
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return None
        if data.get("format") != FORMAT_VERSION or data.get("build") != build_id():
            return None
        if data.get("key") != json.loads(json.dumps(key)):
            return None
        return data.get("value")

    def put(self, key, value):
        if not self.enabled:
            return
        path = self._path(key)
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
                json.dump({"format": FORMAT_VERSION, "build": build_id(), "key": key,
                           "value": value}, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError:
            pass
