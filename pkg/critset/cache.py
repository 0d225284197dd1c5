# Copyright (c) 2026 The critset developers. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Content-addressed result cache

Entries are BJData documents named by the SHA-256 of the canonical request
JSON and the package version, so a version bump misses every old entry.
"""

import json
import logging
import os
from hashlib import sha256

from bjdata import dumpb, loadb, DecoderException, EncoderException

from .ring import CritsetException

__all__ = ("CacheException", "ResultCache", "default_cache_dir", "request_key")

logger = logging.getLogger(__name__)

ENV_CACHE_DIR = "CRITSET_CACHE"
CACHE_SUFFIX = ".bjd"


class CacheException(CritsetException):
    """Raised when the cache directory cannot be used or a result cannot be stored."""


def default_cache_dir():
    return os.environ.get(ENV_CACHE_DIR) or os.path.join(os.path.expanduser("~"), ".cache", "critset")


def request_key(request, version):
    """Hex digest of the canonical JSON of request plus the version tag."""
    canonical = json.dumps(request, sort_keys=True, separators=(",", ":"))
    return sha256(("%s\n%s" % (version, canonical)).encode("utf-8")).hexdigest()


class ResultCache:
    """Stores JSON-compatible results under request keys

    Args:
        directory: cache root; created on first write
        version: code-version tag mixed into every key
        enabled: when false, get() always misses and put() is a no-op
    """

    def __init__(self, directory, version, enabled=True):
        self.directory = directory
        self.version = version
        self.enabled = enabled

    def path(self, key):
        return os.path.join(self.directory, key[:2], key + CACHE_SUFFIX)

    def get(self, key):
        """Stored result or None; corrupt entries are removed with a warning."""
        if not self.enabled:
            return None
        path = self.path(key)
        try:
            with open(path, "rb") as fp:
                raw = fp.read()
        except FileNotFoundError:
            return None
        except OSError as ex:
            raise CacheException("Cannot read cache entry", path) from ex
        try:
            return loadb(raw)
        except (DecoderException, EOFError, IndexError) as ex:
            logger.warning("corrupt cache entry %s (%s); recomputing", path, ex)
            try:
                os.remove(path)
            except OSError:
                pass
            return None

    def put(self, key, value):
        if not self.enabled:
            return
        path = self.path(key)
        try:
            encoded = dumpb(value, sort_keys=True)
        except EncoderException as ex:
            raise CacheException("Result cannot be encoded", str(ex)) from ex
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            tmp = "%s.%d.tmp" % (path, os.getpid())
            with open(tmp, "wb") as fp:
                fp.write(encoded)
            os.replace(tmp, path)
        except OSError as ex:
            raise CacheException("Cannot write cache entry", path) from ex

    def fetch(self, request, compute, recompute=False):
        """Cached result for request, computing and storing it on a miss

        Args:
            request: JSON-compatible description of the computation
            compute: callable returning the JSON-compatible result
            recompute: ignore a stored entry, recompute, compare and overwrite

        Returns:
            (result, hit)
        """
        key = request_key(request, self.version)
        stored = self.get(key)
        if stored is not None and not recompute:
            logger.info("cache hit %s", key[:12])
            return stored, True
        result = compute()
        if stored is not None and stored != result:
            logger.warning("cache entry %s disagrees with the recomputed result; overwriting", key[:12])
        self.put(key, result)
        return result, False
