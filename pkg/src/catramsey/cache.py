"""Content-addressed on-disk cache for arrow verdicts.

Entries are JSON files named by a sha256 key over (format version, category
digest, query tuple).  A cached verdict is never trusted blindly: failing
verdicts replay their witness coloring on every read, and a deterministic
sample of holding verdicts is recomputed outright; anything that does not
check out is evicted with a warning and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings

from .core import FiniteCategory
from .arrows import ArrowQuery, ArrowVerdict, check_arrow, _domain_bundles_perms, _replay_witness
from .kernel import DEFAULT_BUDGET
from . import io as catio

FORMAT_VERSION = 2
CACHE_DIR_ENV = "CATRAMSEY_CACHE_DIR"

# recompute one in this many holding verdicts on read, chosen by key so the
# sample is stable across runs
VERIFY_SAMPLE_MOD = 16


def category_digest(cat: FiniteCategory) -> str:
    return hashlib.sha256(catio.dumps_category(cat).encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: str | None = None):
        if directory is None:
            directory = os.environ.get(CACHE_DIR_ENV)
        self.directory = directory
        self.hits = 0
        self.misses = 0
        self.evictions = 0
        if self.directory:
            os.makedirs(self.directory, exist_ok=True)

    @property
    def enabled(self) -> bool:
        return bool(self.directory)

    def key(self, cat_digest: str, query: tuple) -> str:
        blob = json.dumps([FORMAT_VERSION, cat_digest, list(query)], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def get(self, key: str) -> dict | None:
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                value = json.load(fh)
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, OSError):
            warnings.warn(f"discarding corrupt cache entry {key}")
            self.evict(key)
            return None
        if not isinstance(value, dict) or "holds" not in value:
            warnings.warn(f"discarding malformed cache entry {key}")
            self.evict(key)
            return None
        return value

    def put(self, key: str, value: dict) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(value, fh, sort_keys=True)
        os.replace(tmp, path)

    def evict(self, key: str) -> None:
        if not self.enabled:
            return
        try:
            os.remove(self._path(key))
            self.evictions += 1
        except FileNotFoundError:
            pass

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses, "evictions": self.evictions}


def _verdict_to_entry(v: ArrowVerdict) -> dict:
    return {
        "holds": v.holds,
        "witness": v.witness,
        "domain": v.domain,
        "nodes": v.nodes,
        "note": v.note,
    }


def _entry_to_verdict(entry: dict) -> ArrowVerdict:
    return ArrowVerdict(
        holds=entry["holds"],
        witness=entry["witness"],
        domain=entry["domain"],
        nodes=entry["nodes"],
        note=entry.get("note", ""),
    )


def cached_check_arrow(
    cache: ResultCache,
    cat: FiniteCategory,
    q: ArrowQuery,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    cat_digest: str | None = None,
) -> ArrowVerdict:
    if not cache.enabled:
        return check_arrow(cat, q, budget=budget, threads=threads)
    if cat_digest is None:
        cat_digest = category_digest(cat)
    key = cache.key(cat_digest, ("arrow", q.A, q.B, q.C, q.k, q.t, q.mode, budget))
    entry = cache.get(key)
    if entry is not None:
        verdict = _entry_to_verdict(entry)
        if _entry_checks_out(cache, cat, q, key, verdict, budget):
            cache.hits += 1
            return verdict
    cache.misses += 1
    verdict = check_arrow(cat, q, budget=budget, threads=threads)
    cache.put(key, _verdict_to_entry(verdict))
    return verdict


def _entry_checks_out(cache, cat, q, key, verdict: ArrowVerdict, budget) -> bool:
    if verdict.holds is False:
        if verdict.witness is None or not _replay_witness(cat, q, verdict.domain, verdict.witness):
            warnings.warn(f"cached witness failed replay; evicting {key}")
            cache.evict(key)
            return False
        return True
    # domain must still match the category (guards against digest collisions
    # in the face of tampering)
    items, _, _ = _domain_bundles_perms(cat, q)
    if list(verdict.domain) != list(items):
        warnings.warn(f"cached domain mismatch; evicting {key}")
        cache.evict(key)
        return False
    if int(key[:8], 16) % VERIFY_SAMPLE_MOD == 0:
        fresh = check_arrow(cat, q, budget=budget)
        if fresh.holds != verdict.holds:
            warnings.warn(f"cached verdict failed recomputation; evicting {key}")
            cache.evict(key)
            return False
    return True
