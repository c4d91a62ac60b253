import json
import os

import pytest

from catramsey.arrows import ArrowQuery, check_arrow
from catramsey.cache import ResultCache, cached_check_arrow, category_digest
from conftest import obj


def _lo5_failing_query(lo6):
    return ArrowQuery(obj(lo6, "LO", 2), obj(lo6, "LO", 3), obj(lo6, "LO", 5), 2, 1)


def _key_for(cache, cat, q, budget=10**8):
    return cache.key(category_digest(cat), ("arrow", q.A, q.B, q.C, q.k, q.t, q.mode, budget))


def test_round_trip_and_counters(tmp_path, lo6):
    cache = ResultCache(str(tmp_path))
    q = _lo5_failing_query(lo6)
    first = cached_check_arrow(cache, lo6, q)
    assert cache.stats() == {"hits": 0, "misses": 1, "evictions": 0}
    second = cached_check_arrow(cache, lo6, q)
    assert cache.stats()["hits"] == 1
    assert (first.holds, first.witness, first.domain) == (second.holds, second.witness, second.domain)


def test_persists_across_instances(tmp_path, lo6):
    q = _lo5_failing_query(lo6)
    cached_check_arrow(ResultCache(str(tmp_path)), lo6, q)
    reopened = ResultCache(str(tmp_path))
    cached_check_arrow(reopened, lo6, q)
    assert reopened.stats()["hits"] == 1


def test_cache_never_changes_verdicts(tmp_path, lo6, inj3):
    cache = ResultCache(str(tmp_path))
    cells = [
        (lo6, _lo5_failing_query(lo6)),
        (lo6, ArrowQuery(obj(lo6, "LO", 2), obj(lo6, "LO", 3), obj(lo6, "LO", 6), 2, 1)),
        (inj3, ArrowQuery(obj(inj3, "Inj", 1), obj(inj3, "Inj", 2), obj(inj3, "Inj", 3), 2, 1)),
    ]
    for cat, q in cells:
        plain = check_arrow(cat, q)
        cold = cached_check_arrow(cache, cat, q)
        warm = cached_check_arrow(cache, cat, q)
        assert plain.holds == cold.holds == warm.holds
        assert plain.witness == cold.witness == warm.witness


def test_poisoned_witness_is_evicted(tmp_path, lo6):
    cache = ResultCache(str(tmp_path))
    q = _lo5_failing_query(lo6)
    cached_check_arrow(cache, lo6, q)
    key = _key_for(cache, lo6, q)
    path = os.path.join(str(tmp_path), key + ".json")
    with open(path, encoding="utf-8") as fh:
        entry = json.load(fh)
    # a constant coloring can never defeat the arrow, so replay must reject it
    entry["witness"] = [0] * len(entry["witness"])
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(entry, fh)
    with pytest.warns(UserWarning, match="failed replay"):
        v = cached_check_arrow(cache, lo6, q)
    assert v.holds is False
    assert cache.evictions == 1
    # the recomputed entry is written back and is healthy again
    assert cached_check_arrow(cache, lo6, q).holds is False


def test_corrupt_json_is_evicted(tmp_path, lo6):
    cache = ResultCache(str(tmp_path))
    q = _lo5_failing_query(lo6)
    cached_check_arrow(cache, lo6, q)
    key = _key_for(cache, lo6, q)
    path = os.path.join(str(tmp_path), key + ".json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("{not json")
    with pytest.warns(UserWarning, match="corrupt"):
        v = cached_check_arrow(cache, lo6, q)
    assert v.holds is False
    assert not os.path.exists(path) or json.load(open(path))


def test_malformed_entry_is_evicted(tmp_path, lo6):
    cache = ResultCache(str(tmp_path))
    q = _lo5_failing_query(lo6)
    cached_check_arrow(cache, lo6, q)
    key = _key_for(cache, lo6, q)
    path = os.path.join(str(tmp_path), key + ".json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"unexpected": True}, fh)
    with pytest.warns(UserWarning, match="malformed"):
        assert cached_check_arrow(cache, lo6, q).holds is False


def test_distinct_queries_and_categories_do_not_collide(tmp_path, lo6, inj3):
    cache = ResultCache(str(tmp_path))
    q = _lo5_failing_query(lo6)
    q2 = ArrowQuery(q.A, q.B, q.C, q.k, 2)
    keys = {
        _key_for(cache, lo6, q),
        _key_for(cache, lo6, q2),
        _key_for(cache, inj3, q),
    }
    assert len(keys) == 3


def test_disabled_cache_passes_through(lo6, monkeypatch):
    monkeypatch.delenv("CATRAMSEY_CACHE_DIR", raising=False)
    cache = ResultCache(None)
    assert not cache.enabled
    q = _lo5_failing_query(lo6)
    assert cached_check_arrow(cache, lo6, q).holds is False
    assert cache.stats() == {"hits": 0, "misses": 0, "evictions": 0}


def test_directory_from_environment(tmp_path, lo6, monkeypatch):
    monkeypatch.setenv("CATRAMSEY_CACHE_DIR", str(tmp_path))
    cache = ResultCache()
    assert cache.enabled
    cached_check_arrow(cache, lo6, _lo5_failing_query(lo6))
    assert any(name.endswith(".json") for name in os.listdir(str(tmp_path)))
