import json
import time

import pytest

from errlens.errors import QuotaExhausted, TransportError
from errlens.queries import SearchQuery
from errlens.stackoverflow import (
    FixtureTransport,
    LiveTransport,
    cached_search,
    fetch_answers,
    normalize_query_key,
    search,
)


class PayloadTransport:
    """Serves canned payloads and counts how often it is asked."""

    def __init__(self, search_payload=None, answers_payload=None):
        self.search_payload = search_payload or {"items": []}
        self.answers_payload = answers_payload or {"items": []}
        self.search_calls = 0
        self.answer_calls = 0

    def fetch_search(self, query):
        self.search_calls += 1
        return self.search_payload

    def fetch_answers(self, question_ids):
        self.answer_calls += 1
        return self.answers_payload


def make_search_payload(*question_ids):
    return {
        "items": [
            {"question_id": qid, "title": f"Question {qid}", "answer_count": 2}
            for qid in question_ids
        ]
    }


def test_fixture_search_preserves_rank_order(fixtures_dir):
    transport = FixtureTransport(fixtures_dir)
    threads = search(SearchQuery(text="else if syntax"), transport)
    assert [t.relevance_rank for t in threads] == list(range(1, len(threads) + 1))
    assert threads[0].question_id == 9979970
    assert threads[1].question_id == 2391679
    assert all(t.answer_ids for t in threads)


def test_fixture_fetch_answers_marks_accepted(fixtures_dir):
    transport = FixtureTransport(fixtures_dir)
    threads = search(SearchQuery(text="else if syntax"), transport)
    answers = fetch_answers(threads, transport)
    thread_answers = answers[2391679]
    accepted = [a for a in thread_answers if a.accepted]
    assert [a.answer_id for a in accepted] == [2395167]
    assert accepted[0].body_html


def test_fixture_empty_search(fixtures_dir):
    transport = FixtureTransport(fixtures_dir)
    assert search(SearchQuery(text="ValueError: no matches here"), transport) == []


def test_fixture_missing_key_is_transport_error(fixtures_dir):
    transport = FixtureTransport(fixtures_dir)
    with pytest.raises(TransportError):
        search(SearchQuery(text="never recorded anywhere"), transport)


def test_fixture_key_normalization(fixtures_dir):
    transport = FixtureTransport(fixtures_dir)
    upper = search(SearchQuery(text="ELSE   IF syntax"), transport)
    lower = search(SearchQuery(text="else if syntax"), transport)
    assert upper == lower


def test_normalize_query_key():
    assert normalize_query_key("  KeyError ") == "keyerror"
    assert normalize_query_key("a\t b\nc") == "a b c"


def test_thread_lists_capped_at_page_size():
    transport = PayloadTransport(search_payload=make_search_payload(*range(1, 30)))
    threads = search(SearchQuery(text="x", page_size=10), transport)
    assert len(threads) == 10
    assert [t.relevance_rank for t in threads] == list(range(1, 11))


def test_search_skips_answerless_threads():
    payload = {
        "items": [
            {"question_id": 1, "title": "unanswered", "answer_count": 0},
            {"question_id": 2, "title": "answered", "answer_count": 3},
        ]
    }
    threads = search(SearchQuery(text="x"), PayloadTransport(search_payload=payload))
    assert [t.question_id for t in threads] == [2]
    assert threads[0].relevance_rank == 1


def test_search_unescapes_titles():
    payload = {"items": [{"question_id": 1, "title": "a &lt;b&gt; c", "answer_count": 1}]}
    threads = search(SearchQuery(text="x"), PayloadTransport(search_payload=payload))
    assert threads[0].title == "a <b> c"


def test_backoff_is_transport_error():
    payload = {"backoff": 12, "items": []}
    with pytest.raises(TransportError):
        search(SearchQuery(text="x"), PayloadTransport(search_payload=payload))


def test_zero_quota_is_quota_exhausted():
    payload = {"quota_remaining": 0, "items": []}
    with pytest.raises(QuotaExhausted):
        search(SearchQuery(text="x"), PayloadTransport(search_payload=payload))


def test_fetch_answers_groups_and_orders():
    threads = search(
        SearchQuery(text="x"),
        PayloadTransport(search_payload=make_search_payload(7, 8)),
    )
    answers_payload = {
        "items": [
            {"answer_id": 71, "question_id": 7, "score": 2, "is_accepted": False, "body": "<p>a</p>"},
            {"answer_id": 81, "question_id": 8, "score": 9, "is_accepted": True, "body": "<p>b</p>"},
            {"answer_id": 72, "question_id": 7, "score": 1, "is_accepted": False, "body": "<p>c</p>"},
            {"answer_id": 99, "question_id": 999, "score": 5, "is_accepted": False, "body": "<p>d</p>"},
            {"answer_id": 73, "question_id": 7, "score": 5, "is_accepted": False, "body": ""},
        ]
    }
    transport = PayloadTransport(
        search_payload=make_search_payload(7, 8), answers_payload=answers_payload
    )
    grouped = fetch_answers(threads, transport)
    assert [a.answer_id for a in grouped[7]] == [71, 72]
    assert [a.answer_id for a in grouped[8]] == [81]
    assert 999 not in grouped
    assert grouped[8][0].accepted is True


def test_fetch_answers_empty_thread_list():
    transport = PayloadTransport()
    assert fetch_answers([], transport) == {}
    assert transport.answer_calls == 0


def test_cached_search_hits_skip_transport(tmp_path):
    transport = PayloadTransport(search_payload=make_search_payload(5))
    query = SearchQuery(text="KeyError")
    first = cached_search(query, transport, tmp_path, ttl_seconds=3600)
    second = cached_search(query, transport, tmp_path, ttl_seconds=3600)
    assert first == second
    assert transport.search_calls == 1


def test_cached_search_expires(tmp_path, monkeypatch):
    transport = PayloadTransport(search_payload=make_search_payload(5))
    query = SearchQuery(text="KeyError")
    cached_search(query, transport, tmp_path, ttl_seconds=100)
    future = time.time() + 200
    monkeypatch.setattr(time, "time", lambda: future)
    cached_search(query, transport, tmp_path, ttl_seconds=100)
    assert transport.search_calls == 2


def test_cached_search_key_is_case_insensitive(tmp_path):
    transport = PayloadTransport(search_payload=make_search_payload(5))
    cached_search(SearchQuery(text="KeyError"), transport, tmp_path, ttl_seconds=3600)
    cached_search(SearchQuery(text="keyerror"), transport, tmp_path, ttl_seconds=3600)
    assert transport.search_calls == 1
    entries = [p for p in tmp_path.iterdir() if p.suffix == ".json"]
    assert len(entries) == 1


def test_cache_entries_are_whole_json_files(tmp_path):
    transport = PayloadTransport(search_payload=make_search_payload(5))
    cached_search(SearchQuery(text="KeyError"), transport, tmp_path, ttl_seconds=3600)
    entries = list(tmp_path.glob("*.json"))
    assert len(entries) == 1
    entry = json.loads(entries[0].read_text(encoding="utf-8"))
    assert entry["key"] == "keyerror"
    assert "payload" in entry and "fetched_at" in entry
    assert not list(tmp_path.glob("*.tmp"))


def test_cache_write_failure_degrades_to_uncached(tmp_path):
    blocked = tmp_path / "blocked"
    blocked.write_text("not a directory", encoding="utf-8")
    transport = PayloadTransport(search_payload=make_search_payload(5))
    threads = cached_search(SearchQuery(text="x"), transport, blocked, ttl_seconds=3600)
    assert [t.question_id for t in threads] == [5]


def test_corrupt_cache_entry_is_ignored(tmp_path):
    transport = PayloadTransport(search_payload=make_search_payload(5))
    query = SearchQuery(text="KeyError")
    cached_search(query, transport, tmp_path, ttl_seconds=3600)
    entry = next(tmp_path.glob("*.json"))
    entry.write_text("{ truncated", encoding="utf-8")
    threads = cached_search(query, transport, tmp_path, ttl_seconds=3600)
    assert [t.question_id for t in threads] == [5]
    assert transport.search_calls == 2


def test_fixture_transport_bypasses_cache(tmp_path, fixtures_dir):
    transport = FixtureTransport(fixtures_dir)
    threads = cached_search(
        SearchQuery(text="else if syntax"), transport, tmp_path, ttl_seconds=3600
    )
    assert threads
    assert not any(tmp_path.iterdir())


def test_live_transport_failure_maps_to_transport_error():
    # The autouse socket guard makes any real connection attempt fail,
    # which must surface as TransportError, not an httpx exception.
    transport = LiveTransport(api_base="http://127.0.0.1:9/api")
    with pytest.raises(TransportError):
        search(SearchQuery(text="whatever"), transport)
