"""Client for the community Q&A search API.

Two transports produce the same payload shape: LiveTransport speaks HTTP
to the real endpoint, FixtureTransport replays recorded payloads from a
directory.  Everything above the transport (parsing, caching, thread
ranking) is shared, so tests exercise the full path without a network.
"""

from __future__ import annotations

import hashlib
import html
import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import httpx

from .errors import QuotaExhausted, TransportError
from .queries import SearchQuery

DEFAULT_API_BASE = "https://api.stackexchange.com/2.3"
DEFAULT_TTL_SECONDS = 86400

_SITE = "stackoverflow"
_ANSWER_FILTER = "withbody"


@dataclass(frozen=True)
class ThreadSummary:
    """One question thread from a search, in relevance order (rank 1 first)."""

    question_id: int
    title: str
    relevance_rank: int
    answer_ids: tuple[int, ...] = ()


@dataclass(frozen=True)
class AnswerRecord:
    answer_id: int
    question_id: int
    score: int
    accepted: bool
    body_html: str


class Transport(Protocol):
    def fetch_search(self, query: SearchQuery) -> dict: ...

    def fetch_answers(self, question_ids: Sequence[int]) -> dict: ...


class LiveTransport:
    """Talks to the real API over HTTPS.

    The key is optional; without one the shared anonymous quota applies.
    Responses arrive gzip-compressed JSON, which httpx undoes for us.
    """

    def __init__(
        self,
        api_base: str | None = None,
        api_key: str | None = None,
        timeout: float = 10.0,
    ):
        self.api_base = (
            api_base or os.environ.get("ERRLENS_API_BASE") or DEFAULT_API_BASE
        ).rstrip("/")
        self.api_key = api_key if api_key is not None else os.environ.get("ERRLENS_API_KEY")
        self.timeout = timeout

    def _get(self, path: str, params: dict) -> dict:
        params = dict(params, site=_SITE)
        if self.api_key:
            params["key"] = self.api_key
        try:
            response = httpx.get(f"{self.api_base}{path}", params=params, timeout=self.timeout)
        except httpx.HTTPError as exc:
            raise TransportError(0, str(exc))
        if response.status_code != 200:
            raise TransportError(response.status_code, response.text[:200])
        try:
            payload = response.json()
        except ValueError:
            raise TransportError(response.status_code, "response body is not JSON")
        if "error_id" in payload:
            raise TransportError(
                response.status_code, str(payload.get("error_message", "unknown API error"))
            )
        return payload

    def fetch_search(self, query: SearchQuery) -> dict:
        return self._get(
            "/search/advanced",
            {
                "q": query.text,
                "tagged": query.tag,
                "answers": query.min_answers,
                "sort": query.sort,
                "order": "desc",
                "pagesize": query.page_size,
            },
        )

    def fetch_answers(self, question_ids: Sequence[int]) -> dict:
        ids = ";".join(str(q) for q in question_ids)
        return self._get(
            f"/questions/{ids}/answers",
            {"sort": "votes", "order": "desc", "filter": _ANSWER_FILTER},
        )


class FixtureTransport:
    """Replays recorded payloads from a directory, no sockets involved.

    index.json maps normalized query keys to search payload files and
    sorted semicolon-joined question id lists to answer payload files.
    """

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)
        with open(self.directory / "index.json", encoding="utf-8") as fh:
            self.index = json.load(fh)

    def _load(self, section: str, key: str) -> dict:
        name = self.index.get(section, {}).get(key)
        if name is None:
            raise TransportError(0, f"no {section} fixture recorded for key {key!r}")
        with open(self.directory / name, encoding="utf-8") as fh:
            return json.load(fh)

    def fetch_search(self, query: SearchQuery) -> dict:
        return self._load("search", normalize_query_key(query.text))

    def fetch_answers(self, question_ids: Sequence[int]) -> dict:
        return self._load("answers", ";".join(str(q) for q in sorted(question_ids)))


def normalize_query_key(text: str) -> str:
    """Lowercase, single-spaced form of the query text; the cache key."""
    return " ".join(text.lower().split())


def _check_payload(payload: dict) -> None:
    if "backoff" in payload:
        # Honoring the backoff would stall an interactive tool, so treat
        # it as an outage and degrade immediately.
        raise TransportError(200, f"server requested a backoff of {payload['backoff']}s")
    if payload.get("quota_remaining") == 0:
        raise QuotaExhausted("request quota exhausted")


def _threads_from_payload(payload: dict, query: SearchQuery) -> list[ThreadSummary]:
    _check_payload(payload)
    threads: list[ThreadSummary] = []
    for item in payload.get("items", []):
        ids = tuple(
            int(a["answer_id"]) for a in item.get("answers", ()) if "answer_id" in a
        )
        # Search payloads do not always inline answers; fall back to the
        # answer count to decide whether the thread is worth keeping.
        if not ids and not item.get("answer_count"):
            continue
        threads.append(
            ThreadSummary(
                question_id=int(item["question_id"]),
                title=html.unescape(item.get("title", "")),
                relevance_rank=len(threads) + 1,
                answer_ids=ids,
            )
        )
        if len(threads) >= query.page_size:
            break
    return threads


def search(query: SearchQuery, transport: Transport) -> list[ThreadSummary]:
    """Run a search and keep the threads that actually have answers."""
    return _threads_from_payload(transport.fetch_search(query), query)


def fetch_answers(
    threads: Sequence[ThreadSummary], transport: Transport
) -> dict[int, list[AnswerRecord]]:
    """Fetch every answer of the given threads, grouped by question id.

    Within a thread, answers keep the order the payload listed them in.
    Records with no body are useless downstream and are dropped here.
    """
    by_thread: dict[int, list[AnswerRecord]] = {t.question_id: [] for t in threads}
    if not threads:
        return by_thread
    payload = transport.fetch_answers([t.question_id for t in threads])
    _check_payload(payload)
    for item in payload.get("items", []):
        question_id = int(item.get("question_id", 0))
        if question_id not in by_thread:
            continue
        body = item.get("body", "")
        if not body:
            continue
        by_thread[question_id].append(
            AnswerRecord(
                answer_id=int(item["answer_id"]),
                question_id=question_id,
                score=int(item.get("score", 0)),
                accepted=bool(item.get("is_accepted", False)),
                body_html=body,
            )
        )
    return by_thread


def cached_search(
    query: SearchQuery,
    transport: Transport,
    cache_dir: Path | str,
    ttl_seconds: int = DEFAULT_TTL_SECONDS,
) -> list[ThreadSummary]:
    """search() with an on-disk payload cache.

    Entries are keyed by the normalized query text and expire after
    ttl_seconds.  Writes are atomic (write-then-rename) so a crash never
    leaves a truncated entry; cache write failures are swallowed because
    a cold cache is always an acceptable outcome.  Fixture transports
    bypass the cache entirely: replayed payloads are already local.
    """
    if isinstance(transport, FixtureTransport):
        return search(query, transport)
    key = normalize_query_key(query.text)
    cache_dir = Path(cache_dir)
    entry_path = cache_dir / (hashlib.sha256(key.encode("utf-8")).hexdigest() + ".json")
    try:
        with open(entry_path, encoding="utf-8") as fh:
            entry = json.load(fh)
        if entry.get("key") == key and time.time() - entry.get("fetched_at", 0) < ttl_seconds:
            return _threads_from_payload(entry["payload"], query)
    except (OSError, ValueError, KeyError):
        pass
    payload = transport.fetch_search(query)
    threads = _threads_from_payload(payload, query)
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump({"key": key, "fetched_at": time.time(), "payload": payload}, fh)
        os.replace(temp_name, entry_path)
    except OSError:
        pass
    return threads
