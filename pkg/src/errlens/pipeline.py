"""End-to-end enhancement: parsed error in, display-ready message out.

This is the module the CLI and the service share.  It owns the policy
decisions: fall back to the generic query when the specific one is empty,
give up (return None) when no answer qualifies, and let transport-level
failures propagate so callers can degrade loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .answers import EnhancedMessage, assemble, customize, select_answer, split_answer
from .docs import doc_message
from .errors import EmptyQuery, UnknownKind, UnparseableBody
from .knowledge import KnowledgeTables
from .queries import SearchQuery, build_query, fallback_query
from .stackoverflow import (
    DEFAULT_TTL_SECONDS,
    LiveTransport,
    Transport,
    cached_search,
    fetch_answers,
    search,
)
from .summarize import SummaryConfig
from .tracebacks import ParsedError


@dataclass(frozen=True)
class Enhancement:
    message: EnhancedMessage
    query: SearchQuery | None
    selection_reason: str | None


def summary_config_for(max_sentences: int) -> SummaryConfig:
    """A config honouring a user-chosen sentence budget."""
    return SummaryConfig(
        max_sentences=max_sentences,
        min_sentences_to_summarize=max(5, max_sentences + 1),
    )


def enhance(
    err: ParsedError,
    kb: KnowledgeTables,
    *,
    source: str = "so",
    transport: Transport | None = None,
    cache_dir: Path | str | None = None,
    ttl_seconds: int = DEFAULT_TTL_SECONDS,
    config: SummaryConfig | None = None,
) -> Enhancement | None:
    """Enhance one parsed error, or return None when it cannot be done.

    source "so" searches the community archive; "doc" uses the bundled
    documentation excerpts.  TransportError and QuotaExhausted propagate
    to the caller; every content-level dead end becomes None.
    """
    if source == "doc":
        try:
            return Enhancement(doc_message(err.kind, kb), None, None)
        except UnknownKind:
            return None
    if source != "so":
        raise ValueError(f"unknown source {source!r}")
    transport = transport or LiveTransport()
    try:
        query = build_query(err, kb)
    except EmptyQuery:
        query = fallback_query(err)
    if cache_dir is not None:
        threads = cached_search(query, transport, cache_dir, ttl_seconds)
    else:
        threads = search(query, transport)
    if not threads:
        return None
    answers_by_thread = fetch_answers(threads, transport)
    selected = select_answer(threads, answers_by_thread)
    if selected is None:
        return None
    try:
        split = split_answer(selected.record)
    except UnparseableBody:
        return None
    custom = customize(split, err, typo=query.typo_correction)
    message = assemble(custom, selected, config)
    if not message.sentences and not message.code_example:
        return None
    return Enhancement(message, query, selected.reason.value)


def format_structured(enhancement: Enhancement) -> dict:
    """The machine-readable shape: exactly these five fields, always."""
    message = enhancement.message
    return {
        "sentences": list(message.sentences),
        "code": message.code_example,
        "source_url": message.source_url,
        "query": enhancement.query.text if enhancement.query else None,
        "selection_reason": enhancement.selection_reason,
    }


def format_plain(fields: dict) -> str:
    """Render structured fields as the human-readable block."""
    parts = []
    if fields.get("sentences"):
        parts.append("\n".join(fields["sentences"]))
    if fields.get("code"):
        parts.append(fields["code"])
    parts.append(f"source: {fields['source_url']}")
    return "\n\n".join(parts)
