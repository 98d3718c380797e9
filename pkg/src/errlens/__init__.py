"""errlens: turn interpreter errors into short, actionable messages."""

from .answers import (
    CustomizedAnswer,
    EnhancedMessage,
    SelectedAnswer,
    SelectionReason,
    clean_format,
    customize,
    select_answer,
    split_answer,
)
from .docs import doc_message
from .errors import (
    EmptyQuery,
    ErrlensError,
    MalformedTable,
    NotAnError,
    QuotaExhausted,
    TransportError,
    UnknownKind,
    UnparseableBody,
)
from .knowledge import KnowledgeTables, default_tables, load_tables
from .pipeline import Enhancement, enhance
from .queries import MistakeClass, SearchQuery, build_query, detect_common_syntax_mistake, fix_typo
from .stackoverflow import (
    AnswerRecord,
    FixtureTransport,
    LiveTransport,
    ThreadSummary,
    cached_search,
    fetch_answers,
    search,
)
from .summarize import SummaryConfig, luhn_summarize
from .tracebacks import KNOWN_KINDS, ParsedError, RawCapture, parse_traceback

__version__ = "0.1.0"

__all__ = [
    "AnswerRecord",
    "CustomizedAnswer",
    "EmptyQuery",
    "Enhancement",
    "EnhancedMessage",
    "ErrlensError",
    "FixtureTransport",
    "KNOWN_KINDS",
    "KnowledgeTables",
    "LiveTransport",
    "MalformedTable",
    "MistakeClass",
    "NotAnError",
    "ParsedError",
    "QuotaExhausted",
    "RawCapture",
    "SearchQuery",
    "SelectedAnswer",
    "SelectionReason",
    "SummaryConfig",
    "ThreadSummary",
    "TransportError",
    "UnknownKind",
    "UnparseableBody",
    "build_query",
    "cached_search",
    "clean_format",
    "customize",
    "default_tables",
    "detect_common_syntax_mistake",
    "doc_message",
    "enhance",
    "fetch_answers",
    "fix_typo",
    "load_tables",
    "luhn_summarize",
    "parse_traceback",
    "search",
    "select_answer",
    "split_answer",
]
