"""Official-documentation fallback messages.

No network, no search: each known error kind maps to a bundled excerpt
from the reference documentation.  The error's description plays no part
here, and the excerpt is never trimmed to a sentence budget.
"""

from __future__ import annotations

from .answers import EnhancedMessage, split_sentences
from .errors import UnknownKind
from .knowledge import KnowledgeTables

_DOCS_URL = "https://docs.python.org/3/library/exceptions.html"


def doc_message(kind: str, kb: KnowledgeTables) -> EnhancedMessage:
    """The documentation excerpt for an error kind, as a message.

    Raises UnknownKind for kinds without a bundled excerpt.
    """
    excerpt = kb.doc_excerpts.get(kind)
    if excerpt is None:
        raise UnknownKind(f"no documentation excerpt for {kind!r}")
    return EnhancedMessage(
        sentences=tuple(split_sentences(excerpt)),
        code_example=None,
        source_answer_id=None,
        source_url=f"{_DOCS_URL}#{kind}",
    )
