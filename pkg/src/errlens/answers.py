"""Select, split, and customize a community answer for the error at hand.

The answer that gets shown is chosen once (accepted beats score), its
HTML body is separated into prose sentences and code blocks, and then
both are nudged toward the user's actual error: error lines inside code
examples are rewritten to the error they just hit, and a detected typo
becomes a leading suggestion sentence.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass
from enum import Enum
from html.parser import HTMLParser
from typing import Sequence

from .errors import UnparseableBody
from .stackoverflow import AnswerRecord, ThreadSummary
from .summarize import SummaryConfig, luhn_summarize
from .tracebacks import ParsedError

# Lines inside code examples that state an error outcome.  Matching ones
# get replaced with the user's own error text.
_ERROR_LIKE = re.compile(r"^\s*\w*Error(: .*)?$")
_TRACEBACK_HEADER = "Traceback (most recent call last):"

# A line that only carries caret markers pointing into the line above.
_CARET_ONLY = re.compile(r"^[ \t]*[~^][ \t~^]*$")

_BLOCK_TAGS = frozenset(
    {"p", "div", "br", "li", "ul", "ol", "blockquote", "hr", "tr", "table",
     "h1", "h2", "h3", "h4", "h5", "h6"}
)

# Tokens that end with a period without ending a sentence.
_ABBREVIATIONS = frozenset(
    {"e.g", "i.e", "etc", "vs", "cf", "al", "approx", "dr", "mr", "mrs", "ms", "st", "pp"}
)


class SelectionReason(Enum):
    ACCEPTED = "accepted"
    TOP_SCORE = "top_score"


@dataclass(frozen=True)
class SelectedAnswer:
    record: AnswerRecord
    thread_rank: int
    reason: SelectionReason


@dataclass(frozen=True)
class CustomizedAnswer:
    sentences: tuple[str, ...]
    code_blocks: tuple[str, ...]
    substitutions_made: int
    typo_suggestion: str | None
    suggested_line: str | None


@dataclass(frozen=True)
class EnhancedMessage:
    """The final product: a few sentences, an optional code example, and
    where the advice came from."""

    sentences: tuple[str, ...]
    code_example: str | None
    source_answer_id: int | None
    source_url: str


def select_answer(
    threads: Sequence[ThreadSummary],
    answers_by_thread: dict[int, list[AnswerRecord]],
) -> SelectedAnswer | None:
    """Pick the answer to show, or None when nothing qualifies.

    First accepted answer wins, scanning threads in relevance order and
    answers in listed order.  Failing that, the highest score above zero
    wins; ties prefer the better-ranked thread, then the lower answer id.
    """
    ordered = sorted(threads, key=lambda t: t.relevance_rank)
    for thread in ordered:
        for record in answers_by_thread.get(thread.question_id, ()):
            if record.accepted:
                return SelectedAnswer(record, thread.relevance_rank, SelectionReason.ACCEPTED)
    best: tuple[tuple[int, int, int], AnswerRecord, int] | None = None
    for thread in ordered:
        for record in answers_by_thread.get(thread.question_id, ()):
            if record.score <= 0:
                continue
            order_key = (-record.score, thread.relevance_rank, record.answer_id)
            if best is None or order_key < best[0]:
                best = (order_key, record, thread.relevance_rank)
    if best is None:
        return None
    return SelectedAnswer(best[1], best[2], SelectionReason.TOP_SCORE)


class _BodyParser(HTMLParser):
    """Separates an answer body into prose text and <pre> code blocks.

    Inline <code> spans stay part of the surrounding prose; only <pre>
    blocks count as code examples.
    """

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.prose_parts: list[str] = []
        self.code_blocks: list[str] = []
        self._pre_depth = 0
        self._code_parts: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag == "pre":
            if self._pre_depth == 0:
                self._code_parts = []
            self._pre_depth += 1
        elif self._pre_depth == 0 and tag in _BLOCK_TAGS:
            self.prose_parts.append("\n")

    def handle_endtag(self, tag):
        if tag == "pre":
            if self._pre_depth:
                self._pre_depth -= 1
                if self._pre_depth == 0:
                    block = "".join(self._code_parts)
                    if block.strip():
                        self.code_blocks.append(block)
        elif self._pre_depth == 0 and tag in _BLOCK_TAGS:
            self.prose_parts.append("\n")

    def handle_data(self, data):
        if self._pre_depth:
            self._code_parts.append(data)
        else:
            self.prose_parts.append(data)


def split_sentences(text: str) -> list[str]:
    """Split prose into sentences, keeping terminal punctuation.

    Splits happen after ./!/? followed by whitespace, except when the
    preceding token is a common abbreviation or a single initial.
    """
    text = " ".join(text.split())
    if not text:
        return []
    sentences = []
    start = 0
    for match in re.finditer(r"[.!?]+(?=\s)", text):
        token = text[: match.end()].rsplit(None, 1)[-1]
        bare = token.rstrip(".!?").lower()
        if bare in _ABBREVIATIONS or (len(bare) == 1 and token[-1] == "."):
            continue
        sentence = text[start : match.end()].strip()
        if sentence:
            sentences.append(sentence)
        start = match.end()
    rest = text[start:].strip()
    if rest:
        sentences.append(rest)
    return sentences


def split_answer(record: AnswerRecord) -> tuple[list[str], list[str]]:
    """Break an answer body into (prose sentences, code blocks).

    Raises UnparseableBody when neither comes out, which is the signal
    to fall back to the unenhanced traceback.
    """
    parser = _BodyParser()
    parser.feed(record.body_html)
    parser.close()
    sentences: list[str] = []
    for paragraph in "".join(parser.prose_parts).split("\n"):
        sentences.extend(split_sentences(paragraph))
    code_blocks = parser.code_blocks
    if not sentences and not code_blocks:
        raise UnparseableBody(f"answer {record.answer_id} has no usable content")
    return sentences, code_blocks


def _error_replacement(err: ParsedError) -> str:
    if err.description:
        return f"{err.kind}: {err.description}"
    return err.kind


def _flagged_lines(code_blocks: Sequence[str]) -> list[str]:
    """Code lines an answerer marked as the bad one: followed by a caret
    marker line, or carried on a >>> prompt."""
    flagged = []
    for block in code_blocks:
        lines = block.split("\n")
        for i, line in enumerate(lines):
            if not line.strip() or _CARET_ONLY.match(line):
                continue
            follower = lines[i + 1] if i + 1 < len(lines) else ""
            if (_CARET_ONLY.match(follower) and "^" in follower) or line.lstrip().startswith(">>>"):
                flagged.append(line)
    return flagged


def customize(
    split: tuple[Sequence[str], Sequence[str]],
    err: ParsedError,
    typo: str | None = None,
) -> CustomizedAnswer:
    """Rewrite a split answer around the user's own error.

    Error-stating lines inside code blocks become the user's error text;
    non-matching lines are never altered.  When the syntax caret points
    past the end of the offending line and the answer marks exactly one
    line of code as offending, that line is surfaced as the suggested
    rewrite of the user's line.
    """
    sentences, code_blocks = list(split[0]), list(split[1])
    replacement = _error_replacement(err)
    substitutions = 0
    new_blocks = []
    for block in code_blocks:
        lines = block.split("\n")
        for i, line in enumerate(lines):
            if line.strip() == _TRACEBACK_HEADER or _ERROR_LIKE.match(line):
                lines[i] = replacement
                substitutions += 1
        new_blocks.append("\n".join(lines))

    suggested = None
    if (
        err.kind == "SyntaxError"
        and err.caret_column is not None
        and err.caret_column >= len(err.offending_line)
    ):
        flagged = _flagged_lines(code_blocks)
        if len(flagged) == 1:
            text = flagged[0].strip()
            if text.startswith(">>>"):
                text = text[3:].strip()
            suggested = text

    if typo:
        sentences = [f"Did you mean '{typo}'?"] + sentences
    return CustomizedAnswer(
        sentences=tuple(sentences),
        code_blocks=tuple(new_blocks),
        substitutions_made=substitutions,
        typo_suggestion=typo,
        suggested_line=suggested,
    )


def clean_format(text: str, code: bool = False) -> str:
    """Normalize text for display.

    HTML entities are decoded until a fixed point so pre-escaped bodies
    (&amp;gt; and friends) come out as plain characters no matter how
    many encoding layers they went through.  Prose gets space runs
    collapsed and lines trimmed; code keeps its indentation and only
    loses trailing whitespace and outer blank lines.
    """
    while True:
        decoded = html.unescape(text)
        if decoded == text:
            break
        text = decoded
    if code:
        lines = [line.rstrip() for line in text.split("\n")]
        while lines and not lines[0]:
            lines.pop(0)
        while lines and not lines[-1]:
            lines.pop()
        return "\n".join(lines)
    text = re.sub(r" {2,}", " ", text)
    return "\n".join(line.strip() for line in text.split("\n"))


def assemble(
    custom: CustomizedAnswer,
    selected: SelectedAnswer,
    config: SummaryConfig | None = None,
) -> EnhancedMessage:
    """Summarize a customized answer into the final message.

    The first code block becomes the example; the rest are dropped as
    diminishing returns for a terminal-sized message.
    """
    config = config or SummaryConfig()
    chosen = luhn_summarize(list(custom.sentences), config)
    sentences = tuple(s for s in (clean_format(sentence) for sentence in chosen) if s)
    code = clean_format(custom.code_blocks[0], code=True) if custom.code_blocks else ""
    answer_id = selected.record.answer_id
    return EnhancedMessage(
        sentences=sentences,
        code_example=code or None,
        source_answer_id=answer_id,
        source_url=f"https://stackoverflow.com/a/{answer_id}",
    )
