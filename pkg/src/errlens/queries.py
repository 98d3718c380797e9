"""Turn a parsed error into the search query a person would have typed.

Each error kind gets its own treatment: attribute and name errors are
rebuilt word by word through the lookup tables, syntax errors are matched
against a handful of common mistakes, and everything else falls back to
the raw kind and description.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from difflib import SequenceMatcher
from enum import Enum

from .errors import EmptyQuery
from .knowledge import KnowledgeTables
from .tracebacks import ParsedError, extract_quoted_words

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NON_LETTER = re.compile(r"[^A-Za-z]+")
_ELSE_IF = re.compile(r"\belse\s+if\b")
_WORD_IN = re.compile(r"\bin\b")

_BRACKET_PAIRS = (("(", ")"), ("[", "]"), ("{", "}"))


class MistakeClass(Enum):
    MISMATCHED_QUOTES = "mismatched_quotes"
    MISMATCHED_BRACKETS = "mismatched_brackets"
    FOR_LOOP_SYNTAX = "for_loop_syntax"
    WHILE_LOOP_SYNTAX = "while_loop_syntax"
    CONDITIONAL_SYNTAX = "conditional_syntax"


# Search term standing in for each mistake class.  These are phrases that
# match well-trodden question titles, not interpreter wording.
_MISTAKE_TERMS = {
    MistakeClass.MISMATCHED_QUOTES: "quotation marks",
    MistakeClass.MISMATCHED_BRACKETS: "bracket meanings",
    MistakeClass.FOR_LOOP_SYNTAX: "for loop",
    MistakeClass.WHILE_LOOP_SYNTAX: "while loop",
    MistakeClass.CONDITIONAL_SYNTAX: "else if syntax",
}


@dataclass(frozen=True)
class SearchQuery:
    """What gets sent to the search endpoint.

    typo_correction is not part of the query text; it rides along so the
    answer stage can suggest the corrected spelling to the user.
    """

    text: str
    tag: str = "python"
    min_answers: int = 1
    sort: str = "relevance"
    page_size: int = 10
    typo_correction: str | None = None


def reformulate_word(word: str, kb: KnowledgeTables) -> str:
    """Swap a language-specific token for its most widespread spelling.

    The replacement is the row's top token stripped of non-letter
    characters; when nothing is left (operators like ==), the original
    word survives.
    """
    row = kb.row_for_token(word)
    if row is None:
        return word
    stripped = _NON_LETTER.sub("", row.top_token())
    return stripped or word


def map_datatype(word: str, kb: KnowledgeTables) -> str:
    """Rewrite a bare interpreter type name to its everyday English name."""
    return kb.datatypes.get(word, word)


def apply_synonym(word: str, kb: KnowledgeTables) -> str:
    """Replace a word by its recorded synonym, if one exists."""
    entry = kb.synonyms.get(word.lower())
    return entry[0] if entry else word


def associate_verb(word: str, kb: KnowledgeTables) -> str | None:
    """The verb most often paired with this word, or None."""
    entry = kb.verbs.get(word.lower())
    return entry[0] if entry else None


def fix_typo(word: str, kb: KnowledgeTables, cutoff: float = 0.6) -> str | None:
    """Closest keyword or builtin by gestalt similarity, or None.

    Keywords are tried before builtins, each alphabetically; an earlier
    candidate keeps a tie.  cutoff must be in (0, 1].
    """
    if not 0.0 < cutoff <= 1.0:
        raise ValueError(f"cutoff out of (0, 1]: {cutoff}")
    best = None
    best_ratio = 0.0
    for candidate in kb.catalogue():
        ratio = SequenceMatcher(None, word, candidate).ratio()
        if ratio > best_ratio:
            best = candidate
            best_ratio = ratio
    return best if best_ratio >= cutoff else None


def _unbalanced_quotes(line: str) -> bool:
    singles = doubles = 0
    escaped = False
    for ch in line:
        if escaped:
            escaped = False
            continue
        if ch == "\\":
            escaped = True
        elif ch == "'":
            singles += 1
        elif ch == '"':
            doubles += 1
    return singles % 2 == 1 or doubles % 2 == 1


def _unbalanced_brackets(line: str) -> bool:
    return any(line.count(a) != line.count(b) for a, b in _BRACKET_PAIRS)


def detect_common_syntax_mistake(err: ParsedError) -> MistakeClass | None:
    """Classify the offending line of a syntax error, most specific first.

    Quote balance is checked before brackets so that a stray quote does
    not read as a bracket problem; keyword checks come last.
    """
    if err.kind != "SyntaxError":
        return None
    line = err.offending_line
    if not line.strip():
        return None
    if _unbalanced_quotes(line):
        return MistakeClass.MISMATCHED_QUOTES
    if _unbalanced_brackets(line):
        return MistakeClass.MISMATCHED_BRACKETS
    first = line.split()[0]
    ends_colon = line.rstrip().endswith(":")
    if first == "for" and (not ends_colon or not _WORD_IN.search(line)):
        return MistakeClass.FOR_LOOP_SYNTAX
    if first == "while" and not ends_colon:
        return MistakeClass.WHILE_LOOP_SYNTAX
    if _ELSE_IF.search(line) or (first in ("if", "elif", "else") and not ends_colon):
        return MistakeClass.CONDITIONAL_SYNTAX
    return None


def _dedup(items) -> list[str]:
    seen: list[str] = []
    for item in items:
        if item not in seen:
            seen.append(item)
    return seen


def _substitute(word: str, kb: KnowledgeTables) -> str:
    return apply_synonym(map_datatype(reformulate_word(word, kb), kb), kb)


def _kind_and_description(err: ParsedError) -> str:
    if err.description:
        return f"{err.kind}: {err.description}"
    return err.kind


def build_query(err: ParsedError, kb: KnowledgeTables) -> SearchQuery:
    """Build the query for one parsed error.

    Raises EmptyQuery when the rules yield no text, which happens for
    description-only kinds whose description is blank.
    """
    typo = None
    if err.kind in ("AttributeError", "NameError"):
        words = _dedup(
            w for w in (_substitute(q, kb) for q in extract_quoted_words(err.description)) if w
        )
        verbs = _dedup(v for v in (associate_verb(w, kb) for w in words) if v)
        text = " ".join([err.kind, *words, *verbs])
    elif err.kind == "SyntaxError":
        # A near-miss spelling of a keyword or builtin is worth reporting
        # even when it is not what the query ends up searching for.
        for match in _IDENTIFIER.finditer(err.offending_line):
            fixed = fix_typo(match.group(), kb)
            if fixed is not None and fixed != match.group():
                typo = fixed
                break
        mistake = detect_common_syntax_mistake(err)
        if mistake is not None:
            text = _MISTAKE_TERMS[mistake]
        else:
            text = "SyntaxError: invalid syntax"
    elif err.kind == "TypeError":
        if "the first argument must be callable" in err.description:
            text = "must have first callable argument"
        elif "not all arguments converted during string formatting" in err.description:
            text = err.description
        else:
            text = _kind_and_description(err)
    elif err.kind in ("IndentationError", "TabError"):
        text = err.description
    elif err.kind == "KeyError":
        text = "KeyError"
    else:
        text = _kind_and_description(err)
    text = text.strip()
    if not text:
        raise EmptyQuery(f"no query text for {err.kind}")
    return SearchQuery(text=text, typo_correction=typo)


def fallback_query(err: ParsedError) -> SearchQuery:
    """The generic kind-and-description query, usable for any error."""
    return SearchQuery(text=_kind_and_description(err))
