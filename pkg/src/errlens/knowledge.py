"""Load and validate the bundled lookup tables.

Six TSV files drive query construction and the documentation fallback:
cross-language syntax concepts, word/verb associations, synonyms, the
keyword and builtin catalogue, datatype display names, and documentation
excerpts.  Format: UTF-8, tab-separated, `#` starts a comment line, blank
lines are skipped, no escaping of tabs inside fields.

Validation is strict: a malformed row fails the load with its file and
line number rather than limping along with partial tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import MalformedTable
from .tracebacks import KNOWN_KINDS

_DATA_DIR = Path(__file__).parent / "data"

_VERB_TOKEN = re.compile(r"^[a-z]+$")
_KEYWORD_CLASSES = frozenset({"keyword", "builtin"})
_DATATYPE_KEYS = frozenset({"int", "bool", "str", "dict"})

# Substrings that must not appear in a documentation excerpt: excerpts are
# plain prose, no markup and no version churn notes.
_EXCERPT_BANNED = ("http://", "https://", "<a ", "changed in version", "new in version")


@dataclass(frozen=True)
class SyntaxRow:
    """One cross-language concept: the tokens that express it, with the
    number of surveyed languages using each token."""

    concept_id: str
    entries: tuple[tuple[str, int], ...]

    def top_token(self) -> str:
        """Token used by the most languages; ties break lexicographically."""
        return sorted(self.entries, key=lambda e: (-e[1], e[0]))[0][0]


@dataclass
class KnowledgeTables:
    syntax_rows: tuple[SyntaxRow, ...]
    verbs: dict[str, tuple[str, int]]
    synonyms: dict[str, tuple[str, float]]
    keywords: frozenset[str]
    builtins: frozenset[str]
    datatypes: dict[str, str]
    doc_excerpts: dict[str, str]

    def __post_init__(self):
        # Token lookup across rows; the first row declaring a token wins.
        index: dict[str, SyntaxRow] = {}
        for row in self.syntax_rows:
            for token, _ in row.entries:
                index.setdefault(token, row)
        self._token_index = index

    def row_for_token(self, token: str) -> SyntaxRow | None:
        return self._token_index.get(token)

    def catalogue(self) -> tuple[str, ...]:
        """Keywords then builtins, each sorted: the typo-repair search order."""
        return tuple(sorted(self.keywords)) + tuple(sorted(self.builtins))


def _rows(path: Path, columns: int):
    """Yield (line_number, fields) for each data row of a TSV file."""
    if not path.is_file():
        raise MalformedTable(path.name, 0, "missing table file")
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = [f.strip() for f in line.split("\t")]
            if len(fields) != columns:
                raise MalformedTable(
                    path.name, lineno, f"expected {columns} columns, got {len(fields)}"
                )
            if any(not f for f in fields):
                raise MalformedTable(path.name, lineno, "empty field")
            yield lineno, fields


def _positive_int(path: Path, lineno: int, text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise MalformedTable(path.name, lineno, f"{what} is not an integer: {text!r}")
    if value < 1:
        raise MalformedTable(path.name, lineno, f"{what} must be >= 1, got {value}")
    return value


def _load_syntax(path: Path) -> tuple[SyntaxRow, ...]:
    order: list[str] = []
    grouped: dict[str, list[tuple[str, int]]] = {}
    for lineno, (concept, token, count_text) in _rows(path, 3):
        count = _positive_int(path, lineno, count_text, "language_count")
        if concept not in grouped:
            order.append(concept)
            grouped[concept] = []
        if any(token == t for t, _ in grouped[concept]):
            raise MalformedTable(path.name, lineno, f"duplicate token {token!r} in row {concept!r}")
        grouped[concept].append((token, count))
    return tuple(SyntaxRow(c, tuple(grouped[c])) for c in order)


def _load_verbs(path: Path) -> dict[str, tuple[str, int]]:
    verbs: dict[str, tuple[str, int]] = {}
    for lineno, (word, verb, freq_text) in _rows(path, 3):
        freq = _positive_int(path, lineno, freq_text, "frequency")
        if not _VERB_TOKEN.match(verb):
            raise MalformedTable(path.name, lineno, f"verb is not a lowercase token: {verb!r}")
        key = word.lower()
        if key in verbs:
            raise MalformedTable(path.name, lineno, f"duplicate word {word!r}")
        verbs[key] = (verb, freq)
    return verbs


def _load_synonyms(path: Path) -> dict[str, tuple[str, float]]:
    synonyms: dict[str, tuple[str, float]] = {}
    for lineno, (word, synonym, sim_text) in _rows(path, 3):
        try:
            similarity = float(sim_text)
        except ValueError:
            raise MalformedTable(path.name, lineno, f"similarity is not a number: {sim_text!r}")
        if not 0.0 < similarity <= 1.0:
            raise MalformedTable(path.name, lineno, f"similarity out of (0, 1]: {similarity}")
        if synonym.lower() == word.lower():
            raise MalformedTable(path.name, lineno, f"synonym equals word: {word!r}")
        key = word.lower()
        if key in synonyms:
            raise MalformedTable(path.name, lineno, f"duplicate word {word!r}")
        synonyms[key] = (synonym, similarity)
    return synonyms


def _load_keywords(path: Path) -> tuple[frozenset[str], frozenset[str]]:
    keywords: set[str] = set()
    builtins_: set[str] = set()
    for lineno, (token, cls) in _rows(path, 2):
        if cls not in _KEYWORD_CLASSES:
            raise MalformedTable(path.name, lineno, f"unknown class {cls!r}")
        if token in keywords or token in builtins_:
            raise MalformedTable(path.name, lineno, f"duplicate token {token!r}")
        if cls == "keyword":
            if token != token.lower():
                raise MalformedTable(path.name, lineno, f"keyword not lowercase: {token!r}")
            keywords.add(token)
        else:
            builtins_.add(token)
    return frozenset(keywords), frozenset(builtins_)


def _load_datatypes(path: Path) -> dict[str, str]:
    table: dict[str, str] = {}
    last_line = 0
    for lineno, (name, replacement) in _rows(path, 2):
        last_line = lineno
        if name in table:
            raise MalformedTable(path.name, lineno, f"duplicate datatype {name!r}")
        table[name] = replacement
    if set(table) != _DATATYPE_KEYS:
        raise MalformedTable(
            path.name, last_line, f"datatype keys must be exactly {sorted(_DATATYPE_KEYS)}"
        )
    return table


def _load_doc_excerpts(path: Path) -> dict[str, str]:
    excerpts: dict[str, str] = {}
    last_line = 0
    for lineno, (kind, excerpt) in _rows(path, 2):
        last_line = lineno
        if kind in excerpts:
            raise MalformedTable(path.name, lineno, f"duplicate kind {kind!r}")
        lowered = excerpt.lower()
        if any(banned in lowered for banned in _EXCERPT_BANNED):
            raise MalformedTable(path.name, lineno, f"excerpt for {kind!r} contains banned content")
        excerpts[kind] = excerpt
    if set(excerpts) != KNOWN_KINDS:
        missing = sorted(KNOWN_KINDS - set(excerpts))
        extra = sorted(set(excerpts) - KNOWN_KINDS)
        raise MalformedTable(
            path.name, last_line, f"kind coverage mismatch (missing {missing}, extra {extra})"
        )
    return excerpts


def load_tables(data_dir: Path) -> KnowledgeTables:
    """Load all six tables from a directory, validating as we go.

    Deterministic: the same bytes always produce equal tables.
    """
    data_dir = Path(data_dir)
    keywords, builtins_ = _load_keywords(data_dir / "keywords.tsv")
    return KnowledgeTables(
        syntax_rows=_load_syntax(data_dir / "syntax_table.tsv"),
        verbs=_load_verbs(data_dir / "verbs.tsv"),
        synonyms=_load_synonyms(data_dir / "synonyms.tsv"),
        keywords=keywords,
        builtins=builtins_,
        datatypes=_load_datatypes(data_dir / "datatypes.tsv"),
        doc_excerpts=_load_doc_excerpts(data_dir / "doc_excerpts.tsv"),
    )


@lru_cache(maxsize=1)
def default_tables() -> KnowledgeTables:
    """The tables bundled with the package, loaded once per process."""
    return load_tables(_DATA_DIR)
