"""Parse interpreter stderr into a structured error record.

The interpreter prints tracebacks in a small family of layouts (runtime
frames, syntax reports with a caret line, chained exceptions).  This module
normalizes all of them into one ParsedError so the rest of the pipeline
never touches raw stderr again.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NotAnError

# ---------------------------------------------------------------------------
# error kinds

# Kinds with dedicated handling downstream.  Anything else is carried
# through verbatim and treated generically.
KNOWN_KINDS = frozenset(
    {
        "AttributeError",
        "ImportError",
        "IndentationError",
        "IndexError",
        "KeyError",
        "NameError",
        "SyntaxError",
        "TabError",
        "TypeError",
        "ValueError",
        "ZeroDivisionError",
    }
)

# Raisables whose names carry no error/exception/warning suffix but still
# terminate a traceback.
_BARE_RAISABLE = frozenset(
    {
        "StopIteration",
        "StopAsyncIteration",
        "GeneratorExit",
        "KeyboardInterrupt",
        "SystemExit",
    }
)

# ---------------------------------------------------------------------------
# line patterns

# Final line of a report: a dotted exception name, optionally ": detail".
_ERROR_LINE = re.compile(r"^([A-Za-z_][\w.]*)(?::\s?(.*))?$")

# Stack frame header.  Syntax reports omit the ", in <scope>" part.
_FRAME_LINE = re.compile(r'^\s*File "(.*)", line (\d+)(?:, in .*)?\s*$')

# Caret marker line under an echoed source line.  Newer interpreters mix in
# tildes around the caret.
_CARET_LINE = re.compile(r"^[ \t]*[~^][ \t~^]*$")

# Markers separating the blocks of a chained traceback.  Only the final
# block describes the error the user actually saw last.
_CHAIN_MARKERS = (
    "During handling of the above exception, another exception occurred:",
    "The above exception was the direct cause of the following exception:",
)

_IMPORT_STMT = re.compile(r"^\s*import\s+(.+?)\s*$")
_FROM_IMPORT = re.compile(r"^\s*from\s+([A-Za-z_][\w.]*)\s+import\b")
_MODULE_NAME = re.compile(r"^[A-Za-z_][\w.]*$")


@dataclass(frozen=True)
class RawCapture:
    """Unprocessed stderr plus whatever we know about its origin."""

    stderr_text: str
    source_path: str | None = None
    source_text: str = ""


@dataclass(frozen=True)
class ParsedError:
    """One interpreter error, normalized.

    caret_column is an offset into offending_line (after stripping the
    indentation the interpreter echoed), or None when no caret line was
    printed.  It may equal len(offending_line) or one past it: the
    interpreter points past the end for errors at end of line.
    """

    kind: str
    description: str
    file: str
    line_number: int
    offending_line: str
    caret_column: int | None = None
    imports: tuple[str, ...] = field(default_factory=tuple)


def _plausible_error_name(name: str) -> bool:
    last = name.rsplit(".", 1)[-1]
    if last in _BARE_RAISABLE:
        return True
    return last.lower().endswith(("error", "exception", "warning"))


def _final_block(lines: list[str]) -> list[str]:
    """Return the lines after the last chain marker, or all lines."""
    start = 0
    for i, line in enumerate(lines):
        if line.strip() in _CHAIN_MARKERS:
            start = i + 1
    return lines[start:]


def parse_traceback(capture: RawCapture) -> ParsedError:
    """Parse the final error report out of captured stderr.

    Raises NotAnError when no line looks like an interpreter error report.
    Chained tracebacks reduce to their final block; the deepest frame that
    belongs to capture.source_path wins, otherwise the deepest frame.
    """
    lines = _final_block(capture.stderr_text.splitlines())

    # Locate the error line bottom-up; skip trailing noise that does not
    # parse as "Name: detail".
    error_idx = None
    kind = ""
    description = ""
    for i in range(len(lines) - 1, -1, -1):
        stripped = lines[i].strip()
        if not stripped:
            continue
        m = _ERROR_LINE.match(stripped)
        if m and _plausible_error_name(m.group(1)):
            error_idx = i
            kind = m.group(1)
            description = (m.group(2) or "").strip()
            break
    if error_idx is None:
        raise NotAnError("stderr does not end in an error report")

    # Collect frame headers above the error line.
    frames: list[tuple[int, str, int]] = []
    for i in range(error_idx):
        m = _FRAME_LINE.match(lines[i])
        if m:
            frames.append((i, m.group(1), int(m.group(2))))

    chosen = None
    if capture.source_path is not None:
        for frame in frames:
            if frame[1] == capture.source_path:
                chosen = frame
    if chosen is None and frames:
        chosen = frames[-1]

    file = ""
    line_number = 0
    offending = ""
    caret_column = None
    if chosen is not None:
        idx, file, line_number = chosen
        # The segment between this frame header and the next structural
        # line holds the echoed source line and an optional caret line.
        end = error_idx
        for later, _, _ in frames:
            if later > idx:
                end = later
                break
        displayed = None
        for j in range(idx + 1, end):
            line = lines[j]
            if not line.strip():
                continue
            if displayed is None:
                if _CARET_LINE.match(line) and "^" in line:
                    continue
                displayed = line
            elif _CARET_LINE.match(line) and "^" in line:
                indent = len(displayed) - len(displayed.lstrip())
                caret_column = line.index("^") - indent
                break
        if displayed is not None:
            offending = displayed.strip()

    # Some layouts skip the source echo; recover it from the script text
    # when the frame points into the script we ran.
    if not offending and file and file == capture.source_path:
        source_lines = capture.source_text.splitlines()
        if 1 <= line_number <= len(source_lines):
            offending = source_lines[line_number - 1].strip()

    if caret_column is not None:
        caret_column = max(0, min(caret_column, len(offending) + 1))

    return ParsedError(
        kind=kind,
        description=description,
        file=file,
        line_number=line_number,
        offending_line=offending,
        caret_column=caret_column,
        imports=extract_imports(capture.source_text),
    )


def extract_quoted_words(description: str) -> list[str]:
    """All single-quoted spans of the description, in order.

    Duplicates are preserved; the caller decides whether to dedup.
    """
    return re.findall(r"'([^']*)'", description)


def extract_imports(source_text: str) -> tuple[str, ...]:
    """Top-level module names imported by the source, deduped in order.

    Only plain `import a, b as c` and `from mod import ...` forms count;
    relative imports have no module name to report and are skipped.
    """
    seen: list[str] = []
    for line in source_text.splitlines():
        m = _FROM_IMPORT.match(line)
        if m:
            names = [m.group(1)]
        else:
            m = _IMPORT_STMT.match(line)
            if not m:
                continue
            names = []
            for part in m.group(1).split(","):
                name = part.strip().split(" as ")[0].strip()
                if name:
                    names.append(name)
        for name in names:
            if _MODULE_NAME.match(name) and name not in seen:
                seen.append(name)
    return tuple(seen)
