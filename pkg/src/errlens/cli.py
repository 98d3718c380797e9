"""Command-line front end.

Three subcommands: `run` executes a script and appends an enhanced
message to stderr when it dies, `pipe` enhances a traceback read from
stdin, `serve` exposes the same pipeline over HTTP.  `run` is a faithful
wrapper: the child's stdout and stderr pass through byte for byte, and
its exit status is always ours.
"""

from __future__ import annotations

import argparse
import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import httpx

from .errors import NotAnError, QuotaExhausted, TransportError
from .knowledge import default_tables
from .pipeline import enhance, format_plain, format_structured, summary_config_for
from .stackoverflow import DEFAULT_TTL_SECONDS, FixtureTransport
from .tracebacks import RawCapture, parse_traceback

_DELIMITER = "---- enhanced ----"

_STRUCTURED_FIELDS = ("sentences", "code", "source_url", "query", "selection_reason")


def _note(text: str) -> None:
    # Diagnostics are one line each so they never masquerade as output.
    sys.stderr.write("errlens: " + " ".join(str(text).split()) + "\n")


def _default_cache_dir() -> str:
    return os.environ.get("ERRLENS_CACHE_DIR") or str(Path.home() / ".cache" / "errlens")


def _fields_local(capture: RawCapture, opts) -> dict | None:
    """Run the pipeline in-process.  Raises NotAnError; returns None and
    prints a note for every other dead end."""
    err = parse_traceback(capture)
    transport = FixtureTransport(opts.fixtures) if opts.fixtures else None
    cache_dir = None if opts.fixtures else (opts.cache_dir or _default_cache_dir())
    try:
        enhancement = enhance(
            err,
            default_tables(),
            source=opts.source,
            transport=transport,
            cache_dir=cache_dir,
            ttl_seconds=opts.ttl,
            config=summary_config_for(opts.max_sentences),
        )
    except (TransportError, QuotaExhausted) as exc:
        _note(f"enhancement unavailable: {exc}")
        return None
    if enhancement is None:
        _note("no suitable answer found; showing the error as-is")
        return None
    return format_structured(enhancement)


def _fields_remote(capture: RawCapture, opts) -> dict | None:
    """Ask a running service instead of enhancing in-process."""
    payload = {
        "stderr_text": capture.stderr_text,
        "source_path": capture.source_path,
        "source_text": capture.source_text,
        "source": opts.source,
        "max_sentences": opts.max_sentences,
    }
    try:
        response = httpx.post(opts.server.rstrip("/") + "/enhance", json=payload, timeout=30.0)
        response.raise_for_status()
        data = response.json()
    except (httpx.HTTPError, ValueError) as exc:
        _note(f"enhancement unavailable: {exc}")
        return None
    if not data.get("enhanced"):
        _note(data.get("note") or "no suitable answer found; showing the error as-is")
        return None
    return {key: data.get(key) for key in _STRUCTURED_FIELDS}


def _produce_fields(capture: RawCapture, opts) -> dict | None:
    if opts.server:
        return _fields_remote(capture, opts)
    return _fields_local(capture, opts)


def _render(fields: dict, opts) -> str:
    if opts.output == "structured":
        return json.dumps({key: fields.get(key) for key in _STRUCTURED_FIELDS})
    return format_plain(fields)


def _resolve_interpreter(requested: str | None) -> str | None:
    if requested is None:
        return sys.executable
    if os.sep in requested:
        return requested if os.path.isfile(requested) else None
    return shutil.which(requested)


def run_file(opts) -> int:
    script = Path(opts.script)
    if not script.is_file():
        _note(f"script not found: {script}")
        return 2
    interpreter = _resolve_interpreter(opts.interpreter)
    if interpreter is None:
        _note(f"interpreter not found: {opts.interpreter}")
        return 2
    child_args = list(opts.args)
    if child_args and child_args[0] == "--":
        child_args = child_args[1:]
    proc = subprocess.run([interpreter, str(script), *child_args], capture_output=True)
    sys.stdout.buffer.write(proc.stdout)
    sys.stdout.buffer.flush()
    sys.stderr.buffer.write(proc.stderr)
    sys.stderr.flush()
    if proc.returncode == 0:
        return 0
    stderr_text = proc.stderr.decode("utf-8", errors="replace")
    try:
        source_text = script.read_text(encoding="utf-8", errors="replace")
    except OSError:
        source_text = ""
    capture = RawCapture(stderr_text, str(script), source_text)
    try:
        fields = _produce_fields(capture, opts)
    except NotAnError:
        # The child failed without a traceback; nothing to add.
        return proc.returncode
    if fields is not None:
        sys.stderr.write(_DELIMITER + "\n" + _render(fields, opts) + "\n")
    return proc.returncode


def _enrich_capture(capture: RawCapture) -> RawCapture:
    """Attach the script source when the traceback names a readable file."""
    try:
        err = parse_traceback(capture)
    except NotAnError:
        return capture
    if err.file and Path(err.file).is_file():
        try:
            source_text = Path(err.file).read_text(encoding="utf-8", errors="replace")
        except OSError:
            return capture
        return RawCapture(capture.stderr_text, err.file, source_text)
    return capture


def enhance_stdin(opts) -> int:
    text = sys.stdin.read()
    if not text.strip():
        return 1
    capture = _enrich_capture(RawCapture(text, None, ""))
    try:
        fields = _produce_fields(capture, opts)
    except NotAnError:
        _note("stdin does not contain a recognizable error report")
        return 1
    if fields is None:
        return 1
    sys.stdout.write(_render(fields, opts) + "\n")
    return 0


def _cmd_serve(opts) -> int:
    import uvicorn

    from .service.app import create_app

    app = create_app(
        fixtures_dir=opts.fixtures,
        cache_dir=opts.cache_dir,
        ttl_seconds=opts.ttl,
    )
    uvicorn.run(app, host=opts.host, port=opts.port, log_level="warning")
    return 0


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--source", choices=("so", "doc"), default="so",
        help="where advice comes from: community answers or official docs",
    )
    parser.add_argument("--fixtures", metavar="DIR", help="replay recorded payloads from DIR")
    parser.add_argument("--cache-dir", dest="cache_dir", metavar="DIR")
    parser.add_argument("--ttl", type=int, default=DEFAULT_TTL_SECONDS, metavar="SECONDS")
    parser.add_argument("--max-sentences", dest="max_sentences", type=int, default=4, metavar="N")
    parser.add_argument("--output", choices=("plain", "structured"), default="plain")
    parser.add_argument("--server", metavar="URL", help="delegate to a running errlens service")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="errlens",
        description="Run Python code and turn its errors into actionable messages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run a script; enhance its error on failure")
    _add_common_options(run_parser)
    run_parser.add_argument("--interpreter", metavar="PATH", help="interpreter for the child")
    run_parser.add_argument("script")
    run_parser.add_argument("args", nargs=argparse.REMAINDER, help="arguments for the script")

    pipe_parser = sub.add_parser("pipe", help="enhance a traceback read from stdin")
    _add_common_options(pipe_parser)

    serve_parser = sub.add_parser("serve", help="serve the pipeline over HTTP")
    serve_parser.add_argument("--host", default="127.0.0.1")
    serve_parser.add_argument("--port", type=int, default=8137)
    serve_parser.add_argument("--fixtures", metavar="DIR")
    serve_parser.add_argument("--cache-dir", dest="cache_dir", metavar="DIR")
    serve_parser.add_argument("--ttl", type=int, default=DEFAULT_TTL_SECONDS, metavar="SECONDS")

    return parser


def main(argv: list[str] | None = None) -> int:
    opts = build_parser().parse_args(argv)
    if getattr(opts, "max_sentences", 4) < 1:
        _note("--max-sentences must be at least 1")
        return 2
    if getattr(opts, "fixtures", None) and not os.path.isdir(opts.fixtures):
        _note(f"fixtures directory not found: {opts.fixtures}")
        return 2
    if opts.command == "run":
        return run_file(opts)
    if opts.command == "pipe":
        return enhance_stdin(opts)
    return _cmd_serve(opts)


if __name__ == "__main__":
    sys.exit(main())
