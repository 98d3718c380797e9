import os
import socket
import subprocess
import sys
from pathlib import Path

import pytest

from errlens.knowledge import default_tables

REPO_ROOT = Path(__file__).resolve().parent.parent
TESTS_DIR = Path(__file__).resolve().parent
DATA_DIR = TESTS_DIR / "data"
FIXTURES_DIR = DATA_DIR / "so_fixtures"
CORPUS_DIR = REPO_ROOT / "corpus"


@pytest.fixture(autouse=True)
def no_network(monkeypatch):
    """Nothing in-process may open a network connection; replayed
    fixtures and in-memory transports must be enough."""

    def deny(self, *args, **kwargs):
        raise OSError("network access disabled in tests")

    monkeypatch.setattr(socket.socket, "connect", deny)
    monkeypatch.setattr(socket.socket, "connect_ex", deny)


@pytest.fixture(scope="session")
def kb():
    return default_tables()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def manifest_rows(corpus_dir):
    rows = []
    for line in (corpus_dir / "manifest.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        script, kind, pattern, slug = line.split("\t")
        rows.append((script, kind, pattern, slug))
    return rows


@pytest.fixture()
def run_cli(tmp_path):
    """Run the installed CLI in a subprocess with a scratch cache and no
    inherited transport configuration; returns the CompletedProcess with
    stdout/stderr as bytes."""

    def run(*args, stdin_text=None, env_extra=None):
        env = os.environ.copy()
        env.pop("ERRLENS_API_BASE", None)
        env.pop("ERRLENS_API_KEY", None)
        env["ERRLENS_CACHE_DIR"] = str(tmp_path / "cache")
        if env_extra:
            env.update(env_extra)
        return subprocess.run(
            [sys.executable, "-m", "errlens", *args],
            input=None if stdin_text is None else stdin_text.encode("utf-8"),
            capture_output=True,
            env=env,
            timeout=120,
        )

    return run
