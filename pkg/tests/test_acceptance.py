"""Acceptance gate: one test per shipping criterion.

Every test here states a user-visible guarantee, checks it at full
strength (exhaustively or against an independent reference where one
exists), and prints a single PASS line on success.  A failure anywhere
in this file means the package is not ready to ship.
"""

from __future__ import annotations

import difflib
import json
import random
import re
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

from errlens.answers import AnswerRecord, select_answer
from errlens.docs import doc_message
from errlens.errors import EmptyQuery
from errlens.knowledge import default_tables
from errlens.pipeline import enhance
from errlens.queries import build_query, fix_typo
from errlens.stackoverflow import ThreadSummary
from errlens.summarize import SummaryConfig, luhn_summarize
from errlens.tracebacks import ParsedError, RawCapture, parse_traceback

from conftest import CORPUS_DIR, DATA_DIR, FIXTURES_DIR
from oracles import gestalt_matched_chars, gestalt_ratio, oracle_luhn, oracle_select
from test_cli import DELIMITER, ROCK_PAPER, TUPLE_MIXUP, interpreter_output
from test_queries import RULE_ROWS, make_error

KB = default_tables()


def announce(line: str) -> None:
    print(f"PASS: {line}")


def test_corpus_classification_is_complete_and_fast(manifest_rows):
    """Every corpus program is classified to its manifest row, quickly."""
    started = time.monotonic()
    failures = []
    slugs = set()
    for script, kind, pattern, slug in manifest_rows:
        path = CORPUS_DIR / script
        proc = subprocess.run(
            [sys.executable, str(path)], capture_output=True, text=True, timeout=30
        )
        if proc.returncode == 0:
            failures.append(f"{script}: exited cleanly")
            continue
        err = parse_traceback(
            RawCapture(proc.stderr, str(path), path.read_text(encoding="utf-8"))
        )
        if err.kind != kind or not re.match(pattern, err.description):
            failures.append(
                f"{script}: got {err.kind}: {err.description!r}, want {kind}: {pattern!r}"
            )
            continue
        slugs.add(slug)
    elapsed = time.monotonic() - started
    assert not failures, "\n".join(failures)
    assert len(slugs) == 21, f"covered {len(slugs)} description rows, want 21"
    assert elapsed < 30.0, f"classification took {elapsed:.1f}s"
    announce(
        f"corpus classification 100% ({len(manifest_rows)} scripts, "
        f"{len(slugs)} description rows) in {elapsed:.1f}s"
    )


def test_query_table_has_no_mismatches():
    """Each committed error instance produces exactly its expected query."""
    assert len(RULE_ROWS) >= 20
    kinds = {row[0] for row in RULE_ROWS}
    assert {"NameError", "AttributeError"} & kinds
    assert "SyntaxError" in kinds
    assert "TypeError" in kinds
    assert {"IndentationError", "TabError"} & kinds
    assert "KeyError" in kinds
    assert {"ZeroDivisionError", "ValueError", "IndexError"} & kinds

    mismatches = []
    for kind, description, offending, expected_text, expected_typo, expects_empty in RULE_ROWS:
        err = make_error(kind, description, offending)
        if expects_empty:
            try:
                build_query(err, KB)
                mismatches.append(f"{kind} {description!r}: expected EmptyQuery")
            except EmptyQuery:
                pass
            continue
        query = build_query(err, KB)
        if query.text != expected_text:
            mismatches.append(
                f"{kind} {description!r}: got {query.text!r}, want {expected_text!r}"
            )
        wanted_typo = None if expected_typo == "-" else expected_typo
        if query.typo_correction != wanted_typo:
            mismatches.append(
                f"{kind} {description!r}: typo {query.typo_correction!r}, want {wanted_typo!r}"
            )
    assert not mismatches, "\n".join(mismatches)
    announce(f"query formulation exact on all {len(RULE_ROWS)} table rows")


def _selection_case(thread_count, answers_per_thread, accepted_flags, scores):
    threads = []
    answers = {}
    answer_id = 100
    position = 0
    for t in range(thread_count):
        qid = 10 + t
        records = []
        for _ in range(answers_per_thread):
            records.append(
                AnswerRecord(
                    answer_id=answer_id,
                    question_id=qid,
                    score=scores[position],
                    accepted=accepted_flags[position],
                    body_html="<p>x</p>",
                )
            )
            answer_id += 1
            position += 1
        threads.append(
            ThreadSummary(qid, f"t{t}", t + 1, tuple(r.answer_id for r in records))
        )
        answers[qid] = records
    return threads, answers


def test_selection_matches_oracle_exhaustively():
    """select_answer agrees with the brute-force reference on every
    configuration in two exhaustive sweeps."""
    score_cycle = (-1, 0, 3)

    # Sweep 1: 4 threads x 3 answers, all 4096 accepted-flag masks, with
    # scores varied deterministically alongside the mask.
    for mask in range(4096):
        accepted = [bool(mask & (1 << i)) for i in range(12)]
        scores = [score_cycle[(mask * 31 + i * 7) % 3] for i in range(12)]
        threads, answers = _selection_case(4, 3, accepted, scores)
        got = select_answer(threads, answers)
        want = oracle_select(threads, answers)
        if want is None:
            assert got is None, f"mask {mask}: oracle rejects, package selected"
        else:
            assert got is not None, f"mask {mask}: package rejects, oracle selected"
            assert (got.record.answer_id, got.reason.value) == want, f"mask {mask}"

    # Sweep 2: 2 threads x 2 answers, full product of accepted x score per
    # answer (6^4 configurations) so the score>0 gate is hit exhaustively.
    gate_nones = 0
    states = list(product((False, True), score_cycle))
    for combo in product(states, repeat=4):
        accepted = [accepted_flag for accepted_flag, _ in combo]
        scores = [score for _, score in combo]
        threads, answers = _selection_case(2, 2, accepted, scores)
        got = select_answer(threads, answers)
        want = oracle_select(threads, answers)
        if want is None:
            gate_nones += 1
            assert got is None
        else:
            assert got is not None
            assert (got.record.answer_id, got.reason.value) == want
    assert gate_nones > 0, "sweep never exercised the positive-score gate"
    announce(
        "answer selection matches the reference on 4096 + 1296 exhaustive "
        f"configurations ({gate_nones} of them correctly rejected)"
    )


def test_summarizer_properties_and_reference():
    """Random paragraphs stay extractive and bounded; committed paragraphs
    match the independent reference exactly."""
    rng = random.Random(20240814)
    vocab = (
        "parser cache thread answer query token sentence score window "
        "frequency error line file module index value result batch retry "
        "socket"
    ).split()
    config = SummaryConfig()
    for _ in range(1000):
        sentence_count = rng.randint(5, 12)
        sentences = [
            " ".join(rng.choice(vocab) for _ in range(rng.randint(3, 12))) + "."
            for _ in range(sentence_count)
        ]
        chosen = luhn_summarize(sentences, config)
        assert len(chosen) <= 4
        cursor = 0
        for sentence in chosen:
            cursor = sentences.index(sentence, cursor) + 1

    passthrough = [
        "It should work fine.",
        "Don't use tuple, list or other special names as a variable name.",
        "It's probably what's causing your problem.",
    ]
    assert luhn_summarize(passthrough, config) == passthrough

    paragraphs = json.loads(
        (DATA_DIR / "luhn_paragraphs.json").read_text(encoding="utf-8")
    )
    for item in paragraphs:
        expected = item["expected"]
        assert luhn_summarize(item["sentences"], config) == expected
        assert oracle_luhn(item["sentences"], config.stopwords) == expected
    announce(
        "summarizer bounded and extractive on 1000 random paragraphs; "
        f"exact reference match on {len(paragraphs)} committed paragraphs"
    )


def test_typo_repair_matches_gestalt_reference():
    """pint -> print at ratio 8/9; cutoff behaves monotonically; fifty
    committed word pairs match the reference ratios exactly."""
    assert fix_typo("pint", KB) == "print"
    assert gestalt_ratio("pint", "print") == Fraction(8, 9)

    catalogue = KB.catalogue()
    for word in ("whlie", "pint", "prnt", "Trve", "lenght", "qqqq"):
        hits = [
            fix_typo(word, KB, cutoff=step / 20) is not None
            for step in range(1, 20)
        ]
        for earlier, later in zip(hits, hits[1:]):
            # Raising the cutoff can only lose matches, never gain them.
            assert earlier or not later
        best = max(gestalt_ratio(word, entry) for entry in catalogue)
        assert (fix_typo(word, KB) is not None) == (best >= Fraction(3, 5))

    checked = 0
    for line in (DATA_DIR / "gestalt_pairs.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        word_a, word_b, matched_text, ratio_text = line.split("\t")
        matched = int(matched_text)
        numerator, denominator = (int(part) for part in ratio_text.split("/"))
        assert gestalt_matched_chars(word_a, word_b) == matched
        assert gestalt_ratio(word_a, word_b) == Fraction(numerator, denominator)
        sm = difflib.SequenceMatcher(a=word_a, b=word_b)
        assert sum(block.size for block in sm.get_matching_blocks()) == matched
        assert sm.ratio() == numerator / denominator
        checked += 1
    assert checked == 50
    announce(
        "typo repair matches the similarity reference exactly on all "
        f"{checked} committed pairs (pint -> print at 8/9)"
    )


def test_end_to_end_goldens_are_reproducible(run_cli):
    """Recorded-transport runs give the documented messages, byte for
    byte, twice in a row, in under two seconds each."""
    timings = []

    def timed_run(*args):
        started = time.monotonic()
        proc = run_cli(*args)
        timings.append(time.monotonic() - started)
        return proc

    first = timed_run("run", "--fixtures", str(FIXTURES_DIR), str(ROCK_PAPER))
    second = timed_run("run", "--fixtures", str(FIXTURES_DIR), str(ROCK_PAPER))
    assert (first.stdout, first.stderr, first.returncode) == (
        second.stdout,
        second.stderr,
        second.returncode,
    )
    text = first.stderr.decode("utf-8")
    assert 'In python "else if" is spelled "elif".' in text
    assert 'elif choice == "paper":' in text
    assert "source: https://stackoverflow.com/a/2395167" in text

    third = timed_run("run", "--fixtures", str(FIXTURES_DIR), str(TUPLE_MIXUP))
    fourth = timed_run("run", "--fixtures", str(FIXTURES_DIR), str(TUPLE_MIXUP))
    assert (third.stdout, third.stderr, third.returncode) == (
        fourth.stdout,
        fourth.stderr,
        fourth.returncode,
    )
    tuple_text = third.stderr.decode("utf-8")
    assert "Don't use tuple, list or other special names" in tuple_text
    assert ">>> tuple(l)" in tuple_text
    assert "&gt;" not in tuple_text

    slowest = max(timings)
    assert slowest < 2.0, f"slowest golden run took {slowest:.2f}s"
    announce(
        "end-to-end goldens byte-identical across reruns "
        f"(slowest run {slowest:.2f}s)"
    )


def test_documentation_baseline_is_exact_and_stable():
    """The official-description fallback opens with the documented first
    sentence and ignores the runtime description entirely."""
    message = doc_message("IndentationError", KB)
    opening = "Base class for syntax errors related to incorrect indentation."
    assert message.sentences[0] == opening

    variants = []
    for description in ("expected an indented block", "unindent does not match"):
        err = ParsedError(
            kind="IndentationError",
            description=description,
            file="x.py",
            line_number=1,
            offending_line="",
            caret_column=None,
        )
        variants.append(enhance(err, KB, source="doc"))
    assert variants[0] is not None and variants[1] is not None
    assert variants[0].message == variants[1].message
    assert variants[0].message.sentences[0] == opening
    announce("documentation baseline opens exactly as published and is stable")


def test_degradation_preserves_the_original_failure(run_cli):
    """With the live endpoint unreachable, the wrapper adds nothing but a
    note: same traceback bytes, same exit status, no enhancement."""
    ref = interpreter_output(TUPLE_MIXUP)
    proc = run_cli(
        "run",
        str(TUPLE_MIXUP),
        env_extra={"ERRLENS_API_BASE": "http://127.0.0.1:9/api"},
    )
    assert proc.returncode == ref.returncode
    assert proc.stdout == ref.stdout
    assert proc.stderr.startswith(ref.stderr)
    assert DELIMITER not in proc.stderr
    trailing = proc.stderr[len(ref.stderr):].decode("utf-8").splitlines()
    assert [line for line in trailing if line and not line.startswith("errlens: ")] == []
    announce("offline degradation reproduces the traceback and exit status")
