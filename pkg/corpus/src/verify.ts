import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as path from "node:path";

import type { ManifestEntry } from "./manifest.js";

export interface EntryResult {
  entry: ManifestEntry;
  ok: boolean;
  actualKind: string | null;
  actualDescription: string | null;
  /** Empty when ok; otherwise one line saying what went wrong. */
  detail: string;
}

export interface CorpusReport {
  results: EntryResult[];
  passed: number;
  failed: number;
  elapsedMs: number;
}

// The final line of an interpreter error report: `Kind: description`,
// or a bare kind for errors raised without a message.
const ERROR_LINE = /^([A-Za-z_][A-Za-z0-9_.]*)(?:: (.*))?$/;

/**
 * Pull (kind, description) from interpreter stderr, or null when the
 * text does not end in an error line.  Chained reports are handled for
 * free: only the last block's final line matters.
 */
export function classifyStderr(stderrText: string): { kind: string; description: string } | null {
  const lines = stderrText.split("\n");
  for (let i = lines.length - 1; i >= 0; i--) {
    const line = lines[i].replace(/\r$/, "");
    if (line.trim() === "") {
      continue;
    }
    const match = ERROR_LINE.exec(line);
    if (match === null) {
      return null;
    }
    return { kind: match[1], description: match[2] ?? "" };
  }
  return null;
}

/** Match-at-start semantics: a match must begin at the first character. */
function matchesFromStart(pattern: string, text: string): boolean {
  const match = new RegExp(pattern).exec(text);
  return match !== null && match.index === 0;
}

function failure(entry: ManifestEntry, detail: string, actual?: { kind: string; description: string }): EntryResult {
  return {
    entry,
    ok: false,
    actualKind: actual?.kind ?? null,
    actualDescription: actual?.description ?? null,
    detail,
  };
}

export function verifyEntry(
  entry: ManifestEntry,
  interpreter: string,
  corpusRoot: string,
  timeoutMs = 20000,
): EntryResult {
  const scriptPath = path.resolve(corpusRoot, entry.script);
  if (!fs.existsSync(scriptPath)) {
    return failure(entry, `script not found: ${scriptPath}`);
  }
  const proc = spawnSync(interpreter, [scriptPath], {
    encoding: "utf-8",
    timeout: timeoutMs,
  });
  if (proc.error !== undefined) {
    return failure(entry, `failed to run: ${proc.error.message}`);
  }
  if (proc.status === 0) {
    return failure(entry, "exited cleanly instead of raising");
  }
  const actual = classifyStderr(proc.stderr ?? "");
  if (actual === null) {
    return failure(entry, "stderr does not end in an error line");
  }
  if (actual.kind !== entry.expectedKind) {
    return failure(entry, `kind ${actual.kind}, want ${entry.expectedKind}`, actual);
  }
  if (!matchesFromStart(entry.descriptionPattern, actual.description)) {
    return failure(
      entry,
      `description ${JSON.stringify(actual.description)} does not match ${entry.descriptionPattern}`,
      actual,
    );
  }
  return {
    entry,
    ok: true,
    actualKind: actual.kind,
    actualDescription: actual.description,
    detail: "",
  };
}

/** Run every script sequentially; failures become report entries, never throws. */
export function verifyCorpus(
  manifest: ManifestEntry[],
  interpreter: string,
  corpusRoot: string,
): CorpusReport {
  const started = Date.now();
  const results = manifest.map((entry) => verifyEntry(entry, interpreter, corpusRoot));
  const passed = results.filter((result) => result.ok).length;
  return {
    results,
    passed,
    failed: results.length - passed,
    elapsedMs: Date.now() - started,
  };
}
