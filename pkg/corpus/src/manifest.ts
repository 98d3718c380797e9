import * as fs from "node:fs";

/** One row of the corpus manifest: a script and the error it must raise. */
export interface ManifestEntry {
  script: string;
  expectedKind: string;
  descriptionPattern: string;
  tableRow: string;
}

/**
 * Parse manifest text: UTF-8 TSV, `#` starts a comment line, blank lines
 * are skipped.  Malformed rows fail the whole parse with their line
 * number; a half-read manifest would silently weaken every check built
 * on it.
 */
export function parseManifest(text: string): ManifestEntry[] {
  const entries: ManifestEntry[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].replace(/\r$/, "");
    if (line.trim() === "" || line.trimStart().startsWith("#")) {
      continue;
    }
    const fields = line.split("\t").map((field) => field.trim());
    if (fields.length !== 4) {
      throw new Error(`manifest line ${i + 1}: expected 4 fields, got ${fields.length}`);
    }
    if (fields.some((field) => field === "")) {
      throw new Error(`manifest line ${i + 1}: empty field`);
    }
    const [script, expectedKind, descriptionPattern, tableRow] = fields;
    try {
      new RegExp(descriptionPattern);
    } catch (cause) {
      throw new Error(`manifest line ${i + 1}: bad pattern: ${descriptionPattern}`);
    }
    entries.push({ script, expectedKind, descriptionPattern, tableRow });
  }
  if (entries.length === 0) {
    throw new Error("manifest has no entries");
  }
  return entries;
}

export function loadManifest(path: string): ManifestEntry[] {
  return parseManifest(fs.readFileSync(path, "utf-8"));
}
