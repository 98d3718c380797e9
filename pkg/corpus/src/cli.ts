#!/usr/bin/env node
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { loadManifest } from "./manifest.js";
import { verifyCorpus } from "./verify.js";

const PACKAGE_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..");

function usage(): never {
  console.error("Usage: errlens-corpus [--manifest FILE] [--interpreter PATH]");
  process.exit(2);
}

function main(): number {
  let manifestPath = path.join(PACKAGE_ROOT, "manifest.tsv");
  let interpreter = "python3";
  const argv = process.argv.slice(2);
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--manifest" && i + 1 < argv.length) {
      manifestPath = argv[++i];
    } else if (argv[i] === "--interpreter" && i + 1 < argv.length) {
      interpreter = argv[++i];
    } else {
      usage();
    }
  }

  const manifest = loadManifest(manifestPath);
  const report = verifyCorpus(manifest, interpreter, path.dirname(manifestPath));
  for (const result of report.results) {
    if (result.ok) {
      console.log(`ok   ${result.entry.script} (${result.actualKind})`);
    } else {
      console.log(`FAIL ${result.entry.script}: ${result.detail}`);
    }
  }
  console.log(
    `${report.passed}/${report.results.length} passed in ${(report.elapsedMs / 1000).toFixed(1)}s`,
  );
  return report.failed === 0 ? 0 : 1;
}

process.exit(main());
