export { loadManifest, parseManifest } from "./manifest.js";
export type { ManifestEntry } from "./manifest.js";
export { classifyStderr, verifyCorpus, verifyEntry } from "./verify.js";
export type { CorpusReport, EntryResult } from "./verify.js";
