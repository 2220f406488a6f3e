/**
 * Reading and writing the engine's JSONL corpus files.
 *
 * Dialogue records: {"id": str, "dialogue": [turn, ...], "summary"?: str}.
 * Candidate records: {"id": str, "candidates": [text, ...]}.
 */

import { readFileSync } from "node:fs";

export interface Dialogue {
  id: string;
  turns: string[];
  summary?: string;
}

export class CorpusFormatError extends Error {
  constructor(path: string, lineNo: number, message: string) {
    super(`${path}:${lineNo}: ${message}`);
    this.name = "CorpusFormatError";
  }
}

function* jsonlRecords(path: string): Generator<[number, Record<string, unknown>]> {
  const lines = readFileSync(path, "utf-8").split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i] ?? "";
    if (line.trim().length === 0) {
      continue;
    }
    let record: unknown;
    try {
      record = JSON.parse(line);
    } catch (err) {
      throw new CorpusFormatError(path, i + 1, `invalid JSON: ${(err as Error).message}`);
    }
    if (typeof record !== "object" || record === null || Array.isArray(record)) {
      throw new CorpusFormatError(path, i + 1, "record is not a JSON object");
    }
    yield [i + 1, record as Record<string, unknown>];
  }
}

function requireNonBlankString(value: unknown): value is string {
  return typeof value === "string" && value.trim().length > 0;
}

export function readDialogues(path: string): Dialogue[] {
  const dialogues: Dialogue[] = [];
  const seen = new Set<string>();
  for (const [lineNo, record] of jsonlRecords(path)) {
    const id = record["id"];
    if (!requireNonBlankString(id)) {
      throw new CorpusFormatError(path, lineNo, "dialogue record needs a non-empty id");
    }
    if (seen.has(id)) {
      throw new CorpusFormatError(path, lineNo, `duplicate dialogue id '${id}'`);
    }
    seen.add(id);
    const turns = record["dialogue"];
    if (!Array.isArray(turns) || turns.length === 0 || !turns.every(requireNonBlankString)) {
      throw new CorpusFormatError(
        path,
        lineNo,
        "dialogue must be a non-empty array of non-blank turns",
      );
    }
    const summary = record["summary"];
    if (summary !== undefined && !requireNonBlankString(summary)) {
      throw new CorpusFormatError(path, lineNo, "summary must be a non-blank string if present");
    }
    dialogues.push({
      id,
      turns: turns as string[],
      ...(summary !== undefined ? { summary: summary as string } : {}),
    });
  }
  if (dialogues.length === 0) {
    throw new CorpusFormatError(path, 1, "no dialogue records found");
  }
  return dialogues;
}

export function readCandidateSets(path: string): Map<string, string[]> {
  const sets = new Map<string, string[]>();
  for (const [lineNo, record] of jsonlRecords(path)) {
    const id = record["id"];
    if (!requireNonBlankString(id)) {
      throw new CorpusFormatError(path, lineNo, "candidate record needs a non-empty id");
    }
    if (sets.has(id)) {
      throw new CorpusFormatError(path, lineNo, `duplicate candidate set for '${id}'`);
    }
    const candidates = record["candidates"];
    if (
      !Array.isArray(candidates) ||
      candidates.length === 0 ||
      !candidates.every(requireNonBlankString)
    ) {
      throw new CorpusFormatError(
        path,
        lineNo,
        "candidates must be a non-empty array of non-blank strings",
      );
    }
    sets.set(id, candidates as string[]);
  }
  if (sets.size === 0) {
    throw new CorpusFormatError(path, 1, "no candidate records found");
  }
  return sets;
}

export interface SelectionRow {
  id: string;
  representativeIdx: number;
}

export function readSelection(path: string): SelectionRow[] {
  const rows: SelectionRow[] = [];
  for (const [lineNo, record] of jsonlRecords(path)) {
    const id = record["id"];
    const idx = record["representative_candidate_idx"];
    if (!requireNonBlankString(id) || typeof idx !== "number" || !Number.isInteger(idx)) {
      throw new CorpusFormatError(
        path,
        lineNo,
        "selection record needs id and representative_candidate_idx",
      );
    }
    rows.push({ id, representativeIdx: idx });
  }
  return rows;
}
