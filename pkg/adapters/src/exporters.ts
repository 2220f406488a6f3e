/**
 * Writers for the engine's ingestion files.
 *
 * Addressing rules (must match what the engine recomputes at load time):
 *
 * - tags: one record per dialogue with the concatenated turn token stream
 *   (global positions), one record per candidate (local positions);
 * - embeddings: role "dialogue_noun" indexed [j] over noun TYPES (deduped
 *   by lowercased surface, first-occurrence order), role "candidate_text"
 *   indexed [i], role "summary_noun" indexed [i, occ] over noun
 *   OCCURRENCES of candidate i (repeats kept);
 * - nli: the full grid (premise turn a) x (candidate sentence b) for every
 *   candidate.
 *
 * All files are written whole, dialogues in id order, fixed key order, so
 * identical inputs produce identical bytes.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import type { Dialogue } from "./corpus.js";
import type { ModelSet, PennToken } from "./models.js";
import { toExportTag } from "./models.js";
import { splitSentences } from "./text.js";

export interface ExportCounts {
  dialogues: number;
  candidates: number;
  embeddingRecords: number;
  tagRecords: number;
  nliRecords: number;
}

export interface ExportPaths {
  candidates: string;
  embeddings: string;
  tags: string;
  nli: string;
}

interface ExportToken {
  surface: string;
  tag: string;
  position: number;
}

function exportTokens(tokens: PennToken[], positionOffset = 0): ExportToken[] {
  return tokens.map((t) => ({
    surface: t.surface,
    tag: toExportTag(t.tag),
    position: positionOffset + t.position,
  }));
}

/** Noun-type surfaces: deduped by lowercased surface, first occurrence kept. */
export function nounTypeSurfaces(tokens: readonly ExportToken[]): string[] {
  const seen = new Set<string>();
  const types: string[] = [];
  for (const token of tokens) {
    if (token.tag !== "NOUN" && token.tag !== "PROPER_NOUN") {
      continue;
    }
    const key = token.surface.toLowerCase();
    if (!seen.has(key)) {
      seen.add(key);
      types.push(token.surface);
    }
  }
  return types;
}

/** Noun occurrence surfaces in stream order, repeats kept. */
export function nounOccurrences(tokens: readonly ExportToken[]): string[] {
  return tokens
    .filter((t) => t.tag === "NOUN" || t.tag === "PROPER_NOUN")
    .map((t) => t.surface);
}

function jsonl(records: object[]): string {
  return records.map((r) => JSON.stringify(r)).join("\n") + (records.length ? "\n" : "");
}

export function writeCandidateFile(
  sets: ReadonlyMap<string, string[]>,
  path: string,
): void {
  const records = [...sets.keys()]
    .sort()
    .map((id) => ({ id, candidates: sets.get(id) as string[] }));
  writeFileSync(path, jsonl(records), "utf-8");
}

export function exportModelOutputs(
  dialogues: readonly Dialogue[],
  candidateSets: ReadonlyMap<string, string[]>,
  models: ModelSet,
  outDir: string,
): { paths: ExportPaths; counts: ExportCounts } {
  mkdirSync(outDir, { recursive: true });
  const paths: ExportPaths = {
    candidates: join(outDir, "candidates.jsonl"),
    embeddings: join(outDir, "embeddings.jsonl"),
    tags: join(outDir, "tags.jsonl"),
    nli: join(outDir, "nli.jsonl"),
  };

  const embeddingRecords: object[] = [];
  const tagRecords: object[] = [];
  const nliRecords: object[] = [];
  let candidateCount = 0;

  const ordered = [...dialogues].sort((d, e) => (d.id < e.id ? -1 : 1));
  for (const dialogue of ordered) {
    const candidates = candidateSets.get(dialogue.id);
    if (candidates === undefined) {
      throw new Error(`no candidate set for dialogue '${dialogue.id}'`);
    }
    candidateCount += candidates.length;

    const flat: ExportToken[] = [];
    for (const turn of dialogue.turns) {
      flat.push(...exportTokens(models.tagger.tag(turn), flat.length));
    }
    tagRecords.push({ id: dialogue.id, scope: "dialogue", tokens: flat });

    nounTypeSurfaces(flat).forEach((surface, j) => {
      embeddingRecords.push({
        id: dialogue.id,
        role: "dialogue_noun",
        index: [j],
        vector: models.embedder.embed(surface),
      });
    });

    candidates.forEach((text, i) => {
      const tokens = exportTokens(models.tagger.tag(text));
      tagRecords.push({ id: dialogue.id, scope: "candidate", cand_idx: i, tokens });
      embeddingRecords.push({
        id: dialogue.id,
        role: "candidate_text",
        index: [i],
        vector: models.embedder.embed(text),
      });
      nounOccurrences(tokens).forEach((surface, occ) => {
        embeddingRecords.push({
          id: dialogue.id,
          role: "summary_noun",
          index: [i, occ],
          vector: models.embedder.embed(surface),
        });
      });
      const hypotheses = splitSentences(text);
      dialogue.turns.forEach((premise, a) => {
        hypotheses.forEach((hypothesis, b) => {
          const scores = models.judge.judge(premise, hypothesis);
          nliRecords.push({
            id: dialogue.id,
            cand_idx: i,
            premise_idx: a,
            hypothesis_idx: b,
            positive: scores.positive,
            negative: scores.negative,
          });
        });
      });
    });
  }

  writeCandidateFile(candidateSets, paths.candidates);
  writeFileSync(paths.embeddings, jsonl(embeddingRecords), "utf-8");
  writeFileSync(paths.tags, jsonl(tagRecords), "utf-8");
  writeFileSync(paths.nli, jsonl(nliRecords), "utf-8");

  return {
    paths,
    counts: {
      dialogues: ordered.length,
      candidates: candidateCount,
      embeddingRecords: embeddingRecords.length,
      tagRecords: tagRecords.length,
      nliRecords: nliRecords.length,
    },
  };
}
