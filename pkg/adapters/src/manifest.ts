/**
 * Sidecar manifest recording which models and settings produced an export,
 * so the engine's provenance chain is complete. The k recorded here must
 * equal the candidates-per-dialogue in the exported files; the writer
 * enforces it.
 */

import { writeFileSync } from "node:fs";

import type { ModelSet } from "./models.js";

export interface AdapterManifest {
  schema_version: number;
  encoder: { id: string; dim: number; pooling: string };
  tagger: { id: string; tagset: string; proper_tags: string[] };
  nli: { id: string };
  summarizer: {
    id: string;
    beam_groups: number;
    diversity_penalty: number;
    seed: number;
  };
  k: number;
}

export const SCHEMA_VERSION = 1;

export function buildManifest(models: ModelSet, k: number, seed: number): AdapterManifest {
  return {
    schema_version: SCHEMA_VERSION,
    encoder: {
      id: models.embedder.id,
      dim: models.embedder.dim,
      pooling: models.embedder.pooling,
    },
    tagger: {
      id: models.tagger.id,
      tagset: models.tagger.tagset,
      proper_tags: ["NNP", "NNPS"],
    },
    nli: { id: models.judge.id },
    summarizer: {
      id: "template-diverse-v1",
      beam_groups: k,
      diversity_penalty: 1.0,
      seed,
    },
    k,
  };
}

export function writeManifest(
  manifest: AdapterManifest,
  candidateSets: ReadonlyMap<string, string[]>,
  path: string,
): void {
  for (const [id, candidates] of candidateSets) {
    if (candidates.length !== manifest.k) {
      throw new Error(
        `manifest k=${manifest.k} but dialogue '${id}' has ${candidates.length} candidates`,
      );
    }
  }
  writeFileSync(path, JSON.stringify(manifest, null, 2) + "\n", "utf-8");
}
