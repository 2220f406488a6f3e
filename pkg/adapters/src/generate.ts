/**
 * Deterministic diverse candidate generation.
 *
 * Stands in for a diverse-beam-search summarizer: each candidate index is
 * its own "beam group" locked to a different sentence template, and a
 * seeded RNG varies which dialogue entities each group mentions. Fixed
 * (seed, dialogue id, index) always produces the same text, so re-running
 * generation reproduces files byte for byte.
 */

import type { Dialogue } from "./corpus.js";
import type { TokenTagger } from "./models.js";
import { COMMON_NOUN_TAGS, PROPER_TAGS } from "./models.js";
import { Rng } from "./rng.js";

interface DialogueEntities {
  names: string[];
  nouns: string[];
}

function extractEntities(dialogue: Dialogue, tagger: TokenTagger): DialogueEntities {
  const names: string[] = [];
  const nouns: string[] = [];
  const seenNames = new Set<string>();
  const seenNouns = new Set<string>();
  for (const turn of dialogue.turns) {
    for (const token of tagger.tag(turn)) {
      const key = token.surface.toLowerCase();
      if (PROPER_TAGS.has(token.tag) && !seenNames.has(key)) {
        seenNames.add(key);
        names.push(token.surface);
      } else if (COMMON_NOUN_TAGS.has(token.tag) && !seenNouns.has(key)) {
        seenNouns.add(key);
        nouns.push(key);
      }
    }
  }
  return { names, nouns };
}

type Template = (a: string, b: string, x: string, y: string) => string;

const TEMPLATES: readonly Template[] = [
  (a, b, x) => `${a} and ${b} discuss the ${x}.`,
  (a, b, x, y) => `${a} asks ${b} about the ${x} and the ${y}.`,
  (a, _b, x) => `${a} talks about the ${x}.`,
  (a, b, x) => `The ${x} comes up. ${a} and ${b} make a plan.`,
  (a, _b, x, y) => `${a} wants to sort out the ${x} before the ${y}.`,
  (a, b, x) => `${a} and ${b} agree about the ${x}. They settle the details.`,
];

const FALLBACK_NAMES = ["They", "Someone"];
const FALLBACK_NOUNS = ["conversation", "plan"];

function padded(picked: string[], fallback: readonly string[], count: number): string[] {
  const out = [...picked];
  for (let i = 0; out.length < count; i++) {
    out.push(fallback[i % fallback.length] as string);
  }
  return out;
}

export function generateCandidates(
  dialogue: Dialogue,
  k: number,
  seed: number,
  tagger: TokenTagger,
): string[] {
  if (!Number.isInteger(k) || k < 1) {
    throw new RangeError(`k must be a positive integer, got ${k}`);
  }
  const entities = extractEntities(dialogue, tagger);
  const candidates: string[] = [];
  for (let i = 0; i < k; i++) {
    const rng = new Rng(seed, dialogue.id, i);
    const template = TEMPLATES[i % TEMPLATES.length] as Template;
    const [a, b] = padded(rng.sample(entities.names, 2), FALLBACK_NAMES, 2);
    const [x, y] = padded(rng.sample(entities.nouns, 2), FALLBACK_NOUNS, 2);
    candidates.push(template(a as string, b as string, x as string, y as string));
  }
  return candidates;
}

export function generateCandidateSets(
  dialogues: readonly Dialogue[],
  k: number,
  seed: number,
  tagger: TokenTagger,
): Map<string, string[]> {
  const sets = new Map<string, string[]>();
  for (const dialogue of [...dialogues].sort((d, e) => (d.id < e.id ? -1 : 1))) {
    sets.set(dialogue.id, generateCandidates(dialogue, k, seed, tagger));
  }
  return sets;
}
