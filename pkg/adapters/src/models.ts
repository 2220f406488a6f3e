/**
 * The three model capabilities behind the export files: text embedding,
 * token tagging, NLI judgment.
 *
 * Each capability is an interface so a transformer-backed implementation
 * can slot in; the bundled implementations are deterministic, CPU-only
 * stand-ins that exercise every downstream contract (unit-norm constant-dim
 * vectors, a Penn-style noun tagset, calibrated entailment probabilities).
 */

import { createHash } from "node:crypto";

import { tokenize } from "./text.js";

export interface TextEmbedder {
  readonly id: string;
  readonly dim: number;
  readonly pooling: string;
  embed(text: string): number[];
}

export interface PennToken {
  surface: string;
  tag: string;
  position: number;
}

export interface TokenTagger {
  readonly id: string;
  readonly tagset: string;
  tag(text: string): PennToken[];
}

export interface EntailmentScores {
  positive: number;
  negative: number;
}

export interface EntailmentJudge {
  readonly id: string;
  judge(premise: string, hypothesis: string): EntailmentScores;
}

/** Tagger tags counted as proper nouns downstream. */
export const PROPER_TAGS = new Set(["NNP", "NNPS"]);
/** Tagger tags counted as common nouns downstream. */
export const COMMON_NOUN_TAGS = new Set(["NN", "NNS"]);

/** Export-file tag vocabulary the engine understands. */
export type ExportTag = "NOUN" | "PROPER_NOUN" | "OTHER";

export function toExportTag(pennTag: string): ExportTag {
  if (PROPER_TAGS.has(pennTag)) {
    return "PROPER_NOUN";
  }
  if (COMMON_NOUN_TAGS.has(pennTag)) {
    return "NOUN";
  }
  return "OTHER";
}

/**
 * Hash-expanded token vectors with mean pooling.
 *
 * Each token's "encoder state" is a unit vector expanded from
 * shake256(seed || lowercased token); a text embeds as the normalized mean
 * of its token vectors. Deterministic across platforms and runs.
 */
export class HashEmbedder implements TextEmbedder {
  readonly id = "hash-embedder-v1";
  readonly pooling = "mean";
  readonly dim: number;
  private readonly seed: number;

  constructor(dim = 16, seed = 0) {
    if (!Number.isInteger(dim) || dim < 1) {
      throw new RangeError(`dim must be a positive integer, got ${dim}`);
    }
    this.dim = dim;
    this.seed = seed;
  }

  private tokenVector(token: string): number[] {
    const hash = createHash("shake256", { outputLength: 8 * this.dim });
    const seedBytes = Buffer.alloc(8);
    seedBytes.writeBigInt64LE(BigInt(this.seed));
    hash.update(seedBytes);
    hash.update(token.toLowerCase(), "utf-8");
    const digest = hash.digest();
    const vec = new Array<number>(this.dim);
    for (let d = 0; d < this.dim; d++) {
      const word = digest.readBigUInt64LE(8 * d);
      vec[d] = Number(word) / 2 ** 63 - 1.0;
    }
    return vec;
  }

  embed(text: string): number[] {
    const tokens = tokenize(text);
    const sum = new Array<number>(this.dim).fill(0);
    for (const token of tokens) {
      const vec = this.tokenVector(token);
      for (let d = 0; d < this.dim; d++) {
        sum[d] = (sum[d] as number) + (vec[d] as number);
      }
    }
    let norm = Math.sqrt(sum.reduce((acc, x) => acc + x * x, 0));
    if (tokens.length === 0 || norm === 0) {
      const basis = new Array<number>(this.dim).fill(0);
      basis[0] = 1.0;
      return basis;
    }
    return sum.map((x) => x / norm);
  }
}

const NOUN_LEXICON = new Set(
  `afternoon agenda airport apartment bag bike birthday book breakfast bus
   cake car cat coffee concert deadline dinner doctor dog email evening
   exam film flat flowers friday game garden gift guitar gym holiday
   homework hotel house invoice keys kitchen laptop lunch meeting money
   monday morning movie museum night office paper park party phone photo
   picnic pizza plan present project rain recipe report restaurant room
   salad saturday school shop shower station sunday table tea team test
   ticket tickets train trip tuesday weather wedding week weekend work`
    .split(/\s+/)
    .filter((w) => w.length > 0),
);

/**
 * Rule tagger over the engine's tokenizer: capitalized tokens are NNP,
 * lexicon words are NN (NNS for a trailing-s plural of a lexicon word),
 * everything else XX. Positions index the token stream of the given text.
 */
export class RuleTagger implements TokenTagger {
  readonly id = "rule-tagger-v1";
  readonly tagset = "penn-noun-subset";
  private readonly lexicon: Set<string>;

  constructor(lexicon: Set<string> = NOUN_LEXICON) {
    this.lexicon = lexicon;
  }

  tag(text: string): PennToken[] {
    return tokenize(text).map((surface, position) => {
      let tag = "XX";
      const lower = surface.toLowerCase();
      if (/^\p{Lu}/u.test(surface)) {
        tag = "NNP";
      } else if (this.lexicon.has(lower)) {
        tag = "NN";
      } else if (lower.endsWith("s") && this.lexicon.has(lower.slice(0, -1))) {
        tag = "NNS";
      }
      return { surface, tag, position };
    });
  }
}

/**
 * Token-overlap entailment: positive = Dice coefficient of the lowercased
 * token sets, negative = 1 − positive. Both-empty pairs count as full
 * entailment; one-empty pairs as none.
 */
export class OverlapJudge implements EntailmentJudge {
  readonly id = "token-overlap-nli-v1";

  judge(premise: string, hypothesis: string): EntailmentScores {
    const p = new Set(tokenize(premise.toLowerCase()));
    const h = new Set(tokenize(hypothesis.toLowerCase()));
    let positive: number;
    if (p.size === 0 && h.size === 0) {
      positive = 1.0;
    } else if (p.size === 0 || h.size === 0) {
      positive = 0.0;
    } else {
      let shared = 0;
      for (const token of p) {
        if (h.has(token)) {
          shared += 1;
        }
      }
      positive = (2.0 * shared) / (p.size + h.size);
    }
    return { positive, negative: 1.0 - positive };
  }
}

export interface ModelSet {
  embedder: TextEmbedder;
  tagger: TokenTagger;
  judge: EntailmentJudge;
}

export function defaultModels(dim = 16, seed = 0): ModelSet {
  return {
    embedder: new HashEmbedder(dim, seed),
    tagger: new RuleTagger(),
    judge: new OverlapJudge(),
  };
}
