/**
 * Text segmentation mirroring the scoring engine's rules.
 *
 * The engine re-tokenizes dialogue turns and candidate texts when it
 * validates an export bundle, so the adapter must produce the same token
 * counts: maximal runs of letters/digits (underscore excluded), and
 * sentences split after terminal punctuation followed by whitespace.
 */

const TOKEN_RE = /[\p{Alphabetic}\p{Nd}\p{Nl}\p{No}]+/gu;

const SENTENCE_SPLIT_RE = /(?<=[.!?])\s+/u;

export function tokenize(text: string): string[] {
  return text.match(TOKEN_RE) ?? [];
}

export function splitSentences(text: string): string[] {
  return text
    .split(SENTENCE_SPLIT_RE)
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
}
