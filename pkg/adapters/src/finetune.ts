/**
 * Fine-tuning glue: turn the engine's selection output plus a labeled
 * corpus into a training plan for the target summarizer.
 *
 * Desk-scale builds stop at the plan — a deterministic JSON listing every
 * (dialogue, target) pair a trainer would consume: all labeled references
 * plus the representative candidate of each selected dialogue. A
 * GPU-backed trainer slots in behind the same file.
 */

import { writeFileSync } from "node:fs";

import type { Dialogue, SelectionRow } from "./corpus.js";

/** The selection and candidate files disagree with each other. */
export class TrainingPlanError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "TrainingPlanError";
  }
}

export interface TrainingPair {
  id: string;
  source: "labeled" | "pseudolabel";
  target: string;
}

export interface TrainingPlan {
  summarizer: string;
  labeled_pairs: number;
  pseudo_pairs: number;
  total_pairs: number;
  pairs: TrainingPair[];
}

export function buildTrainingPlan(
  labeled: readonly Dialogue[],
  selection: readonly SelectionRow[],
  candidateSets: ReadonlyMap<string, string[]>,
  summarizerId = "template-diverse-v1",
): TrainingPlan {
  const pairs: TrainingPair[] = [];
  for (const dialogue of [...labeled].sort((d, e) => (d.id < e.id ? -1 : 1))) {
    if (dialogue.summary === undefined) {
      continue;
    }
    pairs.push({ id: dialogue.id, source: "labeled", target: dialogue.summary });
  }
  const labeledCount = pairs.length;
  for (const row of [...selection].sort((r, s) => (r.id < s.id ? -1 : 1))) {
    const candidates = candidateSets.get(row.id);
    if (candidates === undefined) {
      throw new TrainingPlanError(`selection references dialogue '${row.id}' with no candidate set`);
    }
    const target = candidates[row.representativeIdx];
    if (target === undefined) {
      throw new TrainingPlanError(
        `representative index ${row.representativeIdx} out of range for '${row.id}'`,
      );
    }
    pairs.push({ id: row.id, source: "pseudolabel", target });
  }
  return {
    summarizer: summarizerId,
    labeled_pairs: labeledCount,
    pseudo_pairs: pairs.length - labeledCount,
    total_pairs: pairs.length,
    pairs,
  };
}

export function writeTrainingPlan(plan: TrainingPlan, path: string): void {
  writeFileSync(path, JSON.stringify(plan, null, 2) + "\n", "utf-8");
}
