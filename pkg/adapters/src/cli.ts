/**
 * Adapter command line.
 *
 *   node dist/cli.js generate      --dialogues F --out DIR [--k N] [--seed S]
 *   node dist/cli.js export        --dialogues F --out DIR [--candidates F]
 *                                  [--k N] [--seed S] [--dim D]
 *   node dist/cli.js finetune-plan --labeled F --selection F --candidates F
 *                                  --out DIR
 *
 * `export` generates candidates first unless --candidates points at an
 * existing file. Exit codes: 0 ok, 2 invalid arguments or malformed input,
 * 3 missing input file.
 */

import { existsSync, mkdirSync } from "node:fs";
import { join } from "node:path";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { CorpusFormatError, readCandidateSets, readDialogues, readSelection } from "./corpus.js";
import { exportModelOutputs, writeCandidateFile } from "./exporters.js";
import { TrainingPlanError, buildTrainingPlan, writeTrainingPlan } from "./finetune.js";
import { generateCandidateSets } from "./generate.js";
import { buildManifest, writeManifest } from "./manifest.js";
import { defaultModels } from "./models.js";

class UsageError extends Error {}

interface CommonOptions {
  dialogues: string;
  out: string;
  k: number;
  seed: number;
  dim: number;
  candidates?: string;
  labeled?: string;
  selection?: string;
}

function parseCommand(argv: string[]): { command: string; options: CommonOptions } {
  const [command, ...rest] = argv;
  if (command === undefined) {
    throw new UsageError("missing command: generate | export | finetune-plan");
  }
  const { values } = parseArgs({
    args: rest,
    options: {
      dialogues: { type: "string" },
      candidates: { type: "string" },
      labeled: { type: "string" },
      selection: { type: "string" },
      out: { type: "string" },
      k: { type: "string", default: "4" },
      seed: { type: "string", default: "0" },
      dim: { type: "string", default: "16" },
    },
  });
  if (!values.out) {
    throw new UsageError("--out is required");
  }
  const k = Number(values.k);
  const seed = Number(values.seed);
  const dim = Number(values.dim);
  for (const [name, value] of [["k", k], ["seed", seed], ["dim", dim]] as const) {
    if (!Number.isInteger(value)) {
      throw new UsageError(`--${name} must be an integer`);
    }
  }
  if (k < 1 || dim < 1) {
    throw new UsageError("--k and --dim must be >= 1");
  }
  return {
    command,
    options: {
      dialogues: values.dialogues ?? "",
      out: values.out,
      k,
      seed,
      dim,
      ...(values.candidates !== undefined ? { candidates: values.candidates } : {}),
      ...(values.labeled !== undefined ? { labeled: values.labeled } : {}),
      ...(values.selection !== undefined ? { selection: values.selection } : {}),
    },
  };
}

function requireFile(path: string, flag: string): string {
  if (!path) {
    throw new UsageError(`--${flag} is required`);
  }
  if (!existsSync(path)) {
    const err = new Error(`no such file: ${path}`) as NodeJS.ErrnoException;
    err.code = "ENOENT";
    throw err;
  }
  return path;
}

function cmdGenerate(options: CommonOptions): number {
  const dialogues = readDialogues(requireFile(options.dialogues, "dialogues"));
  const models = defaultModels(options.dim, options.seed);
  const sets = generateCandidateSets(dialogues, options.k, options.seed, models.tagger);
  mkdirSync(options.out, { recursive: true });
  const candidatesPath = join(options.out, "candidates.jsonl");
  writeCandidateFile(sets, candidatesPath);
  writeManifest(
    buildManifest(models, options.k, options.seed),
    sets,
    join(options.out, "manifest.json"),
  );
  console.log(`generated ${options.k} candidates for ${dialogues.length} dialogues -> ${candidatesPath}`);
  return 0;
}

function cmdExport(options: CommonOptions): number {
  const dialogues = readDialogues(requireFile(options.dialogues, "dialogues"));
  const models = defaultModels(options.dim, options.seed);
  const sets = options.candidates
    ? readCandidateSets(requireFile(options.candidates, "candidates"))
    : generateCandidateSets(dialogues, options.k, options.seed, models.tagger);
  for (const dialogue of dialogues) {
    if (!sets.has(dialogue.id)) {
      throw new CorpusFormatError(
        options.candidates ?? "<generated>",
        0,
        `no candidate set for dialogue '${dialogue.id}'`,
      );
    }
  }
  const kSeen = new Set([...sets.values()].map((c) => c.length));
  if (kSeen.size > 1 || (kSeen.size === 1 && !kSeen.has(options.k) && !options.candidates)) {
    throw new CorpusFormatError(
      options.candidates ?? "<generated>",
      0,
      `candidate count per dialogue must be uniform, found ${[...kSeen].sort().join(", ")}`,
    );
  }
  const k = [...kSeen][0] ?? options.k;
  mkdirSync(options.out, { recursive: true });
  const { paths, counts } = exportModelOutputs(dialogues, sets, models, options.out);
  writeManifest(buildManifest(models, k, options.seed), sets, join(options.out, "manifest.json"));
  console.log(
    `exported ${counts.embeddingRecords} embeddings, ${counts.tagRecords} tag records, ` +
      `${counts.nliRecords} NLI records for ${counts.dialogues} dialogues -> ${paths.embeddings}`,
  );
  return 0;
}

function cmdFinetunePlan(options: CommonOptions): number {
  const labeled = readDialogues(requireFile(options.labeled ?? "", "labeled"));
  const selection = readSelection(requireFile(options.selection ?? "", "selection"));
  const sets = readCandidateSets(requireFile(options.candidates ?? "", "candidates"));
  const plan = buildTrainingPlan(labeled, selection, sets);
  mkdirSync(options.out, { recursive: true });
  const planPath = join(options.out, "training_plan.json");
  writeTrainingPlan(plan, planPath);
  console.log(
    `training plan: ${plan.labeled_pairs} labeled + ${plan.pseudo_pairs} pseudolabel pairs -> ${planPath}`,
  );
  return 0;
}

export function main(argv: string[]): number {
  try {
    const { command, options } = parseCommand(argv);
    switch (command) {
      case "generate":
        return cmdGenerate(options);
      case "export":
        return cmdExport(options);
      case "finetune-plan":
        return cmdFinetunePlan(options);
      default:
        throw new UsageError(`unknown command '${command}'`);
    }
  } catch (err) {
    if (
      err instanceof UsageError ||
      err instanceof CorpusFormatError ||
      err instanceof TrainingPlanError ||
      err instanceof RangeError
    ) {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    if ((err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`missing input: ${(err as Error).message}`);
      return 3;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
