"""Command-line pipeline: score, fuse, select, eval-elim, report,
grid-search, validate.

Commands compose via artifact files in the output directory:

    sicf score      --config run.json           -> scores.jsonl
    sicf fuse       --config run.json           -> ranks.jsonl
    sicf select     --config run.json           -> selection.jsonl
    sicf eval-elim  --config run.json           -> elim.json
    sicf report     --config run.json --ratios-file t.json -> report.json/.csv
    sicf grid-search --config run.json          -> grid.jsonl
    sicf validate   --config run.json           -> export bundle check

Exit codes: 0 ok; 1 validation findings (`validate` only); 2 invalid
config or malformed input data; 3 missing input file; 4 internal
invariant violation.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__, pipeline
from .config import RunConfig, load_config
from .errors import (
    ConfigError,
    CorpusSchemaError,
    CorpusValidationError,
    EmptyCorpusError,
    ExportLookupError,
    InvariantViolation,
)
from .fusion import RankTable, fuse_sicf, select_top
from .schemas import validate_export_bundle

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_CONFIG = 2
EXIT_MISSING = 3
EXIT_INVARIANT = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sicf",
        description="Score, select, and evaluate dialogue-summarization pseudolabels.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="run config JSON file")
        p.add_argument("--out", help="output directory (overrides config)")
        p.add_argument("--seed", type=int, help="seed override")
        p.add_argument("--threads", type=int, help="worker threads override (score only)")

    p = sub.add_parser("score", help="score every dialogue's candidate set")
    common(p)
    p.add_argument("--phi", help="aggregation method override (mean|bnn|m_bnn)")
    p.add_argument("--bnn-kind", dest="bnn_kind", help="predictive|aleatoric|epistemic")

    p = sub.add_parser("fuse", help="rank-fuse scores into a fused quality value")
    common(p)
    p.add_argument("--scores", help="scores file (default <out>/scores.jsonl)")
    p.add_argument("--alpha", type=float, help="semantic-invariance coefficient")
    p.add_argument("--beta", type=float, help="coverage coefficient")
    p.add_argument("--gamma", type=float, help="faithfulness coefficient")

    p = sub.add_parser("select", help="keep the top fraction by fused value")
    common(p)
    p.add_argument("--ranks", help="ranks file (default <out>/ranks.jsonl)")
    p.add_argument("--ratio", type=float, help="selection ratio override")

    p = sub.add_parser("eval-elim", help="force-truth elimination curves")
    common(p)
    p.add_argument("--scores", help="scores file (default <out>/scores.jsonl)")
    p.add_argument("--alpha", type=float, help="semantic-invariance coefficient")
    p.add_argument("--beta", type=float, help="coverage coefficient")
    p.add_argument("--gamma", type=float, help="faithfulness coefficient")

    p = sub.add_parser("report", help="assemble curves and improved ratios")
    common(p)
    p.add_argument("--elim", help="elimination report file (default <out>/elim.json)")
    p.add_argument(
        "--ratios-file",
        dest="ratios_file",
        help='JSON {"metric": {"ms_m": x, "ms_ini": y, "ms_ora": z}, ...}',
    )

    p = sub.add_parser("grid-search", help="enumerate fusion coefficients on the 5-value grid")
    common(p)
    p.add_argument("--scores", help="scores file (default <out>/scores.jsonl)")

    p = sub.add_parser("validate", help="check an adapter export bundle")
    common(p)
    p.add_argument("--expected-k", dest="expected_k", type=int, help="required candidates per dialogue")

    return parser


def _load(args) -> RunConfig:
    overrides = {
        key: getattr(args, key, None)
        for key in ("out", "seed", "threads", "phi", "bnn_kind", "alpha", "beta", "gamma", "ratio")
    }
    cfg = load_config(args.config, overrides)
    Path(cfg.out).mkdir(parents=True, exist_ok=True)
    return cfg


def _scores_path(cfg, args) -> Path:
    return Path(args.scores) if getattr(args, "scores", None) else Path(cfg.out) / "scores.jsonl"


def cmd_score(args) -> int:
    cfg = _load(args)
    bundles, debug, providers = pipeline.score_corpus(cfg)
    out = Path(cfg.out)
    scores_path = out / "scores.jsonl"
    pipeline.write_scores(bundles, scores_path)
    outputs = [scores_path]
    if cfg.debug_matrices:
        debug_path = out / "matrices.jsonl"
        pipeline.write_debug_matrices(debug, debug_path)
        outputs.append(debug_path)
    pipeline.write_manifest(
        cfg,
        "score",
        inputs=_input_paths(cfg),
        outputs=outputs,
        out_dir=out,
        extra={"provider_metadata": providers.metadata(), "dialogues_scored": len(bundles)},
    )
    print(f"scored {len(bundles)} dialogues -> {scores_path}")
    return EXIT_OK


def _input_paths(cfg: RunConfig) -> list:
    paths = [cfg.dialogues, cfg.candidates]
    if cfg.provider == "files":
        paths += [cfg.embeddings_file, cfg.tags_file, cfg.nli_file]
    return paths


def cmd_fuse(args) -> int:
    cfg = _load(args)
    scores_path = _scores_path(cfg, args)
    bundles = pipeline.read_scores(scores_path)
    table = fuse_sicf(bundles, cfg.alpha, cfg.beta, cfg.gamma)
    ranks_path = Path(cfg.out) / "ranks.jsonl"
    pipeline.write_ranks(table, ranks_path)
    pipeline.write_manifest(
        cfg,
        "fuse",
        inputs=[scores_path],
        outputs=[ranks_path],
        out_dir=cfg.out,
        extra={"coefficients": {"alpha": cfg.alpha, "beta": cfg.beta, "gamma": cfg.gamma}},
    )
    print(f"fused {table.n} dialogues -> {ranks_path}")
    return EXIT_OK


def cmd_select(args) -> int:
    cfg = _load(args)
    ranks_path = Path(args.ranks) if args.ranks else Path(cfg.out) / "ranks.jsonl"
    rows = pipeline.read_ranks(ranks_path)
    table = RankTable(rows=tuple(rows), alpha=cfg.alpha, beta=cfg.beta, gamma_f=cfg.gamma)
    chosen = select_top(table, cfg.ratio)
    selection_path = Path(cfg.out) / "selection.jsonl"
    pipeline.write_selection(chosen, selection_path)
    pipeline.write_manifest(
        cfg,
        "select",
        inputs=[ranks_path],
        outputs=[selection_path],
        out_dir=cfg.out,
        extra={"ratio": cfg.ratio, "selected": len(chosen), "pool": len(rows)},
    )
    print(f"selected {len(chosen)} of {len(rows)} -> {selection_path}")
    return EXIT_OK


def cmd_eval_elim(args) -> int:
    cfg = _load(args)
    scores_path = _scores_path(cfg, args)
    bundles = pipeline.read_scores(scores_path)
    table = fuse_sicf(bundles, cfg.alpha, cfg.beta, cfg.gamma)
    curves = pipeline.curves_for_rows(cfg, table.rows)
    elim_path = Path(cfg.out) / "elim.json"
    pipeline.write_elim_report(curves, elim_path)
    pipeline.write_manifest(
        cfg,
        "eval-elim",
        inputs=[scores_path, cfg.dialogues, cfg.candidates],
        outputs=[elim_path],
        out_dir=cfg.out,
        extra={"metrics": list(cfg.metrics)},
    )
    print(f"elimination curves for {len(curves)} metrics -> {elim_path}")
    return EXIT_OK


def cmd_report(args) -> int:
    cfg = _load(args)
    curves = None
    inputs = []
    elim_path = Path(args.elim) if args.elim else Path(cfg.out) / "elim.json"
    if elim_path.exists():
        curves = _read_elim(elim_path)
        inputs.append(elim_path)
    elif args.elim:
        raise FileNotFoundError(f"elimination report not found: {elim_path}")
    triples = None
    if args.ratios_file:
        triples = _read_triples(Path(args.ratios_file))
        inputs.append(Path(args.ratios_file))
    if curves is None and triples is None:
        raise ConfigError("report", "need an elimination report and/or --ratios-file")
    report = pipeline.build_report(curves, triples)
    json_path = Path(cfg.out) / "report.json"
    csv_path = Path(cfg.out) / "report.csv"
    pipeline.write_report(report, json_path, csv_path)
    pipeline.write_manifest(
        cfg, "report", inputs=inputs, outputs=[json_path, csv_path], out_dir=cfg.out
    )
    print(f"report -> {json_path}")
    return EXIT_OK


def _read_elim(path: Path):
    from .evaluation import ElimCurve

    data = json.loads(path.read_text(encoding="utf-8"))
    curves = {}
    for metric, rec in data.get("curve", {}).items():
        curves[metric] = ElimCurve(
            metric=metric,
            ratios=tuple(rec["ratios"]),
            values=tuple(rec["values"]),
            mean_0_50=float(rec["mean_0_50"]),
            mean_0_90=float(rec["mean_0_90"]),
        )
    return curves


def _read_triples(path: Path) -> dict:
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ConfigError("ratios_file", f"{path}: must be a JSON object keyed by metric")
    for metric, triple in data.items():
        if not isinstance(triple, dict) or {"ms_m", "ms_ini", "ms_ora"} - set(triple):
            raise ConfigError(
                "ratios_file", f"{path}: entry {metric!r} needs ms_m, ms_ini, ms_ora"
            )
    return data


def cmd_grid_search(args) -> int:
    cfg = _load(args)
    scores_path = _scores_path(cfg, args)
    bundles = pipeline.read_scores(scores_path)
    rows = pipeline.grid_search(cfg, bundles)
    grid_path = Path(cfg.out) / "grid.jsonl"
    pipeline.write_grid(rows, grid_path)
    pipeline.write_manifest(
        cfg,
        "grid-search",
        inputs=[scores_path, cfg.dialogues, cfg.candidates],
        outputs=[grid_path],
        out_dir=cfg.out,
        extra={"combinations": len(rows)},
    )
    print(f"grid search over {len(rows)} combinations -> {grid_path}")
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _load(args)
    if cfg.provider != "files":
        raise ConfigError("provider", "validate requires provider='files' with export paths")
    errors = validate_export_bundle(
        cfg.dialogues,
        cfg.candidates,
        cfg.embeddings_file,
        cfg.tags_file,
        cfg.nli_file,
        expected_k=args.expected_k if args.expected_k is not None else cfg.k,
    )
    for message in errors:
        print(message)
    if errors:
        print(f"{len(errors)} validation errors")
        return EXIT_FINDINGS
    print("export bundle valid")
    return EXIT_OK


HANDLERS = {
    "score": cmd_score,
    "fuse": cmd_fuse,
    "select": cmd_select,
    "eval-elim": cmd_eval_elim,
    "report": cmd_report,
    "grid-search": cmd_grid_search,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CorpusSchemaError, CorpusValidationError, ExportLookupError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FileNotFoundError, EmptyCorpusError) as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
