"""Pipeline orchestration: scoring a corpus, artifact files, manifests.

Commands compose through files (score -> fuse -> select, score -> eval-elim)
so re-fusing with new coefficients never re-scores. All artifacts are
deterministic for a fixed (config, inputs, seed): no timestamps, stable key
order, dialogue-id output ordering, and a config hash that excludes
execution-only knobs (thread count).
"""

import csv
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .config import RunConfig
from .corpus import Dialogue, SummarySet, load_candidates, load_corpus
from .errors import CorpusValidationError, InvariantViolation
from .evaluation import ElimCurve, EvalSample, elimination_curve, improved_ratio
from .fusion import RankRow, RankTable, ScoreBundle, fuse_sicf
from .providers import FileProviderSet, SyntheticProviderSet
from .scoring import (
    CoverageInputs,
    FaithfulnessInputs,
    SentenceInfo,
    coverage_matrix,
    dialogue_noun_types,
    faithfulness_matrix,
    noun_occurrences,
    representative_summary,
    semantic_invariance,
    sentence_noun_weight,
)
from .text import split_sentences
from .uncertainty import apply_phi

COVERAGE_DEGENERATE = "coverage-degenerate"

GRID_VALUES = (0.0, 0.25, 0.5, 0.75, 1.0)


def build_providers(cfg: RunConfig):
    if cfg.provider == "synthetic":
        return SyntheticProviderSet(dim=cfg.embedding_dim, seed=cfg.seed)
    return FileProviderSet(cfg.embeddings_file, cfg.tags_file, cfg.nli_file)


def score_dialogue(
    dialogue: Dialogue,
    summary_set: SummarySet,
    providers,
    cfg: RunConfig,
) -> tuple[ScoreBundle, list[dict]]:
    """Score one dialogue; returns the bundle plus debug matrix dumps."""
    did = dialogue.id
    candidates = summary_set.candidates
    phi = cfg.phi_config
    debug: list[dict] = []

    embeddings = [
        providers.candidate_embedding(did, i, text) for i, text in enumerate(candidates)
    ]
    lambda_sein = semantic_invariance(embeddings)
    representative_idx = representative_summary(embeddings)

    turn_tags = providers.dialogue_turn_tags(dialogue)
    noun_types = dialogue_noun_types(turn_tags)
    candidate_tags = [
        providers.candidate_tags(did, i, text) for i, text in enumerate(candidates)
    ]

    flags = set()
    if noun_types:
        dialogue_nouns = [
            (nt, providers.dialogue_noun_embedding(did, j, nt.surface))
            for j, nt in enumerate(noun_types)
        ]
        candidate_nouns = []
        for i, tags in enumerate(candidate_tags):
            surfaces = noun_occurrences(tags)
            candidate_nouns.append(
                [
                    providers.candidate_noun_embedding(did, i, occ, surface)
                    for occ, surface in enumerate(surfaces)
                ]
            )
        cov = coverage_matrix(
            CoverageInputs(dialogue_nouns=dialogue_nouns, candidate_nouns=candidate_nouns),
            penalty=cfg.coverage_penalty,
        )
        lambda_cov = apply_phi(cov, phi)
        if cfg.debug_matrices:
            debug.append(_matrix_dump(did, cov))
    else:
        # A dialogue without nouns is its own difficulty, not the summary's
        # fault: coverage contributes a neutral 0 and the record is flagged.
        lambda_cov = 0.0
        flags.add(COVERAGE_DEGENERATE)

    sentences = [
        SentenceInfo(text=turn, noun_weight=sentence_noun_weight(turn_tags[a]))
        for a, turn in enumerate(dialogue.turns)
    ]
    fai_inputs = FaithfulnessInputs(
        dialogue_sentences=sentences,
        candidate_sentences=[split_sentences(text) for text in candidates],
    )

    def nli(cand_idx, premise_idx, hypothesis_idx, premise, hypothesis):
        return providers.nli(did, cand_idx, premise_idx, hypothesis_idx, premise, hypothesis)

    fai = faithfulness_matrix(fai_inputs, nli, penalty=cfg.faithfulness_penalty)
    lambda_fai = apply_phi(fai, phi)
    if cfg.debug_matrices:
        debug.append(_matrix_dump(did, fai))

    bundle = ScoreBundle(
        dialogue_id=did,
        lambda_sein=lambda_sein,
        lambda_cov=lambda_cov,
        lambda_fai=lambda_fai,
        phi_used=phi,
        flags=frozenset(flags),
        representative_idx=representative_idx,
        k=len(candidates),
    )
    return bundle, debug


def score_corpus(cfg: RunConfig):
    """Score every dialogue; returns (bundles, debug dumps), both id-sorted."""
    split = load_corpus(cfg.dialogues, kind="auto")
    candidate_sets = load_candidates(cfg.candidates)
    providers = build_providers(cfg)

    dialogues = sorted(split.dialogues(), key=lambda d: d.id)
    for dialogue in dialogues:
        if dialogue.id not in candidate_sets:
            raise CorpusValidationError(f"no candidate set for dialogue {dialogue.id!r}")
        found = len(candidate_sets[dialogue.id].candidates)
        if found != cfg.k:
            raise CorpusValidationError(
                f"dialogue {dialogue.id!r} has {found} candidates, config k={cfg.k}"
            )

    def work(dialogue):
        return score_dialogue(dialogue, candidate_sets[dialogue.id], providers, cfg)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(work, dialogues))
    else:
        results = [work(d) for d in dialogues]

    bundles = [bundle for bundle, _ in results]
    debug = [dump for _, dumps in results for dump in dumps]
    return bundles, debug, providers


def _matrix_dump(dialogue_id: str, matrix) -> dict:
    return {
        "id": dialogue_id,
        "kind": matrix.kind,
        "rows": matrix.k,
        "cols": matrix.cols,
        "values": [[float(v) for v in row] for row in matrix.values],
    }


# ---------------------------------------------------------------------------
# artifact files


def _dump_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n"


def write_scores(bundles, path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for b in sorted(bundles, key=lambda b: b.dialogue_id):
            fh.write(
                _dump_line(
                    {
                        "id": b.dialogue_id,
                        "lambda_sein": b.lambda_sein,
                        "lambda_cov": b.lambda_cov,
                        "lambda_fai": b.lambda_fai,
                        "k": b.k,
                        "representative_candidate_idx": b.representative_idx,
                        "flags": sorted(b.flags),
                        "phi": {"method": b.phi_used.method, "bnn_kind": b.phi_used.bnn_kind},
                    }
                )
            )


def read_scores(path) -> list[ScoreBundle]:
    from .corpus import iter_jsonl
    from .errors import CorpusSchemaError
    from .uncertainty import PhiConfig

    bundles = []
    for line_no, rec in iter_jsonl(path):
        try:
            phi = rec.get("phi", {})
            bundles.append(
                ScoreBundle(
                    dialogue_id=rec["id"],
                    lambda_sein=float(rec["lambda_sein"]),
                    lambda_cov=float(rec["lambda_cov"]),
                    lambda_fai=float(rec["lambda_fai"]),
                    phi_used=PhiConfig(
                        method=phi.get("method", "mean"),
                        bnn_kind=phi.get("bnn_kind", "predictive"),
                    ),
                    flags=frozenset(rec.get("flags", [])),
                    representative_idx=int(rec.get("representative_candidate_idx", 0)),
                    k=int(rec.get("k", 1)),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusSchemaError(Path(path), line_no, f"bad score record: {exc}") from exc
    return bundles


def _rank_record(row: RankRow) -> dict:
    return {
        "id": row.dialogue_id,
        "lambda_sicf": row.lambda_sicf,
        "delta": {"sein": row.delta_sein, "cov": row.delta_cov, "fai": row.delta_fai},
        "representative_candidate_idx": row.representative_idx,
        "flags": sorted(row.flags),
    }


def write_ranks(table: RankTable, path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for row in sorted(table.rows, key=lambda r: r.dialogue_id):
            fh.write(_dump_line(_rank_record(row)))


def read_ranks(path) -> list[RankRow]:
    from .corpus import iter_jsonl
    from .errors import CorpusSchemaError

    rows = []
    for line_no, rec in iter_jsonl(path):
        try:
            rows.append(
                RankRow(
                    dialogue_id=rec["id"],
                    delta_sein=int(rec["delta"]["sein"]),
                    delta_cov=int(rec["delta"]["cov"]),
                    delta_fai=int(rec["delta"]["fai"]),
                    lambda_sicf=float(rec["lambda_sicf"]),
                    flags=frozenset(rec.get("flags", [])),
                    representative_idx=int(rec.get("representative_candidate_idx", 0)),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusSchemaError(Path(path), line_no, f"bad rank record: {exc}") from exc
    return rows


def write_selection(rows, path) -> None:
    """Selected rows, best first (the order select_top returns)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(_dump_line(_rank_record(row)))


def write_debug_matrices(dumps, path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for dump in sorted(dumps, key=lambda d: (d["id"], d["kind"])):
            fh.write(_dump_line(dump))


# ---------------------------------------------------------------------------
# evaluation plumbing


def worst_first_order(rows) -> list[str]:
    """Dialogue ids from lowest fused score (worst) to highest."""
    return [r.dialogue_id for r in sorted(rows, key=lambda r: (r.lambda_sicf, r.dialogue_id))]


def eval_samples(cfg: RunConfig, rows) -> list[EvalSample]:
    """Pair each ranked dialogue's representative candidate with its reference."""
    split = load_corpus(cfg.dialogues, kind="auto")
    references = split.references()
    candidate_sets = load_candidates(cfg.candidates)
    samples = []
    for row in sorted(rows, key=lambda r: r.dialogue_id):
        did = row.dialogue_id
        if did not in references:
            raise CorpusValidationError(
                f"dialogue {did!r} has no reference summary; elimination needs labels"
            )
        if did not in candidate_sets:
            raise CorpusValidationError(f"no candidate set for dialogue {did!r}")
        candidates = candidate_sets[did].candidates
        if not 0 <= row.representative_idx < len(candidates):
            raise InvariantViolation(
                f"representative index {row.representative_idx} out of range for {did!r}"
            )
        samples.append(
            EvalSample(
                sample_id=did,
                prediction=candidates[row.representative_idx],
                reference=references[did],
            )
        )
    return samples


def curves_for_rows(cfg: RunConfig, rows) -> dict[str, ElimCurve]:
    samples = eval_samples(cfg, rows)
    order = worst_first_order(rows)
    embed_fn = SyntheticProviderSet(dim=cfg.embedding_dim, seed=cfg.seed).embedder.embed_text
    return {
        metric: elimination_curve(samples, order, metric, embed_fn) for metric in cfg.metrics
    }


def curve_record(curve: ElimCurve) -> dict:
    return {
        "ratios": list(curve.ratios),
        "values": list(curve.values),
        "mean_0_50": curve.mean_0_50,
        "mean_0_90": curve.mean_0_90,
    }


def write_elim_report(curves: dict[str, ElimCurve], path) -> None:
    record = {"curve": {metric: curve_record(c) for metric, c in sorted(curves.items())}}
    Path(path).write_text(
        json.dumps(record, sort_keys=True, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )


def grid_search(cfg: RunConfig, bundles) -> list[dict]:
    """Fuse with every coefficient combination on the 5-value grid and rank
    the valid combinations by elimination mean_0_90 of the first metric.

    The all-zero combination cannot be fused; its row is kept, flagged
    invalid, so the enumeration stays complete.
    """
    metric = cfg.metrics[0]
    # Samples depend only on the representative candidates, not on the
    # coefficients; build them once from any valid fusion.
    samples = eval_samples(cfg, fuse_sicf(bundles, 1.0, 1.0, 1.0).rows)
    embed_fn = SyntheticProviderSet(dim=cfg.embedding_dim, seed=cfg.seed).embedder.embed_text
    rows_out = []
    for alpha in GRID_VALUES:
        for beta in GRID_VALUES:
            for gamma in GRID_VALUES:
                if alpha == 0.0 and beta == 0.0 and gamma == 0.0:
                    rows_out.append(
                        {
                            "alpha": alpha,
                            "beta": beta,
                            "gamma": gamma,
                            "valid": False,
                            "reason": "coefficients must not all be zero",
                        }
                    )
                    continue
                table = fuse_sicf(bundles, alpha, beta, gamma)
                order = worst_first_order(table.rows)
                curve = elimination_curve(samples, order, metric, embed_fn)
                rows_out.append(
                    {
                        "alpha": alpha,
                        "beta": beta,
                        "gamma": gamma,
                        "valid": True,
                        "metric": metric,
                        "mean_0_50": curve.mean_0_50,
                        "mean_0_90": curve.mean_0_90,
                    }
                )
    rows_out.sort(
        key=lambda r: (
            not r["valid"],
            -(r.get("mean_0_90", 0.0)),
            r["alpha"],
            r["beta"],
            r["gamma"],
        )
    )
    return rows_out


def write_grid(rows, path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(_dump_line(row))


# ---------------------------------------------------------------------------
# report assembly


def build_report(curves: dict[str, ElimCurve] | None, triples: dict | None) -> dict:
    report: dict = {}
    if curves:
        report["curve"] = {metric: curve_record(c) for metric, c in sorted(curves.items())}
    if triples:
        ratios = {}
        for metric, triple in sorted(triples.items()):
            ms_m, ms_ini, ms_ora = (
                float(triple["ms_m"]),
                float(triple["ms_ini"]),
                float(triple["ms_ora"]),
            )
            ratios[metric] = improved_ratio(ms_m, ms_ini, ms_ora)
        report["improved_ratio"] = ratios
    return report


def write_report(report: dict, json_path, csv_path) -> None:
    Path(json_path).write_text(
        json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )
    with Path(csv_path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["section", "metric", "value_1", "value_2"])
        for metric, rec in sorted(report.get("curve", {}).items()):
            writer.writerow(["curve_mean", metric, rec["mean_0_50"], rec["mean_0_90"]])
        for metric, value in sorted(report.get("improved_ratio", {}).items()):
            writer.writerow(["improved_ratio", metric, value, f"{round(value * 100):d}%"])


# ---------------------------------------------------------------------------
# manifests


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(cfg: RunConfig, command: str, inputs, outputs, out_dir, extra=None) -> Path:
    """Deterministic provenance record: engine version, config hash (threads
    excluded), input/output digests. No timestamps."""
    record = {
        "engine_version": __version__,
        "command": command,
        "config_hash": cfg.config_hash(),
        "inputs": {str(p): sha256_file(p) for p in inputs},
        "outputs": {str(p): sha256_file(p) for p in outputs},
    }
    if extra:
        record.update(extra)
    path = Path(out_dir) / f"{command}.manifest.json"
    path.write_text(
        json.dumps(record, sort_keys=True, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )
    return path
