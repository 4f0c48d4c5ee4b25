"""Command-line orchestration.

Subcommands::

    readlab stats <corpus.jsonl>
    readlab split <corpus.jsonl> --seed N --val K --test K --out-dir D
    readlab readability <corpus.jsonl> [--config cfg.json] [flags]
    readlab evaluate <targets.jsonl> <outputs.jsonl> [--config cfg.json] [flags]
    readlab oracle <corpus.jsonl> --readability tech|plain [--budget [N]]

Reports go to stdout (JSON with sorted keys and five-decimal floats, or
CSV); progress and per-document timing go to stderr. Exit codes: 0 on
success, 1 on validation errors, 2 on backend failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

from .complexity import BackendError, HttpBackend, MaskBackend, load_stub_backend
from .corpus import (
    Corpus,
    CorpusFormatError,
    SplitSpec,
    load_jsonl,
    load_outputs_jsonl,
    split_corpus,
    corpus_stats,
    write_jsonl,
)
from .oracle import greedy_oracle, topk_select
from .overlap import rouge_n
from .rankstats import spearman  # noqa: F401  (re-exported for scripts)
from .report import (
    ALL_METRICS,
    MLM_METRICS,
    READABILITY_METRICS,
    format_csv,
    format_json,
    readability_report,
    system_eval,
)
from .stopwords import load_stopwords
from .textseg import tokenize

BACKEND_URL_ENV = "READLAB_BACKEND_URL"

# Average target-summary word counts used as the default extraction budgets.
DEFAULT_BUDGETS = {"tech": 287, "plain": 204}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class EvalConfig:
    backend_url: str | None = None
    stub_table: str | None = None
    metrics: tuple[str, ...] | None = None  # None means subcommand defaults
    seed: int = 0
    mask_ratio: float = 0.15
    stopword_path: str | None = None
    output_format: str = "json"
    workers: int = 1

    def validate(self) -> None:
        if self.backend_url and self.stub_table:
            raise UsageError("choose one of --backend-url or --stub-table, not both")
        if not 0.0 < self.mask_ratio < 1.0:
            raise UsageError("mask_ratio must be in (0, 1)")
        if self.output_format not in ("json", "csv"):
            raise UsageError("format must be 'json' or 'csv'")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.metrics is not None:
            if not self.metrics:
                raise UsageError("metric set must be non-empty")
            unknown = set(self.metrics) - set(ALL_METRICS)
            if unknown:
                raise UsageError(
                    f"unknown metrics {sorted(unknown)}; choose from {', '.join(ALL_METRICS)}"
                )

    @property
    def has_backend(self) -> bool:
        return bool(self.backend_url or self.stub_table)


def _config_from_file(path: str) -> EvalConfig:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise UsageError(f"{path}: config must be a JSON object")
    backend = obj.get("backend") or {}
    if not isinstance(backend, dict):
        raise UsageError(f"{path}: 'backend' must be an object")
    metrics = obj.get("metrics")
    return EvalConfig(
        backend_url=backend.get("http"),
        stub_table=backend.get("stub"),
        metrics=tuple(metrics) if metrics is not None else None,
        seed=int(obj.get("seed", 0)),
        mask_ratio=float(obj.get("mask_ratio", 0.15)),
        stopword_path=obj.get("stopword_path"),
        output_format=str(obj.get("output_format", "json")),
        workers=int(obj.get("workers", 1)),
    )


def _resolve_config(args: argparse.Namespace) -> EvalConfig:
    config = _config_from_file(args.config) if getattr(args, "config", None) else EvalConfig()
    overrides = {}
    if getattr(args, "backend_url", None):
        overrides["backend_url"] = args.backend_url
    if getattr(args, "stub_table", None):
        overrides["stub_table"] = args.stub_table
    if getattr(args, "metrics", None):
        overrides["metrics"] = tuple(m.strip() for m in args.metrics.split(",") if m.strip())
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "mask_ratio", None) is not None:
        overrides["mask_ratio"] = args.mask_ratio
    if getattr(args, "stopwords", None):
        overrides["stopword_path"] = args.stopwords
    if getattr(args, "format", None):
        overrides["output_format"] = args.format
    if getattr(args, "workers", None) is not None:
        overrides["workers"] = args.workers
    config = replace(config, **overrides)
    if not config.has_backend and os.environ.get(BACKEND_URL_ENV):
        config = replace(config, backend_url=os.environ[BACKEND_URL_ENV])
    config.validate()
    return config


def _resolve_backend(config: EvalConfig) -> MaskBackend | None:
    """Build the configured backend, failing fast on an unhealthy server."""
    if config.stub_table:
        return load_stub_backend(config.stub_table)
    if config.backend_url:
        backend = HttpBackend(config.backend_url)
        health = backend.health()
        print(f"backend ok: {health.get('model', '?')}", file=sys.stderr)
        return backend
    return None


def _default_metrics(config: EvalConfig, evaluation: bool) -> tuple[str, ...]:
    if config.metrics is not None:
        return config.metrics
    metrics = list(READABILITY_METRICS) if config.has_backend else ["ari", "cli", "fkg"]
    if evaluation:
        metrics += ["rouge", "overlap"]
    return tuple(metrics)


def _progress(line: str) -> None:
    print(line, file=sys.stderr)


def _emit_report(report, config: EvalConfig) -> None:
    if config.output_format == "csv":
        sys.stdout.write(format_csv(report))
    else:
        sys.stdout.write(format_json(report.to_jsonable()) + "\n")


def _cmd_stats(args: argparse.Namespace) -> int:
    stats = corpus_stats(load_jsonl(args.corpus))
    payload = {
        "doc_count": stats.doc_count,
        "avg_doc_words": stats.avg_doc_words,
        "avg_tech_words": stats.avg_tech_words,
        "avg_pls_words": stats.avg_pls_words,
    }
    if args.format == "csv":
        sys.stdout.write("doc_count,avg_doc_words,avg_tech_words,avg_pls_words\n")
        sys.stdout.write(
            f"{stats.doc_count},{stats.avg_doc_words:.5f},"
            f"{stats.avg_tech_words:.5f},{stats.avg_pls_words:.5f}\n"
        )
    else:
        sys.stdout.write(format_json(payload) + "\n")
    return 0


def _cmd_split(args: argparse.Namespace) -> int:
    corpus = load_jsonl(args.corpus)
    parts = split_corpus(corpus, SplitSpec(seed=args.seed, n_validation=args.val, n_test=args.test))
    os.makedirs(args.out_dir, exist_ok=True)
    for name, part in zip(("train", "validation", "test"), parts):
        write_jsonl(part, os.path.join(args.out_dir, f"{name}.jsonl"))
    sys.stdout.write(
        format_json(
            {
                "train": len(parts.train),
                "validation": len(parts.validation),
                "test": len(parts.test),
                "out_dir": args.out_dir,
            }
        )
        + "\n"
    )
    return 0


def _cmd_readability(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    metrics = _default_metrics(config, evaluation=False)
    metrics = tuple(m for m in metrics if m in READABILITY_METRICS)
    if not metrics:
        raise UsageError("no readability metrics requested")
    if any(m in MLM_METRICS for m in metrics) and not config.has_backend:
        raise UsageError(
            "masked-LM metrics need --backend-url/--stub-table "
            f"(or ${BACKEND_URL_ENV})"
        )
    corpus = load_jsonl(args.corpus)
    backend = _resolve_backend(config)
    report = readability_report(
        corpus,
        metrics,
        backend=backend,
        seed=config.seed,
        mask_ratio=config.mask_ratio,
        stopwords=load_stopwords(config.stopword_path),
        workers=config.workers,
        progress=_progress,
    )
    _emit_report(report, config)
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    metrics = _default_metrics(config, evaluation=True)
    if any(m in MLM_METRICS for m in metrics) and not config.has_backend:
        raise UsageError(
            "masked-LM metrics need --backend-url/--stub-table "
            f"(or ${BACKEND_URL_ENV})"
        )
    targets = load_jsonl(args.targets)
    outputs = load_outputs_jsonl(args.outputs)
    backend = _resolve_backend(config)
    report = system_eval(
        targets,
        outputs,
        metrics,
        backend=backend,
        seed=config.seed,
        mask_ratio=config.mask_ratio,
        stopwords=load_stopwords(config.stopword_path),
        workers=config.workers,
        progress=_progress,
    )
    _emit_report(report, config)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    corpus = load_jsonl(args.corpus)
    level = args.readability
    skipped = 0
    for triplet in corpus:
        reference = triplet.summary(level)
        if not triplet.document or reference is None:
            skipped += 1
            continue
        doc = tokenize(triplet.document)
        sentence_tokens = []
        sentence_texts = []
        for start, end in doc.sentences:
            sentence_tokens.append(
                [t.text for t in doc.tokens[start:end] if t.kind != "punct"]
            )
            sentence_texts.append(
                doc.source[doc.tokens[start].char_start : doc.tokens[end - 1].char_end]
            )
        reference_tokens = tokenize(reference).words()
        if not reference_tokens or not sentence_tokens:
            skipped += 1
            continue
        if args.budget is None:
            selected = greedy_oracle(sentence_tokens, reference_tokens)
        else:
            budget = args.budget if args.budget > 0 else DEFAULT_BUDGETS[level]
            scores = [
                rouge_n(sent, reference_tokens, 1).recall
                + rouge_n(sent, reference_tokens, 2).recall
                for sent in sentence_tokens
            ]
            lengths = [len(sent) for sent in sentence_tokens]
            selected = topk_select(scores, lengths, budget)
        record = {
            "id": triplet.id,
            "readability": level,
            "selected": selected,
            "summary": " ".join(sentence_texts[i] for i in selected),
        }
        sys.stdout.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
    if skipped:
        print(f"skipped {skipped} records without document or target", file=sys.stderr)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit code 1 instead of argparse's 2
        raise UsageError(message)


def _add_eval_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--backend-url", help="scoring server base URL")
    sub.add_argument("--stub-table", help="JSON probability table for the stub backend")
    sub.add_argument("--metrics", help="comma-separated metric list")
    sub.add_argument("--seed", type=int, help="base seed for random-token masking")
    sub.add_argument("--mask-ratio", type=float, help="fraction of word tokens masked per sentence")
    sub.add_argument("--stopwords", help="stop-word list file (one word per line)")
    sub.add_argument("--format", choices=("json", "csv"), help="output format")
    sub.add_argument("--workers", type=int, help="parallel scoring workers")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="readlab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    p_stats = subs.add_parser("stats", help="corpus statistics")
    p_stats.add_argument("corpus")
    p_stats.add_argument("--format", choices=("json", "csv"), default="json")
    p_stats.set_defaults(func=_cmd_stats)

    p_split = subs.add_parser("split", help="seeded train/validation/test split")
    p_split.add_argument("corpus")
    p_split.add_argument("--seed", type=int, required=True)
    p_split.add_argument("--val", type=int, required=True)
    p_split.add_argument("--test", type=int, required=True)
    p_split.add_argument("--out-dir", required=True)
    p_split.set_defaults(func=_cmd_split)

    p_read = subs.add_parser("readability", help="readability metric report over a corpus")
    p_read.add_argument("corpus")
    _add_eval_flags(p_read)
    p_read.set_defaults(func=_cmd_readability)

    p_eval = subs.add_parser("evaluate", help="evaluate system outputs against targets")
    p_eval.add_argument("targets")
    p_eval.add_argument("outputs")
    _add_eval_flags(p_eval)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_oracle = subs.add_parser("oracle", help="greedy extractive oracle summaries")
    p_oracle.add_argument("corpus")
    p_oracle.add_argument("--readability", choices=("tech", "plain"), required=True)
    p_oracle.add_argument(
        "--budget",
        type=int,
        nargs="?",
        const=0,
        default=None,
        help="token budget for top-k mode; bare flag uses the per-level default "
        f"({DEFAULT_BUDGETS['tech']} tech / {DEFAULT_BUDGETS['plain']} plain)",
    )
    p_oracle.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except BackendError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, CorpusFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
