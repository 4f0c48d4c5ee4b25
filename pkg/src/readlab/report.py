"""Metric report assembly: per-summary scoring, grouped means, Spearman
correlations against the binary readability label, and deterministic
serialization (sorted keys, floats fixed at five decimals).
"""

from __future__ import annotations

import hashlib
import json
import statistics
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import complexity
from .complexity import ComplexityError, MaskBackend, MaskProbe, ProbeResult
from .corpus import Corpus, SystemOutput
from .overlap import ngram_overlap_fraction, rouge_l, rouge_n
from .rankstats import spearman
from .readability import classic_scores, compute_text_stats
from .textseg import Tagger, tokenize

__all__ = [
    "READABILITY_METRICS",
    "ALL_METRICS",
    "MetricReport",
    "group_means",
    "readability_report",
    "system_eval",
    "format_json",
    "format_csv",
]

READABILITY_METRICS = ("ari", "cli", "fkg", "mrttc", "nptc", "rnptc")
MLM_METRICS = ("mrttc", "nptc", "rnptc")
ALL_METRICS = READABILITY_METRICS + ("rouge", "overlap")

# A report cell is either a float score or an error-reason string.
Cell = float | str


@dataclass
class MetricReport:
    """Per-document cells plus group aggregates and correlations.

    ``per_document`` maps id -> readability -> metric -> cell; every
    (id, readability) pair present in the input appears exactly once.
    """

    per_document: dict[str, dict[str, dict[str, Cell]]]
    aggregates: dict[str, dict[str, dict[str, float | int]]]
    correlations: dict[str, float | None]
    meta: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        per_doc = {
            doc_id: {
                level: {
                    metric: (cell if isinstance(cell, float) else {"error": cell})
                    for metric, cell in metrics.items()
                }
                for level, metrics in levels.items()
            }
            for doc_id, levels in self.per_document.items()
        }
        return {
            "per_document": per_doc,
            "aggregates": self.aggregates,
            "correlations": self.correlations,
            "meta": self.meta,
        }


def group_means(
    per_document: Mapping[str, Mapping[str, Mapping[str, Cell]]]
) -> dict[str, dict[str, dict[str, float | int]]]:
    """Mean per (readability, metric) over numeric cells; error cells are
    excluded per metric with the exclusion count surfaced. Groups with no
    cells at all stay absent.
    """
    buckets: dict[tuple[str, str], tuple[list[float], list[int]]] = {}
    for levels in per_document.values():
        for level, metrics in levels.items():
            for metric, cell in metrics.items():
                values, excluded = buckets.setdefault((level, metric), ([], [0]))
                if isinstance(cell, str):
                    excluded[0] += 1
                else:
                    values.append(cell)
    out: dict[str, dict[str, dict[str, float | int]]] = {}
    for (level, metric), (values, excluded) in sorted(buckets.items()):
        entry: dict[str, float | int] = {"count": len(values), "excluded": excluded[0]}
        if values:
            entry["mean"] = statistics.fmean(values)
        out.setdefault(level, {})[metric] = entry
    return out


def _correlations(
    per_document: Mapping[str, Mapping[str, Mapping[str, Cell]]],
    metrics: Sequence[str],
) -> dict[str, float | None]:
    label_of = {"tech": 1.0, "plain": 0.0}
    out: dict[str, float | None] = {}
    for metric in metrics:
        scores: list[float] = []
        labels: list[float] = []
        for doc_id in sorted(per_document):
            for level in sorted(per_document[doc_id]):
                cell = per_document[doc_id][level].get(metric)
                if isinstance(cell, float):
                    scores.append(cell)
                    labels.append(label_of[level])
        try:
            out[metric] = spearman(scores, labels)
        except ValueError:
            out[metric] = None
    return out


class _CountingBackend:
    """Wraps a backend to count truncated probes across a run."""

    def __init__(self, inner: MaskBackend):
        self.inner = inner
        self.truncated = 0
        self._lock = threading.Lock()

    def score(self, probe: MaskProbe) -> ProbeResult:
        result = self.inner.score(probe)
        if result.truncated:
            with self._lock:
                self.truncated += 1
        return result


def _summary_seed(base_seed: int, doc_id: str, readability: str) -> int:
    # Stable per-summary seed so parallel scheduling cannot change results.
    digest = hashlib.sha256(f"{base_seed}:{doc_id}:{readability}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _score_summary(
    text: str,
    metrics: Sequence[str],
    backend: MaskBackend | None,
    seed: int,
    mask_ratio: float,
    tagger: Tagger | None,
    stopwords: frozenset[str] | None,
) -> dict[str, Cell]:
    cells: dict[str, Cell] = {}
    classic_wanted = [m for m in ("fkg", "cli", "ari") if m in metrics]
    if classic_wanted:
        try:
            scores = classic_scores(compute_text_stats(tokenize(text)))
            for m in classic_wanted:
                cells[m] = getattr(scores, m)
        except ValueError as exc:
            for m in classic_wanted:
                cells[m] = str(exc)
    if "mrttc" in metrics:
        assert backend is not None
        try:
            cells["mrttc"] = complexity.mrttc(text, backend, mask_ratio=mask_ratio, seed=seed)
        except ComplexityError as exc:
            cells["mrttc"] = str(exc)
    np_wanted = [m for m in ("nptc", "rnptc") if m in metrics]
    if np_wanted:
        assert backend is not None
        try:
            probs = [
                np.prob
                for np in complexity.np_probabilities(text, backend, tagger, stopwords)
            ]
            if "nptc" in np_wanted:
                cells["nptc"] = complexity.nptc_from_probabilities(probs)
            if "rnptc" in np_wanted:
                cells["rnptc"] = complexity.rnptc_from_probabilities(probs)
        except ComplexityError as exc:
            for m in np_wanted:
                cells[m] = str(exc)
    return cells


def _run_parallel(
    items: Sequence[tuple[str, str, str]],
    score_one: Callable[[tuple[str, str, str]], dict[str, Cell]],
    workers: int,
    progress: Callable[[str], None] | None,
) -> dict[str, dict[str, dict[str, Cell]]]:
    per_document: dict[str, dict[str, dict[str, Cell]]] = {}

    def timed(item: tuple[str, str, str]) -> tuple[str, str, dict[str, Cell]]:
        doc_id, level, text = item
        started = time.monotonic()
        cells = score_one(item)
        if progress is not None:
            progress(f"{doc_id}/{level}: {time.monotonic() - started:.3f}s")
        return doc_id, level, cells

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(timed, items))
    else:
        results = [timed(item) for item in items]
    for doc_id, level, cells in results:
        per_document.setdefault(doc_id, {})[level] = cells
    # Deterministic assembly order regardless of scheduling.
    return {
        doc_id: {level: per_document[doc_id][level] for level in sorted(per_document[doc_id])}
        for doc_id in sorted(per_document)
    }


def readability_report(
    corpus: Corpus,
    metrics: Sequence[str],
    backend: MaskBackend | None = None,
    seed: int = 0,
    mask_ratio: float = 0.15,
    tagger: Tagger | None = None,
    stopwords: frozenset[str] | None = None,
    workers: int = 1,
    progress: Callable[[str], None] | None = None,
) -> MetricReport:
    """Score every present summary under every requested readability metric."""
    unknown = set(metrics) - set(READABILITY_METRICS)
    if unknown:
        raise ValueError(f"unknown readability metrics: {sorted(unknown)}")
    if any(m in MLM_METRICS for m in metrics) and backend is None:
        raise ValueError("masked-LM metrics require a backend")

    counting = _CountingBackend(backend) if backend is not None else None
    items: list[tuple[str, str, str]] = []
    for triplet in corpus:
        for level in ("tech", "plain"):
            text = triplet.summary(level)
            if text is not None:
                items.append((triplet.id, level, text))

    def score_one(item: tuple[str, str, str]) -> dict[str, Cell]:
        doc_id, level, text = item
        return _score_summary(
            text,
            metrics,
            counting,
            _summary_seed(seed, doc_id, level),
            mask_ratio,
            tagger,
            stopwords,
        )

    per_document = _run_parallel(items, score_one, workers, progress)
    report = MetricReport(
        per_document=per_document,
        aggregates=group_means(per_document),
        correlations=_correlations(per_document, sorted(metrics)),
        meta={
            "metrics": sorted(metrics),
            "seed": seed,
            "mask_ratio": mask_ratio,
            "log_base": "e",
            "summaries_scored": len(items),
            "truncated_probes": counting.truncated if counting else 0,
        },
    )
    return report


def system_eval(
    targets: Corpus,
    outputs: Sequence[SystemOutput],
    metrics: Sequence[str],
    backend: MaskBackend | None = None,
    seed: int = 0,
    mask_ratio: float = 0.15,
    tagger: Tagger | None = None,
    stopwords: frozenset[str] | None = None,
    workers: int = 1,
    progress: Callable[[str], None] | None = None,
) -> MetricReport:
    """Evaluate system outputs against their same-readability targets:
    ROUGE-1/2/L per output, n-gram overlap (n=1..4) between the two outputs
    sharing an id, and readability metrics of the outputs themselves.
    """
    unknown = set(metrics) - set(ALL_METRICS)
    if unknown:
        raise ValueError(f"unknown metrics: {sorted(unknown)}")
    readability_metrics = [m for m in metrics if m in READABILITY_METRICS]
    if any(m in MLM_METRICS for m in metrics) and backend is None:
        raise ValueError("masked-LM metrics require a backend")

    orphans = []
    seen: set[tuple[str, str]] = set()
    target_by_id = {t.id: t for t in targets}
    for out in outputs:
        key = (out.id, out.readability)
        if key in seen:
            raise ValueError(f"duplicate output for id {out.id!r} readability {out.readability!r}")
        seen.add(key)
        target = target_by_id.get(out.id)
        if target is None or target.summary(out.readability) is None:
            orphans.append(f"{out.id}/{out.readability}")
    if orphans:
        raise ValueError(f"outputs without matching targets: {', '.join(sorted(orphans))}")

    counting = _CountingBackend(backend) if backend is not None else None
    items = [(out.id, out.readability, out.summary) for out in outputs]

    def score_one(item: tuple[str, str, str]) -> dict[str, Cell]:
        doc_id, level, text = item
        cells: dict[str, Cell] = {}
        if readability_metrics:
            cells.update(
                _score_summary(
                    text,
                    readability_metrics,
                    counting,
                    _summary_seed(seed, doc_id, level),
                    mask_ratio,
                    tagger,
                    stopwords,
                )
            )
        if "rouge" in metrics:
            reference = target_by_id[doc_id].summary(level)
            cand_tokens = tokenize(text).words()
            ref_tokens = tokenize(reference).words()
            for name, score in (
                ("rouge1", rouge_n(cand_tokens, ref_tokens, 1)),
                ("rouge2", rouge_n(cand_tokens, ref_tokens, 2)),
                ("rougeL", rouge_l(cand_tokens, ref_tokens)),
            ):
                cells[f"{name}_precision"] = score.precision
                cells[f"{name}_recall"] = score.recall
                cells[f"{name}_f1"] = score.f1
        return cells

    per_document = _run_parallel(items, score_one, workers, progress)

    overlap_section: dict = {}
    if "overlap" in metrics:
        by_id: dict[str, dict[str, str]] = {}
        for out in outputs:
            by_id.setdefault(out.id, {})[out.readability] = out.summary
        per_pair: dict[str, dict[str, Cell]] = {}
        skipped = 0
        for doc_id in sorted(by_id):
            pair = by_id[doc_id]
            if "tech" not in pair or "plain" not in pair:
                skipped += 1
                continue
            pls_tokens = tokenize(pair["plain"]).words()
            tech_tokens = tokenize(pair["tech"]).words()
            fractions: dict[str, Cell] = {}
            for n in range(1, 5):
                try:
                    fractions[f"n{n}"] = ngram_overlap_fraction(pls_tokens, tech_tokens, n)
                except ValueError as exc:
                    fractions[f"n{n}"] = str(exc)
            per_pair[doc_id] = fractions
        means: dict[str, float] = {}
        for n in range(1, 5):
            values = [
                cell
                for fractions in per_pair.values()
                if isinstance(cell := fractions[f"n{n}"], float)
            ]
            if values:
                means[f"n{n}"] = statistics.fmean(values)
        overlap_section = {
            "per_pair": {
                doc_id: {
                    key: (cell if isinstance(cell, float) else {"error": cell})
                    for key, cell in fractions.items()
                }
                for doc_id, fractions in per_pair.items()
            },
            "means": means,
            "pairs": len(per_pair),
            "skipped_pairs": skipped,
        }

    correlated = sorted(readability_metrics)
    report = MetricReport(
        per_document=per_document,
        aggregates=group_means(per_document),
        correlations=_correlations(per_document, correlated),
        meta={
            "metrics": sorted(metrics),
            "seed": seed,
            "mask_ratio": mask_ratio,
            "log_base": "e",
            "summaries_scored": len(items),
            "truncated_probes": counting.truncated if counting else 0,
        },
    )
    if overlap_section:
        report.meta["overlap"] = overlap_section
    return report


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.5f}"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    raise TypeError(f"unsupported scalar in report: {type(value)}")


def format_json(value: object, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, floats at exactly five decimals."""
    pad = "  " * indent
    inner_pad = "  " * (indent + 1)
    if isinstance(value, Mapping):
        if not value:
            return "{}"
        parts = [
            f"{inner_pad}{json.dumps(str(key), ensure_ascii=False)}: {format_json(value[key], indent + 1)}"
            for key in sorted(value, key=str)
        ]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        parts = [f"{inner_pad}{format_json(item, indent + 1)}" for item in value]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    return _format_value(value)


def format_csv(report: MetricReport) -> str:
    """Long-form CSV: one row per (id, readability, metric) cell, then
    aggregate and correlation rows.
    """
    lines = ["section,id,readability,metric,value,error,count,excluded"]

    def csv_quote(text: str) -> str:
        if any(c in text for c in ",\"\n"):
            return '"' + text.replace('"', '""') + '"'
        return text

    for doc_id in sorted(report.per_document):
        for level in sorted(report.per_document[doc_id]):
            for metric in sorted(report.per_document[doc_id][level]):
                cell = report.per_document[doc_id][level][metric]
                value = f"{cell:.5f}" if isinstance(cell, float) else ""
                error = "" if isinstance(cell, float) else csv_quote(cell)
                lines.append(f"per_document,{csv_quote(doc_id)},{level},{metric},{value},{error},,")
    for level in sorted(report.aggregates):
        for metric in sorted(report.aggregates[level]):
            entry = report.aggregates[level][metric]
            mean = f"{entry['mean']:.5f}" if "mean" in entry else ""
            lines.append(
                f"aggregate,,{level},{metric},{mean},,{entry['count']},{entry['excluded']}"
            )
    for metric in sorted(report.correlations):
        rho = report.correlations[metric]
        value = f"{rho:.5f}" if rho is not None else ""
        lines.append(f"correlation,,,{metric},{value},,,")
    return "\n".join(lines) + "\n"
