"""End-to-end demo over the committed fixture corpus and stub backend.

Prints the corpus statistics, the readability report's group means and
correlations (the shape used for corpus analyses), and the n-gram overlap
row for target-vs-target pairs. Run from the repository root:

    python scripts/run_demo.py
"""

from __future__ import annotations

import pathlib
import statistics
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from readlab.complexity import load_stub_backend
from readlab.corpus import corpus_stats, load_jsonl
from readlab.overlap import ngram_overlap_fraction
from readlab.report import readability_report
from readlab.textseg import tokenize

DATA = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def main() -> None:
    corpus = load_jsonl(str(DATA / "fixture50.jsonl"))
    backend = load_stub_backend(str(DATA / "stub_table.json"))

    stats = corpus_stats(corpus)
    print(f"documents: {stats.doc_count}")
    print(
        f"avg words  doc={stats.avg_doc_words:.1f} "
        f"tech={stats.avg_tech_words:.1f} pls={stats.avg_pls_words:.1f}"
    )

    report = readability_report(
        corpus,
        metrics=("rnptc", "nptc", "mrttc", "cli", "fkg", "ari"),
        backend=backend,
        seed=7,
    )
    print(f"\n{'metric':<8} {'tech mean':>10} {'plain mean':>11} {'spearman':>9}")
    for metric in ("rnptc", "nptc", "mrttc", "cli", "fkg", "ari"):
        tech = report.aggregates["tech"][metric]["mean"]
        plain = report.aggregates["plain"][metric]["mean"]
        rho = report.correlations[metric]
        print(f"{metric:<8} {tech:>10.3f} {plain:>11.3f} {rho:>9.3f}")

    print(f"\n{'overlap':<8} " + " ".join(f"{f'n={n}':>7}" for n in range(1, 5)))
    means = []
    for n in range(1, 5):
        values = [
            ngram_overlap_fraction(
                tokenize(t.plain_summary).words(), tokenize(t.technical_summary).words(), n
            )
            for t in corpus
        ]
        means.append(statistics.fmean(values))
    print(f"{'targets':<8} " + " ".join(f"{m:>7.3f}" for m in means))


if __name__ == "__main__":
    main()
