"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).

Everything here runs against the stub backend; no model server is needed.
The two corpus-scale checks are conditional on real corpora supplied via
READLAB_PLOS_CORPUS / READLAB_CDSR_CORPUS and skip otherwise.
"""

import functools
import json
import math
import os
import pathlib
import random
import subprocess
import sys
import time

import pytest

from readlab.complexity import (
    StubBackend,
    np_probabilities,
    nptc,
    nptc_from_probabilities,
    rnptc,
    rnptc_from_probabilities,
)
from readlab.corpus import corpus_stats, load_jsonl
from readlab.oracle import greedy_oracle_trace
from readlab.overlap import ngram_overlap_fraction, rouge_l, rouge_n
from readlab.rankstats import spearman
from readlab.readability import TextStats, classic_scores
from readlab.report import readability_report
from readlab.textseg import tokenize

from tests.test_overlap import oracle_lcs, oracle_rouge_n
from tests.test_rankstats import oracle_spearman

DATA = pathlib.Path(__file__).parent / "data"
FIXTURE = str(DATA / "fixture50.jsonl")
STUB_TABLE = str(DATA / "stub_table.json")


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except pytest.skip.Exception:
                print(f"ACCEPTANCE {name}: SKIP", flush=True)
                raise
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL", flush=True)
                raise
            print(f"ACCEPTANCE {name}: PASS", flush=True)
            return result

        return wrapper

    return decorate


def _stub_instance(rng, n_phrases):
    """Text whose filtered noun phrases are n distinct single-word tokens,
    plus a stub backend assigning each a random probability in (0, 1]."""
    words = [f"term{idx}x" for idx in range(n_phrases)]
    probs = [rng.uniform(1e-6, 1.0) for _ in range(n_phrases)]
    text = ", ".join(words)
    backend = StubBackend(table=dict(zip(words, probs)), default=0.5)
    return text, backend, probs


def _hand_eq2(probs):
    ordered = sorted(probs, reverse=True)
    return -math.log(
        sum(p / math.sqrt(i) for i, p in enumerate(ordered, start=1)) / len(ordered)
    )


@criterion("eq2-exactness")
def test_c1_eq2_exactness():
    started = time.perf_counter()
    backend = StubBackend(table={"disease": 0.9, "vaccine": 0.4}, default=0.5)
    value = rnptc("disease, vaccine", backend)
    assert abs(value - _hand_eq2([0.9, 0.4])) < 1e-9
    # the quoted five-decimal figure traces the rounded intermediate 0.59142
    assert abs(value - (-math.log(0.59142))) < 1e-4

    rng = random.Random(101)
    for _ in range(50):
        text, stub, probs = _stub_instance(rng, rng.randint(1, 20))
        assert abs(rnptc(text, stub) - _hand_eq2(probs)) < 1e-9
    assert time.perf_counter() - started < 1.0


@criterion("metric-order")
def test_c2_metric_order_1000_instances():
    rng = random.Random(202)
    for case in range(1000):
        n_phrases = 1 if case % 50 == 0 else rng.randint(1, 50)
        text, stub, _ = _stub_instance(rng, n_phrases)
        n_score = nptc(text, stub)
        r_score = rnptc(text, stub)
        assert r_score >= n_score - 1e-12
        if n_phrases == 1:
            assert abs(r_score - n_score) < 1e-12
        # monotonicity: decreasing one probability never decreases either score
        probs = [np.prob for np in np_probabilities(text, stub)]
        idx = rng.randrange(len(probs))
        lowered = list(probs)
        lowered[idx] = max(1e-9, lowered[idx] * rng.uniform(0.05, 0.95))
        assert nptc_from_probabilities(lowered) >= n_score - 1e-12
        assert rnptc_from_probabilities(lowered) >= r_score - 1e-12


@criterion("spearman-oracle")
def test_c3_spearman_oracle_equivalence():
    assert abs(spearman([4.0, 3.0, 2.0, 1.0], [1.0, 1.0, 0.0, 0.0]) - 0.89443) < 1e-5
    rng = random.Random(303)
    checked = 0
    while checked < 500:
        n = rng.randint(2, 60)
        xs = [rng.uniform(0, 10) if rng.random() < 0.7 else float(rng.randint(0, 2)) for _ in range(n)]
        # at least half the cases use tied binary labels
        ys = (
            [float(rng.randint(0, 1)) for _ in range(n)]
            if checked % 2 == 0
            else [rng.uniform(0, 5) for _ in range(n)]
        )
        if min(xs) == max(xs) or min(ys) == max(ys):
            continue
        assert abs(spearman(xs, ys) - oracle_spearman(xs, ys)) < 1e-9
        checked += 1


@criterion("rouge-oracle")
def test_c4_rouge_oracle_equivalence():
    rng = random.Random(404)
    for _ in range(200):
        cand = [rng.choice("abcde") for _ in range(rng.randint(0, 12))]
        ref = [rng.choice("abcde") for _ in range(rng.randint(0, 12))]
        for n in (1, 2):
            assert rouge_n(cand, ref, n) == oracle_rouge_n(cand, ref, n)
        got = rouge_l(cand, ref)
        lcs = oracle_lcs(tuple(cand), tuple(ref))
        assert got.precision == (lcs / len(cand) if cand else 0.0)
        assert got.recall == (lcs / len(ref) if ref else 0.0)


@criterion("greedy-oracle-trace")
def test_c5_greedy_oracle_trace():
    sentences = [["a", "b"], ["c", "d"], ["a", "b", "c"]]
    reference = ["a", "b", "c", "d"]
    selected, steps = greedy_oracle_trace(sentences, reference)
    assert selected == [1, 2]
    assert abs(steps[0] - 1.417) < 1e-3
    assert abs(steps[1] - 2.0) < 1e-3

    rng = random.Random(505)
    for _ in range(100):
        sents = [
            [rng.choice("abcdef") for _ in range(rng.randint(1, 6))]
            for _ in range(rng.randint(1, 10))
        ]
        ref = [rng.choice("abcdef") for _ in range(rng.randint(1, 12))]
        _, trace = greedy_oracle_trace(sents, ref)
        assert all(b > a for a, b in zip(trace, trace[1:]))


@criterion("overlap-sanity")
def test_c6_overlap_sanity():
    tokens = "the visceral model of disease transmission".split()
    for n in range(1, 5):
        assert ngram_overlap_fraction(tokens, list(tokens), n) == 1.0
    assert ngram_overlap_fraction(["a", "b", "c"], ["b", "c", "d"], 2) == 0.5
    rng = random.Random(606)
    for _ in range(300):
        n = rng.randint(1, 4)
        pls = [rng.choice("abcd") for _ in range(rng.randint(n, 15))]
        tech = [rng.choice("abcd") for _ in range(rng.randint(0, 15))]
        value = ngram_overlap_fraction(pls, tech, n)
        assert 0.0 <= value <= 1.0


@criterion("classic-formulas")
def test_c7_classic_formulas():
    assert abs(classic_scores(TextStats(10, 1, 15, 40)).fkg - 6.01) < 1e-6
    assert abs(classic_scores(TextStats(10, 1, 10, 45)).ari - 4.765) < 1e-6
    assert abs(classic_scores(TextStats(10, 1, 10, 45)).cli - 7.70) < 1e-6
    rng = random.Random(707)
    for _ in range(200):
        stats = TextStats(
            words=rng.randint(1, 400),
            sentences=rng.randint(1, 40),
            syllables=rng.randint(1, 1200),
            letters=rng.randint(0, 3000),
        )
        k = rng.randint(2, 6)
        doubled = TextStats(stats.words * k, stats.sentences * k, stats.syllables * k, stats.letters * k)
        a, b = classic_scores(stats), classic_scores(doubled)
        assert abs(a.fkg - b.fkg) < 1e-9
        assert abs(a.cli - b.cli) < 1e-9
        assert abs(a.ari - b.ari) < 1e-9


def _run_fixture_report(hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    return subprocess.run(
        [
            sys.executable,
            "-m",
            "readlab.cli",
            "readability",
            FIXTURE,
            "--stub-table",
            STUB_TABLE,
            "--seed",
            "7",
            "--workers",
            "4",
        ],
        capture_output=True,
        env=env,
        cwd=str(pathlib.Path(__file__).parent.parent),
        timeout=60,
    )


@criterion("determinism")
def test_c8_fixture_determinism_and_runtime():
    started = time.perf_counter()
    first = _run_fixture_report("11")
    second = _run_fixture_report("222")
    elapsed = time.perf_counter() - started
    assert first.returncode == 0, first.stderr.decode()
    assert second.returncode == 0, second.stderr.decode()
    assert first.stdout == second.stdout
    json.loads(first.stdout)  # well-formed
    assert elapsed < 10.0, f"two fixture runs took {elapsed:.1f}s"


@criterion("fixture-direction")
def test_c9_fixture_direction_checks():
    # Structural stand-in for the corpus-scale direction findings: the
    # committed fixture's technical summaries must score harder than its
    # plain ones under the stub, with positive rank correlation.
    corpus = load_jsonl(FIXTURE)
    backend = StubBackend(
        **{
            "table": json.load(open(STUB_TABLE))["table"],
            "default": json.load(open(STUB_TABLE))["default"],
        }
    )
    report = readability_report(
        corpus, metrics=("rnptc", "nptc", "mrttc"), backend=backend, seed=7
    )
    agg = report.aggregates
    for metric in ("rnptc", "nptc", "mrttc"):
        assert agg["tech"][metric]["mean"] > agg["plain"][metric]["mean"]
        assert report.correlations[metric] > 0.0
        assert agg["tech"]["rnptc"]["mean"] >= agg["tech"]["nptc"]["mean"]


@criterion("corpus-scale-plos")
def test_c10_corpus_scale_plos_if_supplied():
    path = os.environ.get("READLAB_PLOS_CORPUS")
    if not path:
        pytest.skip("READLAB_PLOS_CORPUS not set; full corpus not supplied")
    corpus = load_jsonl(path)
    stats = corpus_stats(corpus)
    assert stats.doc_count == 28124
    assert abs(stats.avg_doc_words - 6697) / 6697 < 0.05
    assert abs(stats.avg_tech_words - 287) / 287 < 0.05
    assert abs(stats.avg_pls_words - 204) / 204 < 0.05

    expected_overlap = {1: 0.67, 2: 0.26, 3: 0.13, 4: 0.08}
    totals = {n: [] for n in expected_overlap}
    for triplet in corpus:
        if not triplet.technical_summary or not triplet.plain_summary:
            continue
        pls = tokenize(triplet.plain_summary).words()
        tech = tokenize(triplet.technical_summary).words()
        for n in expected_overlap:
            if len(pls) >= n:
                totals[n].append(ngram_overlap_fraction(pls, tech, n))
    for n, expected in expected_overlap.items():
        mean = sum(totals[n]) / len(totals[n])
        assert abs(mean - expected) < 0.03, f"n={n}: {mean:.3f} vs {expected}"

    # classic direction: technical means exceed plain means for CLI and ARI
    report = readability_report(corpus, metrics=("cli", "ari"))
    assert report.aggregates["tech"]["cli"]["mean"] > report.aggregates["plain"]["cli"]["mean"]
    assert report.aggregates["tech"]["ari"]["mean"] > report.aggregates["plain"]["ari"]["mean"]
