import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from readlab.corpus import (
    Corpus,
    CorpusFormatError,
    SplitSpec,
    SystemOutput,
    Triplet,
    corpus_stats,
    load_jsonl,
    load_outputs_jsonl,
    split_corpus,
    word_count,
    write_jsonl,
)


def _write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def test_load_single_triplet(tmp_path):
    path = tmp_path / "c.jsonl"
    _write_lines(
        path,
        [
            json.dumps(
                {
                    "id": "x1",
                    "document": "Full text here.",
                    "technical_summary": "Tech.",
                    "plain_summary": "Plain.",
                }
            )
        ],
    )
    corpus = load_jsonl(str(path))
    assert len(corpus) == 1
    t = corpus.triplets[0]
    assert t.id == "x1"
    assert t.summary("tech") == "Tech."
    assert t.summary("plain") == "Plain."


def test_missing_id_reports_line(tmp_path):
    path = tmp_path / "c.jsonl"
    _write_lines(
        path,
        [
            json.dumps({"id": "a", "technical_summary": "t"}),
            json.dumps({"document": "d", "technical_summary": "t"}),
        ],
    )
    with pytest.raises(CorpusFormatError, match="line 2"):
        load_jsonl(str(path))


def test_duplicate_id_rejected(tmp_path):
    path = tmp_path / "c.jsonl"
    record = json.dumps({"id": "x1", "technical_summary": "t"})
    _write_lines(path, [record, record])
    with pytest.raises(CorpusFormatError, match="duplicate id"):
        load_jsonl(str(path))


def test_malformed_json_reports_line(tmp_path):
    path = tmp_path / "c.jsonl"
    _write_lines(path, ['{"id": "a", "technical_summary": "t"}', "{not json"])
    with pytest.raises(CorpusFormatError, match="line 2"):
        load_jsonl(str(path))


def test_both_summaries_missing_rejected(tmp_path):
    path = tmp_path / "c.jsonl"
    _write_lines(path, [json.dumps({"id": "a", "document": "d"})])
    with pytest.raises(CorpusFormatError, match="neither summary"):
        load_jsonl(str(path))


def test_pair_record_with_empty_document():
    t = Triplet(id="cdsr-1", technical_summary="An abstract.", plain_summary="A PLS.")
    assert t.document == ""


def test_round_trip(tmp_path):
    corpus = Corpus(
        (
            Triplet(id="a", document="Doc one.", technical_summary="T1", plain_summary="P1"),
            Triplet(id="b", document="", technical_summary="T2", plain_summary=None),
            Triplet(id="c", document="Doc três é ünïcode.", technical_summary=None, plain_summary="P3"),
        )
    )
    path = tmp_path / "out.jsonl"
    write_jsonl(corpus, str(path))
    assert load_jsonl(str(path)) == corpus


def _corpus_of(n):
    return Corpus(
        tuple(
            Triplet(id=f"d{i}", document=f"word " * (i + 1), technical_summary="t", plain_summary="p")
            for i in range(n)
        )
    )


def test_split_sizes_and_disjointness():
    corpus = _corpus_of(10)
    parts = split_corpus(corpus, SplitSpec(seed=7, n_validation=2, n_test=2))
    assert (len(parts.train), len(parts.validation), len(parts.test)) == (6, 2, 2)
    ids = [t.id for part in parts for t in part]
    assert sorted(ids) == sorted(t.id for t in corpus)
    assert len(set(ids)) == len(ids)


def test_split_deterministic_per_seed():
    corpus = _corpus_of(10)
    spec = SplitSpec(seed=42, n_validation=3, n_test=3)
    a = split_corpus(corpus, spec)
    b = split_corpus(corpus, spec)
    assert a == b


def test_split_too_large_rejected():
    with pytest.raises(ValueError):
        split_corpus(_corpus_of(10), SplitSpec(seed=1, n_validation=6, n_test=6))


@given(st.integers(min_value=0, max_value=10000))
@settings(max_examples=30)
def test_split_partition_property(seed):
    corpus = _corpus_of(17)
    parts = split_corpus(corpus, SplitSpec(seed=seed, n_validation=5, n_test=4))
    ids = sorted(t.id for part in parts for t in part)
    assert ids == sorted(t.id for t in corpus)


def test_word_count_uses_tokenizer():
    assert word_count("WNV is transmitted.") == 3
    assert word_count("Cohort of 1300 people.") == 4


def test_stats_average():
    corpus = Corpus(
        (
            Triplet(id="a", document="w " * 100, technical_summary="t", plain_summary=None),
            Triplet(id="b", document="w " * 200, technical_summary="t t", plain_summary="p"),
        )
    )
    stats = corpus_stats(corpus)
    assert stats.doc_count == 2
    assert stats.avg_doc_words == pytest.approx(150.0)
    assert stats.avg_tech_words == pytest.approx(1.5)
    assert stats.avg_pls_words == pytest.approx(1.0)  # only one PLS present


def test_stats_permutation_invariant():
    triplets = tuple(
        Triplet(id=f"x{i}", document="w " * (10 * i + 1), technical_summary="a b c"[: i + 1])
        for i in range(5)
    )
    forward = corpus_stats(Corpus(triplets))
    backward = corpus_stats(Corpus(tuple(reversed(triplets))))
    assert forward == backward


def test_stats_empty_corpus_rejected():
    with pytest.raises(ValueError):
        corpus_stats(Corpus(()))


def test_outputs_loader(tmp_path):
    path = tmp_path / "o.jsonl"
    _write_lines(
        path,
        [
            json.dumps({"id": "a", "readability": "tech", "summary": "s1"}),
            json.dumps({"id": "a", "readability": "plain", "summary": "s2"}),
        ],
    )
    outputs = load_outputs_jsonl(str(path))
    assert outputs == [
        SystemOutput(id="a", readability="tech", summary="s1"),
        SystemOutput(id="a", readability="plain", summary="s2"),
    ]


def test_outputs_bad_readability_rejected(tmp_path):
    path = tmp_path / "o.jsonl"
    _write_lines(path, [json.dumps({"id": "a", "readability": "expert", "summary": "s"})])
    with pytest.raises(CorpusFormatError, match="line 1"):
        load_outputs_jsonl(str(path))
