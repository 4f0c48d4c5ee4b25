"""Corpus data model and JSONL ingestion.

A corpus is a sequence of triplets: a source document plus its technical
and/or plain-language target summaries. Pair-style corpora (abstract +
plain summary, no full text) use the same schema with an empty document.

JSONL schema, one UTF-8 object per line::

    {"id": str, "document": str, "technical_summary": str|null,
     "plain_summary": str|null}
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .textseg import tokenize

__all__ = [
    "Triplet",
    "Corpus",
    "CorpusStats",
    "SplitSpec",
    "CorpusSplit",
    "SystemOutput",
    "CorpusFormatError",
    "load_jsonl",
    "write_jsonl",
    "load_outputs_jsonl",
    "split_corpus",
    "corpus_stats",
]

READABILITY_LEVELS = ("tech", "plain")


class CorpusFormatError(ValueError):
    """Malformed corpus file or record."""


@dataclass(frozen=True)
class Triplet:
    id: str
    document: str = ""
    technical_summary: str | None = None
    plain_summary: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusFormatError("triplet id must be non-empty")
        if self.technical_summary is None and self.plain_summary is None:
            raise CorpusFormatError(f"triplet {self.id!r} has no summary")

    def summary(self, readability: str) -> str | None:
        if readability == "tech":
            return self.technical_summary
        if readability == "plain":
            return self.plain_summary
        raise ValueError(f"unknown readability level {readability!r}")


@dataclass(frozen=True)
class Corpus:
    triplets: tuple[Triplet, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for t in self.triplets:
            if t.id in seen:
                raise CorpusFormatError(f"duplicate id {t.id!r}")
            seen.add(t.id)

    def __len__(self) -> int:
        return len(self.triplets)

    def __iter__(self) -> Iterator[Triplet]:
        return iter(self.triplets)

    def by_id(self, triplet_id: str) -> Triplet:
        for t in self.triplets:
            if t.id == triplet_id:
                return t
        raise KeyError(triplet_id)


@dataclass(frozen=True)
class CorpusStats:
    doc_count: int
    avg_doc_words: float
    avg_tech_words: float
    avg_pls_words: float


@dataclass(frozen=True)
class SplitSpec:
    seed: int
    n_validation: int
    n_test: int

    def __post_init__(self) -> None:
        if self.n_validation < 0 or self.n_test < 0:
            raise ValueError("split sizes must be non-negative")


class CorpusSplit(NamedTuple):
    train: Corpus
    validation: Corpus
    test: Corpus


def _parse_record(obj: object, lineno: int) -> Triplet:
    if not isinstance(obj, dict):
        raise CorpusFormatError(f"line {lineno}: record is not an object")
    raw_id = obj.get("id")
    if not isinstance(raw_id, str) or not raw_id:
        raise CorpusFormatError(f"line {lineno}: missing or empty 'id'")
    document = obj.get("document", "")
    if document is None:
        document = ""
    if not isinstance(document, str):
        raise CorpusFormatError(f"line {lineno}: 'document' must be a string")
    summaries = {}
    for key in ("technical_summary", "plain_summary"):
        value = obj.get(key)
        if value is not None and not isinstance(value, str):
            raise CorpusFormatError(f"line {lineno}: {key!r} must be a string or null")
        summaries[key] = value
    if summaries["technical_summary"] is None and summaries["plain_summary"] is None:
        raise CorpusFormatError(f"line {lineno}: record has neither summary")
    return Triplet(id=raw_id, document=document, **summaries)


def load_jsonl(path: str) -> Corpus:
    """Parse a corpus file, reporting the line number of the first problem."""
    triplets: list[Triplet] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {lineno}: malformed JSON: {exc}") from exc
            triplet = _parse_record(obj, lineno)
            if triplet.id in seen:
                raise CorpusFormatError(f"line {lineno}: duplicate id {triplet.id!r}")
            seen.add(triplet.id)
            triplets.append(triplet)
    return Corpus(tuple(triplets))


def write_jsonl(corpus: Corpus, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in corpus:
            fh.write(
                json.dumps(
                    {
                        "id": t.id,
                        "document": t.document,
                        "technical_summary": t.technical_summary,
                        "plain_summary": t.plain_summary,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


@dataclass(frozen=True)
class SystemOutput:
    """One generated summary: {"id": str, "readability": "tech"|"plain",
    "summary": str} in the system-output JSONL."""

    id: str
    readability: str
    summary: str

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusFormatError("output id must be non-empty")
        if self.readability not in READABILITY_LEVELS:
            raise CorpusFormatError(
                f"readability must be one of {READABILITY_LEVELS}, got {self.readability!r}"
            )


def load_outputs_jsonl(path: str) -> list[SystemOutput]:
    outputs: list[SystemOutput] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {lineno}: malformed JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError(f"line {lineno}: record is not an object")
            try:
                outputs.append(
                    SystemOutput(
                        id=str(obj["id"]),
                        readability=str(obj["readability"]),
                        summary=str(obj["summary"]),
                    )
                )
            except KeyError as exc:
                raise CorpusFormatError(f"line {lineno}: missing key {exc}") from exc
            except CorpusFormatError as exc:
                raise CorpusFormatError(f"line {lineno}: {exc}") from exc
    return outputs


def split_corpus(corpus: Corpus, spec: SplitSpec) -> CorpusSplit:
    """Seeded sampling without replacement: validation first, then test from
    the remainder; the rest is train. Each split keeps corpus order.
    """
    n = len(corpus)
    if spec.n_validation + spec.n_test > n:
        raise ValueError(f"split sizes {spec.n_validation}+{spec.n_test} exceed corpus size {n}")
    rng = random.Random(spec.seed)
    validation_idx = set(rng.sample(range(n), spec.n_validation))
    remainder = [i for i in range(n) if i not in validation_idx]
    test_idx = set(rng.sample(remainder, spec.n_test))

    def pick(indices: set[int]) -> Corpus:
        return Corpus(tuple(corpus.triplets[i] for i in range(n) if i in indices))

    train_idx = set(range(n)) - validation_idx - test_idx
    return CorpusSplit(train=pick(train_idx), validation=pick(validation_idx), test=pick(test_idx))


def word_count(text: str) -> int:
    """Word and number tokens in a text, per the library tokenizer."""
    return sum(1 for tok in tokenize(text).tokens if tok.kind != "punct")


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Average word counts per field, computed over present fields only.

    A field with no present values (e.g. documents in a pair corpus)
    averages to 0.0.
    """
    if len(corpus) == 0:
        raise ValueError("empty corpus")
    doc_counts = [word_count(t.document) for t in corpus if t.document]
    tech_counts = [word_count(t.technical_summary) for t in corpus if t.technical_summary is not None]
    pls_counts = [word_count(t.plain_summary) for t in corpus if t.plain_summary is not None]

    def mean(counts: list[int]) -> float:
        return sum(counts) / len(counts) if counts else 0.0

    return CorpusStats(
        doc_count=len(corpus),
        avg_doc_words=mean(doc_counts),
        avg_tech_words=mean(tech_counts),
        avg_pls_words=mean(pls_counts),
    )
