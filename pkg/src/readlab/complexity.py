"""Masked language model text-complexity metrics.

Three scores over a pluggable masked-LM probability backend:

* ``mrttc`` masks a fixed ratio of word tokens per sentence (seeded) and
  takes the negative log of the mean masked-subtoken probability.
* ``nptc`` masks each noun phrase in turn, averages subtoken probabilities
  into one probability per phrase, and takes the negative log of the mean
  phrase probability.
* ``rnptc`` sorts the phrase probabilities descending, weights the i-th by
  1/sqrt(i), divides the weighted sum by the phrase count, and takes the
  negative log. The weighting emphasises the least predictable phrases;
  note the divisor is the phrase count, not the weight sum, so rnptc is
  always >= nptc.

All logs are natural. Zero scoreable material is an error, never a zero
score, so corpus means stay honest.
"""

from __future__ import annotations

import json
import math
import random
import statistics
from dataclasses import dataclass, field
from typing import Mapping, Protocol, Sequence

import requests

from .stopwords import DEFAULT_STOPWORDS
from .textseg import HeuristicTagger, NpSpan, Tagger, filter_stopword_nps, extract_noun_phrases, tokenize

__all__ = [
    "MaskProbe",
    "ProbeResult",
    "MaskBackend",
    "NpProbability",
    "ComplexityError",
    "BackendError",
    "StubBackend",
    "HttpBackend",
    "load_stub_backend",
    "mrttc",
    "nptc",
    "rnptc",
    "np_probabilities",
    "nptc_from_probabilities",
    "rnptc_from_probabilities",
]


class ComplexityError(ValueError):
    """Input has nothing scoreable (no word tokens / no noun phrases)."""


class BackendError(RuntimeError):
    """Backend transport or protocol failure; aborts the run."""


@dataclass(frozen=True)
class MaskProbe:
    """A scoring request: text plus sorted, non-overlapping char spans to mask."""

    text: str
    mask_spans: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev_end = 0
        for start, end in self.mask_spans:
            if not (0 <= start < end <= len(self.text)):
                raise ValueError(f"mask span ({start}, {end}) out of bounds")
            if start < prev_end:
                raise ValueError("mask spans must be sorted and non-overlapping")
            prev_end = end


@dataclass(frozen=True)
class ProbeResult:
    """Per-span probabilities of the original subtokens at masked positions."""

    span_probs: tuple[tuple[float, ...], ...]
    truncated: bool = False
    model: str | None = None

    def __post_init__(self) -> None:
        for probs in self.span_probs:
            if not probs:
                raise ValueError("every masked span must yield at least one probability")
            for p in probs:
                if not (0.0 < p <= 1.0):
                    raise ValueError(f"probability {p} outside (0, 1]")


class MaskBackend(Protocol):
    def score(self, probe: MaskProbe) -> ProbeResult:
        ...


@dataclass(frozen=True)
class NpProbability:
    np: NpSpan
    prob: float
    rank: int  # 1 = highest probability


def _checked_score(backend: MaskBackend, probe: MaskProbe) -> ProbeResult:
    result = backend.score(probe)
    if len(result.span_probs) != len(probe.mask_spans):
        raise BackendError(
            f"backend returned {len(result.span_probs)} span results for "
            f"{len(probe.mask_spans)} requested spans"
        )
    return result


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def mrttc(
    text: str,
    backend: MaskBackend,
    mask_ratio: float = 0.15,
    seed: int = 0,
) -> float:
    """Masked random-token complexity: per sentence, mask
    ``max(1, round(mask_ratio * word_count))`` word tokens chosen uniformly
    by a generator seeded locally with ``seed``, one probe per sentence,
    then ``-ln`` of the mean probability over all masked subtokens.
    """
    if not 0.0 < mask_ratio < 1.0:
        raise ValueError("mask_ratio must be in (0, 1)")
    tt = tokenize(text)
    rng = random.Random(seed)
    all_probs: list[float] = []
    for start, end in tt.sentences:
        word_indices = [i for i in range(start, end) if tt.tokens[i].kind == "word"]
        if not word_indices:
            continue
        k = min(len(word_indices), max(1, _round_half_up(mask_ratio * len(word_indices))))
        chosen = sorted(rng.sample(word_indices, k))
        spans = tuple((tt.tokens[i].char_start, tt.tokens[i].char_end) for i in chosen)
        result = _checked_score(backend, MaskProbe(tt.source, spans))
        for probs in result.span_probs:
            all_probs.extend(probs)
    if not all_probs:
        raise ComplexityError("no scoreable tokens")
    return -math.log(statistics.fmean(all_probs))


def np_probabilities(
    text: str,
    backend: MaskBackend,
    tagger: Tagger | None = None,
    stopwords: frozenset[str] | set[str] | None = None,
) -> list[NpProbability]:
    """Probability of each noun phrase when masked inside the full text.

    One probe per phrase, masking exactly that phrase's char span; a
    phrase's probability is the mean over its masked subtokens. Ranks are
    1-based in descending probability order (ties stay in text order).
    """
    tt = tokenize(text)
    chunk_tagger = tagger if tagger is not None else HeuristicTagger()
    sw = DEFAULT_STOPWORDS if stopwords is None else stopwords
    nps = filter_stopword_nps(extract_noun_phrases(tt, chunk_tagger), tt, sw)
    if not nps:
        raise ComplexityError("no scoreable noun phrases")
    probs: list[float] = []
    for np_span in nps:
        result = _checked_score(
            backend, MaskProbe(tt.source, ((np_span.char_start, np_span.char_end),))
        )
        probs.append(statistics.fmean(result.span_probs[0]))
    order = sorted(range(len(nps)), key=lambda i: (-probs[i], i))
    ranks = [0] * len(nps)
    for rank, i in enumerate(order, start=1):
        ranks[i] = rank
    return [NpProbability(np=nps[i], prob=probs[i], rank=ranks[i]) for i in range(len(nps))]


def nptc_from_probabilities(probabilities: Sequence[float]) -> float:
    """-ln of the mean noun-phrase probability."""
    if not probabilities:
        raise ComplexityError("no scoreable noun phrases")
    return -math.log(statistics.fmean(probabilities))


def rnptc_from_probabilities(probabilities: Sequence[float]) -> float:
    """-ln of (sum of descending-sorted probabilities weighted by 1/sqrt(rank),
    divided by the phrase count)."""
    if not probabilities:
        raise ComplexityError("no scoreable noun phrases")
    ordered = sorted(probabilities, reverse=True)
    weighted = sum(p / math.sqrt(i) for i, p in enumerate(ordered, start=1))
    return -math.log(weighted / len(ordered))


def nptc(
    text: str,
    backend: MaskBackend,
    tagger: Tagger | None = None,
    stopwords: frozenset[str] | set[str] | None = None,
) -> float:
    return nptc_from_probabilities(
        [np.prob for np in np_probabilities(text, backend, tagger, stopwords)]
    )


def rnptc(
    text: str,
    backend: MaskBackend,
    tagger: Tagger | None = None,
    stopwords: frozenset[str] | set[str] | None = None,
) -> float:
    return rnptc_from_probabilities(
        [np.prob for np in np_probabilities(text, backend, tagger, stopwords)]
    )


@dataclass(frozen=True)
class StubBackend:
    """Deterministic table-driven backend for tests and dry runs.

    Masked spans are split on whitespace; each piece is one subtoken whose
    probability comes from the table (exact match first, then lowercase),
    falling back to ``default``.
    """

    table: Mapping[str, float] = field(default_factory=dict)
    default: float = 0.5

    def __post_init__(self) -> None:
        for p in [self.default, *self.table.values()]:
            if not (0.0 < p <= 1.0):
                raise ValueError(f"stub probability {p} outside (0, 1]")

    def score(self, probe: MaskProbe) -> ProbeResult:
        span_probs = []
        for start, end in probe.mask_spans:
            pieces = probe.text[start:end].split() or [probe.text[start:end]]
            span_probs.append(tuple(self._lookup(piece) for piece in pieces))
        return ProbeResult(span_probs=tuple(span_probs), model="stub")

    def _lookup(self, piece: str) -> float:
        if piece in self.table:
            return self.table[piece]
        return self.table.get(piece.lower(), self.default)


def load_stub_backend(path: str) -> StubBackend:
    """Stub backend from a JSON file: {"default": float, "table": {token: prob}}."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or not isinstance(obj.get("table", {}), dict):
        raise ValueError(f"{path}: expected an object with a 'table' map")
    return StubBackend(table=dict(obj.get("table", {})), default=float(obj.get("default", 0.5)))


class HttpBackend:
    """MaskBackend over the scoring sidecar's HTTP protocol.

    POST {base_url}/v1/score with {"text": ..., "spans": [[start, end], ...]};
    the response carries one subtoken probability list per requested span.
    """

    def __init__(self, base_url: str, timeout: float = 120.0, session: requests.Session | None = None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._session = session or requests.Session()

    def health(self) -> dict:
        try:
            resp = self._session.get(f"{self.base_url}/v1/health", timeout=self.timeout)
        except requests.RequestException as exc:
            raise BackendError(f"backend unreachable at {self.base_url}: {exc}") from exc
        if resp.status_code != 200:
            raise BackendError(f"backend unhealthy: HTTP {resp.status_code}: {resp.text[:200]}")
        return resp.json()

    def score(self, probe: MaskProbe) -> ProbeResult:
        payload = {"text": probe.text, "spans": [[s, e] for s, e in probe.mask_spans]}
        try:
            resp = self._session.post(f"{self.base_url}/v1/score", json=payload, timeout=self.timeout)
        except requests.RequestException as exc:
            raise BackendError(f"backend request failed: {exc}") from exc
        if resp.status_code != 200:
            detail = ""
            try:
                detail = resp.json().get("error", "")
            except ValueError:
                detail = resp.text[:200]
            raise BackendError(f"backend returned HTTP {resp.status_code}: {detail}")
        try:
            body = resp.json()
            span_probs = tuple(
                tuple(float(p) for p in span["subtoken_probs"]) for span in body["spans"]
            )
            return ProbeResult(
                span_probs=span_probs,
                truncated=bool(body.get("truncated", False)),
                model=body.get("model"),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise BackendError(f"malformed backend response: {exc}") from exc
